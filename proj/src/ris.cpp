#include "cislunar/ris.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cislunar/units.hpp"

namespace cislunar::ris {

namespace {

// Neumaier compensated summation; order-insensitive to within 1 ulp.
class CompensatedSum {
  public:
    void add(double term) {
        const double t = sum_ + term;
        if (std::abs(sum_) >= std::abs(term)) {
            compensation_ += (sum_ - t) + term;
        } else {
            compensation_ += (term - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + compensation_; }

  private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

void check_areas(std::span<const double> areas) {
    if (areas.empty()) {
        throw std::invalid_argument("RIS needs at least one element");
    }
    for (double a : areas) {
        if (!(a > 0.0) || !std::isfinite(a)) {
            std::ostringstream msg;
            msg << "invalid RIS element area: " << a;
            throw std::invalid_argument(msg.str());
        }
    }
}

}  // namespace

RisConfiguration::RisConfiguration(std::vector<double> element_phases_rad,
                                   std::vector<double> element_areas_m2,
                                   double directivity_constant)
    : element_phases_(std::move(element_phases_rad)),
      element_areas_(std::move(element_areas_m2)),
      directivity_constant_(directivity_constant) {
    if (element_phases_.size() != element_areas_.size()) {
        throw std::invalid_argument("RIS phase and area lists differ in length");
    }
    check_areas(element_areas_);
    if (!(directivity_constant_ > 0.0) || !std::isfinite(directivity_constant_)) {
        std::ostringstream msg;
        msg << "invalid RIS directivity constant: " << directivity_constant_;
        throw std::invalid_argument(msg.str());
    }
    for (double& phase : element_phases_) {
        phase = wrap_two_pi(phase);
    }
}

EffectiveArea effective_area(const RisConfiguration& config, double phi_opt) {
    CompensatedSum sum;
    const double k = config.directivity_constant();
    const auto phases = config.element_phases();
    const auto areas = config.element_areas();
    for (std::size_t i = 0; i < phases.size(); ++i) {
        const double c = std::cos(phi_opt - phases[i]);
        sum.add(k * areas[i] * (c * c));
    }
    return {sum.value()};
}

RisConfiguration optimal_configuration(std::span<const double> element_areas_m2,
                                       double directivity_constant, double phi_opt) {
    check_areas(element_areas_m2);
    std::vector<double> phases(element_areas_m2.size(), wrap_two_pi(phi_opt));
    return RisConfiguration(std::move(phases),
                            {element_areas_m2.begin(), element_areas_m2.end()},
                            directivity_constant);
}

RisConfiguration apply_misalignment(const RisConfiguration& config, double delta) {
    std::vector<double> phases(config.element_phases().begin(), config.element_phases().end());
    for (double& phase : phases) {
        phase = wrap_two_pi(phase + delta);
    }
    return RisConfiguration(std::move(phases),
                            {config.element_areas().begin(), config.element_areas().end()},
                            config.directivity_constant());
}

double aligned_effective_area(std::span<const double> element_areas_m2,
                              double directivity_constant) {
    check_areas(element_areas_m2);
    CompensatedSum sum;
    for (double a : element_areas_m2) {
        sum.add(directivity_constant * a);
    }
    return sum.value();
}

std::vector<double> element_areas_for_mode(AreaMode mode, std::size_t element_count,
                                           double a_max_m2) {
    if (element_count == 0) {
        throw std::invalid_argument("RIS needs at least one element");
    }
    if (mode == AreaMode::kFixedTotal && !(a_max_m2 > 0.0)) {
        std::ostringstream msg;
        msg << "invalid RIS area budget: " << a_max_m2;
        throw std::invalid_argument(msg.str());
    }
    const double per_element =
        mode == AreaMode::kFixedTotal ? a_max_m2 / static_cast<double>(element_count) : 1.0;
    return std::vector<double>(element_count, per_element);
}

}  // namespace cislunar::ris
