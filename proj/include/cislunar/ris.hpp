#pragma once

// Passive reflecting surface model: per-element phase shifts, the
// cosine-squared effective-area law, and the aligned (optimal) phase
// configuration.

#include <span>
#include <vector>

namespace cislunar::ris {

/// Per-element phase settings, per-element areas, and the constant that
/// translates area into directivity gain. Phases are normalized to
/// [0, 2*pi) on construction.
class RisConfiguration {
  public:
    RisConfiguration(std::vector<double> element_phases_rad, std::vector<double> element_areas_m2,
                     double directivity_constant);

    std::span<const double> element_phases() const { return element_phases_; }
    std::span<const double> element_areas() const { return element_areas_; }
    double directivity_constant() const { return directivity_constant_; }
    std::size_t element_count() const { return element_phases_.size(); }

  private:
    std::vector<double> element_phases_;  // [rad], each in [0, 2*pi)
    std::vector<double> element_areas_;   // [m^2], each > 0
    double directivity_constant_;         // k, > 0
};

struct EffectiveArea {
    double value;  // [m^2]
};

/// Sum of k * a_i * cos^2(phi_opt - phi_i) over all elements, evaluated
/// with compensated summation so the result is independent of element
/// order to within 1 ulp.
EffectiveArea effective_area(const RisConfiguration& config, double phi_opt);

/// The closed-form maximizer: every element phase set to phi_opt
/// (normalized). Achieves effective_area = k * sum(a_i).
RisConfiguration optimal_configuration(std::span<const double> element_areas_m2,
                                       double directivity_constant, double phi_opt);

/// Shifts every element phase by delta and renormalizes; areas and the
/// directivity constant are unchanged.
RisConfiguration apply_misalignment(const RisConfiguration& config, double delta);

/// Effective area of a perfectly aligned surface: k * sum(a_i), with the
/// same compensated summation as effective_area. Equals
/// effective_area(optimal_configuration(areas, k, phi), phi) for any phi.
double aligned_effective_area(std::span<const double> element_areas_m2,
                              double directivity_constant);

/// How per-element areas are assigned when sweeping the element count.
enum class AreaMode {
    kFixedTotal,    // a_i = a_max / M; total area pinned to the budget
    kFixedElement,  // a_i = 1 m^2; total area grows with M
};

/// Element areas for the given mode. In fixed-total mode the sum equals
/// a_max; in fixed-element mode a_max is ignored.
std::vector<double> element_areas_for_mode(AreaMode mode, std::size_t element_count,
                                           double a_max_m2);

}  // namespace cislunar::ris
