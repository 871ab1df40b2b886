#include "cislunar/linkbudget.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "cislunar/units.hpp"

namespace cislunar::linkbudget {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

[[noreturn]] void reject(const char* field, double value) {
    std::ostringstream msg;
    msg << "invalid link budget parameter: " << field << " = " << value;
    throw std::domain_error(msg.str());
}

void require_positive(const char* field, double value) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        reject(field, value);
    }
}

}  // namespace

LinkBudgetParams::LinkBudgetParams(double transmit_power_w, double max_transmit_power_w,
                                   double gain_tx_linear, double gain_rx_linear,
                                   double wavelength_m, double noise_power_w,
                                   double ris_insertion_loss, double snr_threshold_linear)
    : transmit_power_(transmit_power_w),
      max_transmit_power_(max_transmit_power_w),
      gain_tx_(gain_tx_linear),
      gain_rx_(gain_rx_linear),
      wavelength_(wavelength_m),
      noise_power_(noise_power_w),
      ris_insertion_loss_(ris_insertion_loss),
      snr_threshold_(snr_threshold_linear) {
    if (!(max_transmit_power_ >= 0.0) || !std::isfinite(max_transmit_power_)) {
        reject("max_transmit_power", max_transmit_power_);
    }
    if (!(transmit_power_ >= 0.0 && transmit_power_ <= max_transmit_power_)) {
        reject("transmit_power", transmit_power_);
    }
    require_positive("gain_tx", gain_tx_);
    require_positive("gain_rx", gain_rx_);
    require_positive("wavelength", wavelength_);
    require_positive("noise_power", noise_power_);
    if (!(ris_insertion_loss_ > 0.0 && ris_insertion_loss_ <= 1.0)) {
        reject("ris_insertion_loss", ris_insertion_loss_);
    }
    require_positive("snr_threshold", snr_threshold_);
}

double free_space_path_loss(double distance_km, double wavelength_m) {
    if (!(distance_km > 0.0)) {
        reject("distance", distance_km);
    }
    require_positive("wavelength", wavelength_m);
    const double ratio = kFourPi * (distance_km * kMetersPerKm) / wavelength_m;
    return ratio * ratio;
}

double received_power(const LinkBudgetParams& params, const ris::EffectiveArea& a_eff,
                      double d_er_km, double d_rm_km) {
    if (!(d_er_km > 0.0)) {
        reject("d_er", d_er_km);
    }
    if (!(d_rm_km > 0.0)) {
        reject("d_rm", d_rm_km);
    }
    if (!(a_eff.value >= 0.0)) {
        reject("effective_area", a_eff.value);
    }
    const double d_er_m = d_er_km * kMetersPerKm;
    const double d_rm_m = d_rm_km * kMetersPerKm;
    const double numerator = params.transmit_power() * params.gain_tx() * params.gain_rx() *
                             params.wavelength() * params.wavelength() * a_eff.value;
    // Squared distances multiplied together first so the expression is
    // bit-exactly symmetric in the two legs.
    const double range_product = (d_er_m * d_er_m) * (d_rm_m * d_rm_m);
    const double denominator = (kFourPi * kFourPi * kFourPi) * range_product;
    return params.ris_insertion_loss() * numerator / denominator;
}

SnrResult snr(const LinkBudgetParams& params, const ris::EffectiveArea& a_eff, double d_er_km,
              double d_rm_km) {
    SnrResult result;
    result.received_power = received_power(params, a_eff, d_er_km, d_rm_km);
    result.snr_linear = result.received_power / params.noise_power();
    result.snr_db =
        result.snr_linear > kSnrLinearFloor ? linear_to_db(result.snr_linear) : kSnrDbFloor;
    result.feasible = result.snr_linear >= params.snr_threshold();
    return result;
}

double optimal_transmit_power(const LinkBudgetParams& params) {
    return params.max_transmit_power();
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) {
    if (!(linear > 0.0)) {
        reject("linear value", linear);
    }
    return 10.0 * std::log10(linear);
}

double dbi_to_linear(double dbi) { return db_to_linear(dbi); }

double linear_to_dbi(double linear) { return linear_to_db(linear); }

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) {
    if (!(watts > 0.0)) {
        reject("power", watts);
    }
    return 10.0 * std::log10(watts) + 30.0;
}

}  // namespace cislunar::linkbudget
