#pragma once

// Free-space path loss, relayed received power, and SNR. Internally SI
// (watts, meters); distances cross the module boundary in km and are
// converted once.

#include "cislunar/ris.hpp"

namespace cislunar::linkbudget {

/// Transmit-side, receive-side, and channel constants for one link.
class LinkBudgetParams {
  public:
    LinkBudgetParams(double transmit_power_w, double max_transmit_power_w, double gain_tx_linear,
                     double gain_rx_linear, double wavelength_m, double noise_power_w,
                     double ris_insertion_loss, double snr_threshold_linear);

    double transmit_power() const { return transmit_power_; }          // P_t [W]
    double max_transmit_power() const { return max_transmit_power_; }  // [W]
    double gain_tx() const { return gain_tx_; }                        // linear
    double gain_rx() const { return gain_rx_; }                        // linear
    double wavelength() const { return wavelength_; }                  // [m]
    double noise_power() const { return noise_power_; }                // [W]
    double ris_insertion_loss() const { return ris_insertion_loss_; }  // linear, (0, 1]
    double snr_threshold() const { return snr_threshold_; }            // linear

  private:
    double transmit_power_;
    double max_transmit_power_;
    double gain_tx_;
    double gain_rx_;
    double wavelength_;
    double noise_power_;
    double ris_insertion_loss_;
    double snr_threshold_;
};

/// SNR in both domains plus the received power behind it. snr_db is
/// floored at -300 dB so zero-signal cases stay finite.
struct SnrResult {
    double snr_linear;
    double snr_db;
    double received_power;  // [W]
    bool feasible;          // snr_linear >= threshold
};

inline constexpr double kSnrDbFloor = -300.0;
inline constexpr double kSnrLinearFloor = 1e-30;  // 10^(kSnrDbFloor / 10)

/// (4*pi*d/lambda)^2, dimensionless. Distance in km, wavelength in m.
double free_space_path_loss(double distance_km, double wavelength_m);

/// Received power of the relayed link:
/// L_ris * P_t*G_t*G_r*lambda^2*A_eff / ((4*pi)^3 * d_er^2 * d_rm^2).
double received_power(const LinkBudgetParams& params, const ris::EffectiveArea& a_eff,
                      double d_er_km, double d_rm_km);

SnrResult snr(const LinkBudgetParams& params, const ris::EffectiveArea& a_eff, double d_er_km,
              double d_rm_km);

/// SNR is strictly increasing in transmit power, so the power-constrained
/// maximizer is the budget ceiling.
double optimal_transmit_power(const LinkBudgetParams& params);

// dB-domain conversions. Log-domain inputs accept any finite value;
// linear inputs must be positive.
double db_to_linear(double db);
double linear_to_db(double linear);
double dbi_to_linear(double dbi);
double linear_to_dbi(double linear);
double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

}  // namespace cislunar::linkbudget
