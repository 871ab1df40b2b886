#pragma once

// Figure-style sweep evaluations and their CSV serializations. All CSV
// output is deterministic: fixed column order, '.' decimal separator,
// 12 significant digits.

#include <string>
#include <vector>

#include "cislunar/geometry.hpp"
#include "cislunar/linkselect.hpp"

namespace cislunar::sweeps {

/// SNR at the aligned configuration for one element count, anchored to
/// the selected-link geometry at a reference epoch ("case").
struct ElementSweepRow {
    int case_id;
    double t;  // [s]
    double d_er;
    double d_rm;
    std::size_t element_count;
    double a_eff;  // [m^2]
    double snr_db;
};

/// SNR versus phase misalignment at fixed geometry.
struct MisalignmentRow {
    double delta;  // [rad]
    double a_eff;  // [m^2]
    double snr_db;
};

/// Selected-link geometry at epoch t; throws std::runtime_error when no
/// link is visible there.
geometry::LinkGeometry reference_geometry(const linkselect::Scenario& scenario, double t);

/// One case per epoch, one row per element count, rows sorted by
/// (case, element count). Element areas follow the scenario's area mode.
std::vector<ElementSweepRow> snr_vs_elements(const linkselect::Scenario& scenario,
                                             std::vector<std::size_t> element_counts,
                                             const std::vector<double>& epochs);

/// Sweeps the phase offset applied to the aligned configuration over the
/// given grid; every offset must lie within [-pi, pi].
std::vector<MisalignmentRow> misalignment_sweep(const linkselect::Scenario& scenario,
                                                const std::vector<double>& delta_grid_rad,
                                                double epoch);

std::string timeseries_csv(const std::vector<linkselect::TimeStepRecord>& records);
std::string element_sweep_csv(const std::vector<ElementSweepRow>& rows);
std::string misalignment_csv(const std::vector<MisalignmentRow>& rows);

/// %.12g with '.' decimal separator regardless of locale.
std::string format_csv_number(double value);

}  // namespace cislunar::sweeps
