#pragma once

// Per-time-step GEO<->LLO availability and shortest-link selection over
// the simulation horizon, with the relayed link budget evaluated on the
// selected pair.

#include <optional>
#include <vector>

#include "cislunar/linkbudget.hpp"
#include "cislunar/orbital.hpp"
#include "cislunar/ris.hpp"

namespace cislunar::linkselect {

/// One candidate GEO-LLO link at a single time step.
struct LinkSample {
    double time;      // [s]
    int geo_id;       // index into Scenario::geo_elements
    int llo_id;       // index into Scenario::llo_elements
    double distance;  // [km]
    bool visible;
    bool selected;
};

/// RIS sizing used when evaluating the budget on the selected link.
struct RisParams {
    std::size_t element_count;
    ris::AreaMode area_mode;
    double directivity_constant;  // k
    double a_max;                 // [m^2], total-area budget in fixed-total mode
};

/// Everything a run needs: constellations, ephemeris, station, horizon,
/// budget, and RIS sizing.
struct Scenario {
    std::vector<orbital::OrbitalElements> geo_elements;
    std::vector<orbital::OrbitalElements> llo_elements;
    orbital::LunarEphemerisModel moon_model;
    orbital::CentralBody earth_body;
    orbital::CentralBody moon_body;
    Vec3 ground_station;       // [km]
    double duration;           // [s]
    double sampling_interval;  // [s]
    linkbudget::LinkBudgetParams budget;
    RisParams ris;
};

/// Validates the cross-field invariants (counts, horizon, step cap).
/// Throws std::invalid_argument naming the offending field.
void validate_scenario(const Scenario& scenario);

/// Number of records run_timeseries produces: endpoints inclusive.
std::size_t step_count(const Scenario& scenario);

/// Distances and Moon-occlusion visibility for every GEO x LLO pair at
/// time t, in (geo_id, llo_id) lexicographic order, none selected yet.
std::vector<LinkSample> availability_matrix(const Scenario& scenario, double t);

/// The visible sample of minimum distance, flagged selected; ties break
/// toward the smallest (geo_id, llo_id). Empty when nothing is visible.
std::optional<LinkSample> select_shortest(const std::vector<LinkSample>& samples);

/// Budget evaluation attached to a selected link.
struct SelectedLink {
    LinkSample sample;
    double d_er;     // ground station -> selected GEO [km]
    double d_rm;     // selected GEO -> selected LLO [km]
    double phi_opt;  // [rad]
    double a_eff;    // [m^2], at the aligned RIS configuration
    linkbudget::SnrResult snr;
};

/// One record per time step; link is empty on outage steps.
struct TimeStepRecord {
    double time;  // [s]
    int visible_count;
    std::optional<SelectedLink> link;
};

/// Propagates the scenario over [0, duration] at the sampling interval,
/// selecting the shortest visible link per step and evaluating the
/// budget on it. Steps are independent; with thread_count > 1 they are
/// evaluated in parallel and assembled in time order, bit-identical to
/// the sequential result.
std::vector<TimeStepRecord> run_timeseries(const Scenario& scenario, unsigned thread_count = 1);

/// The budget evaluation run_timeseries performs on one selected pair;
/// exposed so sweeps hit the identical path.
SelectedLink evaluate_selected_link(const Scenario& scenario, const LinkSample& sample,
                                    const Vec3& geo_position, const Vec3& llo_position);

}  // namespace cislunar::linkselect
