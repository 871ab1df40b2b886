#include "cislunar/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "cislunar/units.hpp"

namespace cislunar::sweeps {

namespace {

linkbudget::SnrResult snr_at(const linkselect::Scenario& scenario, double a_eff, double d_er,
                             double d_rm) {
    return linkbudget::snr(scenario.budget, {a_eff}, d_er, d_rm);
}

}  // namespace

geometry::LinkGeometry reference_geometry(const linkselect::Scenario& scenario, double t) {
    const auto samples = linkselect::availability_matrix(scenario, t);
    const auto chosen = linkselect::select_shortest(samples);
    if (!chosen) {
        std::ostringstream msg;
        msg << "no visible link at reference epoch t = " << t << " s";
        throw std::runtime_error(msg.str());
    }
    const Vec3 geo_pos =
        orbital::propagate(scenario.geo_elements[chosen->geo_id], scenario.earth_body, t).position;
    const Vec3 llo_pos = orbital::llo_state_eci(scenario.llo_elements[chosen->llo_id],
                                                scenario.moon_model, scenario.moon_body, t)
                             .position;
    return geometry::make_link_geometry(scenario.ground_station, geo_pos, llo_pos);
}

std::vector<ElementSweepRow> snr_vs_elements(const linkselect::Scenario& scenario,
                                             std::vector<std::size_t> element_counts,
                                             const std::vector<double>& epochs) {
    if (element_counts.empty()) {
        throw std::invalid_argument("element-count list is empty");
    }
    if (epochs.empty()) {
        throw std::invalid_argument("epoch list is empty");
    }
    for (std::size_t m : element_counts) {
        if (m == 0) {
            throw std::invalid_argument("element counts must be >= 1");
        }
    }
    std::sort(element_counts.begin(), element_counts.end());
    element_counts.erase(std::unique(element_counts.begin(), element_counts.end()),
                         element_counts.end());

    std::vector<ElementSweepRow> rows;
    rows.reserve(element_counts.size() * epochs.size());
    for (std::size_t c = 0; c < epochs.size(); ++c) {
        const geometry::LinkGeometry geom = reference_geometry(scenario, epochs[c]);
        for (std::size_t m : element_counts) {
            const auto areas =
                ris::element_areas_for_mode(scenario.ris.area_mode, m, scenario.ris.a_max);
            const double a_eff =
                ris::aligned_effective_area(areas, scenario.ris.directivity_constant);
            ElementSweepRow row;
            row.case_id = static_cast<int>(c);
            row.t = epochs[c];
            row.d_er = geom.d_er;
            row.d_rm = geom.d_rm;
            row.element_count = m;
            row.a_eff = a_eff;
            row.snr_db = snr_at(scenario, a_eff, geom.d_er, geom.d_rm).snr_db;
            rows.push_back(row);
        }
    }
    return rows;
}

std::vector<MisalignmentRow> misalignment_sweep(const linkselect::Scenario& scenario,
                                                const std::vector<double>& delta_grid_rad,
                                                double epoch) {
    if (delta_grid_rad.empty()) {
        throw std::invalid_argument("misalignment grid is empty");
    }
    constexpr double kGridSlack = 1e-12;
    for (double d : delta_grid_rad) {
        if (!(std::abs(d) <= std::numbers::pi + kGridSlack)) {
            std::ostringstream msg;
            msg << "misalignment offset outside [-pi, pi]: " << d << " rad";
            throw std::invalid_argument(msg.str());
        }
    }
    const geometry::LinkGeometry geom = reference_geometry(scenario, epoch);
    const auto areas = ris::element_areas_for_mode(scenario.ris.area_mode,
                                                   scenario.ris.element_count, scenario.ris.a_max);
    const ris::RisConfiguration aligned =
        ris::optimal_configuration(areas, scenario.ris.directivity_constant, geom.phi_opt);

    std::vector<MisalignmentRow> rows;
    rows.reserve(delta_grid_rad.size());
    for (double delta : delta_grid_rad) {
        const ris::RisConfiguration shifted = ris::apply_misalignment(aligned, delta);
        const ris::EffectiveArea a_eff = ris::effective_area(shifted, geom.phi_opt);
        MisalignmentRow row;
        row.delta = delta;
        row.a_eff = a_eff.value;
        row.snr_db = snr_at(scenario, a_eff.value, geom.d_er, geom.d_rm).snr_db;
        rows.push_back(row);
    }
    return rows;
}

std::string format_csv_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

std::string timeseries_csv(const std::vector<linkselect::TimeStepRecord>& records) {
    std::string out =
        "t_s,geo_id,llo_id,visible_count,d_er_km,d_rm_km,phi_opt_deg,a_eff_m2,p_r_w,snr_db,"
        "feasible,outage\n";
    for (const auto& rec : records) {
        out += format_csv_number(rec.time);
        out += ',';
        if (rec.link) {
            const auto& link = *rec.link;
            out += std::to_string(link.sample.geo_id);
            out += ',';
            out += std::to_string(link.sample.llo_id);
            out += ',';
            out += std::to_string(rec.visible_count);
            out += ',';
            out += format_csv_number(link.d_er);
            out += ',';
            out += format_csv_number(link.d_rm);
            out += ',';
            out += format_csv_number(rad_to_deg(link.phi_opt));
            out += ',';
            out += format_csv_number(link.a_eff);
            out += ',';
            out += format_csv_number(link.snr.received_power);
            out += ',';
            out += format_csv_number(link.snr.snr_db);
            out += ',';
            out += link.snr.feasible ? '1' : '0';
            out += ",0\n";
        } else {
            out += "-1,-1,";
            out += std::to_string(rec.visible_count);
            out += ",0,0,0,0,0,";
            out += format_csv_number(linkbudget::kSnrDbFloor);
            out += ",0,1\n";
        }
    }
    return out;
}

std::string element_sweep_csv(const std::vector<ElementSweepRow>& rows) {
    std::string out = "case_id,t_s,d_er_km,d_rm_km,m_elements,a_eff_m2,snr_db\n";
    for (const auto& row : rows) {
        out += std::to_string(row.case_id);
        out += ',';
        out += format_csv_number(row.t);
        out += ',';
        out += format_csv_number(row.d_er);
        out += ',';
        out += format_csv_number(row.d_rm);
        out += ',';
        out += std::to_string(row.element_count);
        out += ',';
        out += format_csv_number(row.a_eff);
        out += ',';
        out += format_csv_number(row.snr_db);
        out += '\n';
    }
    return out;
}

std::string misalignment_csv(const std::vector<MisalignmentRow>& rows) {
    std::string out = "delta_phi_deg,a_eff_m2,snr_db\n";
    for (const auto& row : rows) {
        out += format_csv_number(rad_to_deg(row.delta));
        out += ',';
        out += format_csv_number(row.a_eff);
        out += ',';
        out += format_csv_number(row.snr_db);
        out += '\n';
    }
    return out;
}

}  // namespace cislunar::sweeps
