#include "cislunar/linkselect.hpp"

#include "cislunar/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace cislunar::linkselect {

namespace {

constexpr double kMaxSteps = 1e7;

struct StepPositions {
    std::vector<Vec3> geo;
    std::vector<Vec3> llo;
    Vec3 moon;
};

StepPositions propagate_step(const Scenario& scenario, double t) {
    StepPositions out;
    out.moon = orbital::moon_position(scenario.moon_model, t);
    out.geo.reserve(scenario.geo_elements.size());
    for (const auto& el : scenario.geo_elements) {
        out.geo.push_back(orbital::propagate(el, scenario.earth_body, t).position);
    }
    out.llo.reserve(scenario.llo_elements.size());
    for (const auto& el : scenario.llo_elements) {
        out.llo.push_back(
            orbital::llo_state_eci(el, scenario.moon_model, scenario.moon_body, t).position);
    }
    return out;
}

std::vector<LinkSample> build_samples(const Scenario& scenario, const StepPositions& pos,
                                      double t) {
    std::vector<LinkSample> samples;
    samples.reserve(pos.geo.size() * pos.llo.size());
    for (std::size_t gi = 0; gi < pos.geo.size(); ++gi) {
        for (std::size_t li = 0; li < pos.llo.size(); ++li) {
            LinkSample s;
            s.time = t;
            s.geo_id = static_cast<int>(gi);
            s.llo_id = static_cast<int>(li);
            s.distance = geometry::euclidean_distance(pos.geo[gi], pos.llo[li]);
            s.visible = geometry::line_of_sight(pos.geo[gi], pos.llo[li], pos.moon,
                                                scenario.moon_body.radius);
            s.selected = false;
            samples.push_back(s);
        }
    }
    return samples;
}

TimeStepRecord evaluate_step(const Scenario& scenario, double t) {
    const StepPositions pos = propagate_step(scenario, t);
    const std::vector<LinkSample> samples = build_samples(scenario, pos, t);

    TimeStepRecord record;
    record.time = t;
    record.visible_count = 0;
    for (const auto& s : samples) {
        if (s.visible) {
            ++record.visible_count;
        }
    }
    if (auto chosen = select_shortest(samples)) {
        record.link = evaluate_selected_link(scenario, *chosen, pos.geo[chosen->geo_id],
                                             pos.llo[chosen->llo_id]);
    }
    return record;
}

}  // namespace

void validate_scenario(const Scenario& scenario) {
    if (scenario.geo_elements.empty()) {
        throw std::invalid_argument("scenario needs at least one GEO satellite");
    }
    if (scenario.llo_elements.empty()) {
        throw std::invalid_argument("scenario needs at least one LLO satellite");
    }
    if (!(scenario.duration >= 0.0) || !std::isfinite(scenario.duration)) {
        std::ostringstream msg;
        msg << "invalid scenario duration: " << scenario.duration;
        throw std::invalid_argument(msg.str());
    }
    if (!(scenario.sampling_interval > 0.0) || !std::isfinite(scenario.sampling_interval)) {
        std::ostringstream msg;
        msg << "invalid sampling_interval: " << scenario.sampling_interval;
        throw std::invalid_argument(msg.str());
    }
    if (scenario.duration / scenario.sampling_interval > kMaxSteps) {
        std::ostringstream msg;
        msg << "step count exceeds sanity cap: duration " << scenario.duration
            << " s at interval " << scenario.sampling_interval << " s";
        throw std::invalid_argument(msg.str());
    }
    if (scenario.ris.element_count == 0) {
        throw std::invalid_argument("scenario RIS element count must be >= 1");
    }
    if (!(scenario.ris.directivity_constant > 0.0)) {
        std::ostringstream msg;
        msg << "invalid RIS directivity constant: " << scenario.ris.directivity_constant;
        throw std::invalid_argument(msg.str());
    }
    if (scenario.ris.area_mode == ris::AreaMode::kFixedTotal && !(scenario.ris.a_max > 0.0)) {
        std::ostringstream msg;
        msg << "invalid RIS area budget: " << scenario.ris.a_max;
        throw std::invalid_argument(msg.str());
    }
}

std::size_t step_count(const Scenario& scenario) {
    return static_cast<std::size_t>(std::floor(scenario.duration / scenario.sampling_interval)) + 1;
}

std::vector<LinkSample> availability_matrix(const Scenario& scenario, double t) {
    if (t < 0.0 || t > scenario.duration) {
        std::ostringstream msg;
        msg << "sample time " << t << " outside scenario horizon [0, " << scenario.duration << "]";
        throw std::invalid_argument(msg.str());
    }
    return build_samples(scenario, propagate_step(scenario, t), t);
}

std::optional<LinkSample> select_shortest(const std::vector<LinkSample>& samples) {
    const LinkSample* best = nullptr;
    for (const auto& s : samples) {
        if (!s.visible) {
            continue;
        }
        if (best == nullptr || s.distance < best->distance ||
            (s.distance == best->distance &&
             std::pair(s.geo_id, s.llo_id) < std::pair(best->geo_id, best->llo_id))) {
            best = &s;
        }
    }
    if (best == nullptr) {
        return std::nullopt;
    }
    LinkSample chosen = *best;
    chosen.selected = true;
    return chosen;
}

SelectedLink evaluate_selected_link(const Scenario& scenario, const LinkSample& sample,
                                    const Vec3& geo_position, const Vec3& llo_position) {
    SelectedLink link;
    link.sample = sample;
    const geometry::LinkGeometry geom =
        geometry::make_link_geometry(scenario.ground_station, geo_position, llo_position);
    link.d_er = geom.d_er;
    link.d_rm = geom.d_rm;
    link.phi_opt = geom.phi_opt;
    const std::vector<double> areas = ris::element_areas_for_mode(
        scenario.ris.area_mode, scenario.ris.element_count, scenario.ris.a_max);
    link.a_eff = ris::aligned_effective_area(areas, scenario.ris.directivity_constant);
    link.snr = linkbudget::snr(scenario.budget, {link.a_eff}, link.d_er, link.d_rm);
    return link;
}

std::vector<TimeStepRecord> run_timeseries(const Scenario& scenario, unsigned thread_count) {
    validate_scenario(scenario);
    const std::size_t steps = step_count(scenario);
    std::vector<TimeStepRecord> records(steps);

    auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            records[i] = evaluate_step(scenario, static_cast<double>(i) * scenario.sampling_interval);
        }
    };

    if (thread_count <= 1 || steps < 2) {
        worker(0, steps);
        return records;
    }

    const unsigned n_threads = std::min<unsigned>(thread_count, static_cast<unsigned>(steps));
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    const std::size_t chunk = (steps + n_threads - 1) / n_threads;
    for (unsigned w = 0; w < n_threads; ++w) {
        const std::size_t begin = static_cast<std::size_t>(w) * chunk;
        const std::size_t end = std::min(steps, begin + chunk);
        if (begin >= end) {
            break;
        }
        pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) {
        th.join();
    }
    return records;
}

}  // namespace cislunar::linkselect
