#include <doctest.h>

#include <cmath>
#include <string>

#include "cislunar/scenario_io.hpp"
#include "cislunar/units.hpp"

using namespace cislunar;
using namespace cislunar::scenario_io;

namespace {

// In-test copy of the shipped reference configuration.
const char* kDefaultConfig = R"(# reference configuration
[moon]
orbit_radius_km = 384400.0
sidereal_period_days = 27.321661
inclination_deg = 5.145
phase_at_epoch_deg = 0.0

[geo]
semi_major_axis_km = 42378.1
eccentricity = 0.0
inclination_deg = 23.44
raan_deg = 0.0
arg_perigee_deg = 0.0
true_anomaly_deg = 0.0

[geo]
semi_major_axis_km = 42378.1
eccentricity = 0.0
inclination_deg = 23.44
raan_deg = 0.0
arg_perigee_deg = 0.0
true_anomaly_deg = 120.0

[geo]
semi_major_axis_km = 42378.1
eccentricity = 0.0
inclination_deg = 23.44
raan_deg = 0.0
arg_perigee_deg = 0.0
true_anomaly_deg = 240.0

[llo]
semi_major_axis_km = 1837.4
eccentricity = 0.0
inclination_deg = 90.0
raan_deg = 0.0
arg_perigee_deg = 0.0
true_anomaly_deg = 0.0

[llo]
semi_major_axis_km = 1837.4
eccentricity = 0.0
inclination_deg = 90.0
raan_deg = 90.0
arg_perigee_deg = 0.0
true_anomaly_deg = 180.0

[llo]
semi_major_axis_km = 1837.4
eccentricity = 0.0
inclination_deg = 90.0
raan_deg = 225.0
arg_perigee_deg = 0.0
true_anomaly_deg = 90.0

[llo]
semi_major_axis_km = 1837.4
eccentricity = 0.0
inclination_deg = 90.0
raan_deg = 315.0
arg_perigee_deg = 0.0
true_anomaly_deg = 270.0

[budget]
transmit_power = 40 kW
max_transmit_power = 40 kW
gain_tx = 30 dBi
gain_rx = 20 dBi
wavelength = 0.03 m
noise = -100 dBm
ris_insertion_loss = 0.9
snr_threshold = 2 dB

[ris]
elements = 100
area_mode = fixed-total
k = 0.1
a_max_m2 = 100.0

[run]
duration_days = 27.3
sampling_interval_s = 60.0
)";

std::string patched(const std::string& from, const std::string& to) {
    std::string text = kDefaultConfig;
    const auto pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, from.size(), to);
    return text;
}

}  // namespace

TEST_CASE("parse: the reference configuration loads with the table values") {
    const LoadedScenario loaded = parse_scenario_text(kDefaultConfig);
    const auto& s = loaded.scenario;
    CHECK(s.geo_elements.size() == 3);
    CHECK(s.llo_elements.size() == 4);
    CHECK(s.budget.transmit_power() == 40000.0);
    CHECK(s.budget.max_transmit_power() == 40000.0);
    CHECK(s.budget.gain_tx() == 1000.0);
    CHECK(s.budget.gain_rx() == 100.0);
    CHECK(s.budget.wavelength() == 0.03);
    CHECK(s.budget.noise_power() == 1e-13);
    CHECK(s.budget.ris_insertion_loss() == 0.9);
    CHECK(s.budget.snr_threshold() ==
          doctest::Approx(linkbudget::db_to_linear(2.0)).epsilon(1e-15));
    CHECK(s.ris.element_count == 100);
    CHECK(s.ris.area_mode == ris::AreaMode::kFixedTotal);
    CHECK(s.ris.directivity_constant == 0.1);
    CHECK(s.ris.a_max == 100.0);
    CHECK(s.moon_model.orbit_radius == 384400.0);
    CHECK(s.moon_model.sidereal_period ==
          doctest::Approx(27.321661 * kSecondsPerDay).epsilon(1e-15));
    CHECK(s.moon_model.inclination == doctest::Approx(deg_to_rad(5.145)).epsilon(1e-15));
    CHECK(s.geo_elements[1].true_anomaly() == doctest::Approx(deg_to_rad(120.0)).epsilon(1e-15));
    CHECK(s.llo_elements[2].raan() == doctest::Approx(deg_to_rad(225.0)).epsilon(1e-15));
    CHECK(s.ground_station.x == 0.0);
    CHECK(s.ground_station.y == 0.0);
    CHECK(s.ground_station.z == 0.0);
    CHECK(loaded.run.duration_s == doctest::Approx(27.3 * kSecondsPerDay).epsilon(1e-15));
    CHECK(loaded.run.sampling_interval_s == 60.0);
    CHECK(loaded.run.output_path.empty());
}

TEST_CASE("parse: invariant breach names the offending key") {
    const std::string text = patched("eccentricity = 0.0", "eccentricity = 1.5");
    try {
        parse_scenario_text(text);
        FAIL("expected a scenario error");
    } catch (const ScenarioError& e) {
        CHECK(std::string(e.what()).find("eccentricity") != std::string::npos);
    }
}

TEST_CASE("parse: unknown key is a hard error") {
    const std::string text = patched("inclination_deg = 23.44", "incliation_deg = 23.44");
    try {
        parse_scenario_text(text);
        FAIL("expected a scenario error");
    } catch (const ScenarioError& e) {
        const std::string what = e.what();
        CHECK(what.find("incliation_deg") != std::string::npos);
    }
}

TEST_CASE("parse: unknown section, duplicate key, duplicate section") {
    CHECK_THROWS_AS(parse_scenario_text(patched("[ris]", "[riss]")), ScenarioError);
    CHECK_THROWS_AS(
        parse_scenario_text(patched("elements = 100", "elements = 100\nelements = 50")),
        ScenarioError);
    CHECK_THROWS_AS(parse_scenario_text(std::string(kDefaultConfig) + "\n[run]\nduration_days = 1\n"),
                    ScenarioError);
}

TEST_CASE("parse: missing required pieces") {
    CHECK_THROWS_AS(parse_scenario_text(patched("[moon]", "[bodies]")), ScenarioError);
    CHECK_THROWS_AS(parse_scenario_text(patched("k = 0.1\n", "")), ScenarioError);
    CHECK_THROWS_AS(parse_scenario_text("[moon]\norbit_radius_km = 384400\n"), ScenarioError);
}

TEST_CASE("parse: malformed values and units are rejected with context") {
    CHECK_THROWS_AS(parse_scenario_text(patched("elements = 100", "elements = ten")),
                    ScenarioError);
    CHECK_THROWS_AS(parse_scenario_text(patched("elements = 100", "elements = 0")),
                    ScenarioError);
    CHECK_THROWS_AS(parse_scenario_text(patched("duration_days = 27.3", "duration_days = abc")),
                    ScenarioError);
    CHECK_THROWS_AS(
        parse_scenario_text(patched("area_mode = fixed-total", "area_mode = adaptive")),
        ScenarioError);
    try {
        parse_scenario_text(patched("transmit_power = 40 kW", "transmit_power = 40 kWh"));
        FAIL("expected a scenario error");
    } catch (const ScenarioError& e) {
        const std::string what = e.what();
        CHECK(what.find("transmit_power") != std::string::npos);
        CHECK(what.find("kWh") != std::string::npos);
    }
}

TEST_CASE("parse: unit suffixes convert into internal units") {
    std::string text = patched("transmit_power = 40 kW", "transmit_power = 40000 W");
    CHECK(parse_scenario_text(text).scenario.budget.transmit_power() == 40000.0);

    text = patched("noise = -100 dBm", "noise = 1e-13 W");
    CHECK(parse_scenario_text(text).scenario.budget.noise_power() == 1e-13);

    text = patched("gain_tx = 30 dBi", "gain_tx = 1000 linear");
    CHECK(parse_scenario_text(text).scenario.budget.gain_tx() == 1000.0);

    text = patched("snr_threshold = 2 dB", "snr_threshold = 1.584893192461113 linear");
    CHECK(parse_scenario_text(text).scenario.budget.snr_threshold() ==
          doctest::Approx(1.584893192461113).epsilon(1e-15));
}

TEST_CASE("parse: optional keys take their defaults") {
    // Omitting max_transmit_power pins it to the transmit power.
    std::string text = patched("max_transmit_power = 40 kW\n", "");
    CHECK(parse_scenario_text(text).scenario.budget.max_transmit_power() == 40000.0);
    // Omitting area_mode defaults to the fixed-total budget split.
    text = patched("area_mode = fixed-total\n", "");
    CHECK(parse_scenario_text(text).scenario.ris.area_mode == ris::AreaMode::kFixedTotal);
}

TEST_CASE("parse: body constant overrides") {
    const std::string text =
        std::string(kDefaultConfig) + "\n[bodies]\nmu_earth_km3_s2 = 398600.5\nmoon_radius_km = 1700.0\n";
    const LoadedScenario loaded = parse_scenario_text(text);
    CHECK(loaded.scenario.earth_body.gravitational_parameter == 398600.5);
    CHECK(loaded.scenario.moon_body.radius == 1700.0);
    CHECK(loaded.scenario.moon_body.gravitational_parameter == 4902.800);

    CHECK_THROWS_AS(
        parse_scenario_text(std::string(kDefaultConfig) + "\n[bodies]\nmu_mars = 1.0\n"),
        ScenarioError);
}

TEST_CASE("round trip: canonical dump reparses to an equal scenario") {
    const LoadedScenario first = parse_scenario_text(kDefaultConfig);
    const std::string dumped = dump_scenario(first);
    const LoadedScenario second = parse_scenario_text(dumped);
    // The canonical form is a fixed point.
    CHECK(dump_scenario(second) == dumped);

    CHECK(second.scenario.geo_elements.size() == first.scenario.geo_elements.size());
    for (std::size_t i = 0; i < first.scenario.geo_elements.size(); ++i) {
        const auto& a = first.scenario.geo_elements[i];
        const auto& b = second.scenario.geo_elements[i];
        CHECK(b.semi_major_axis() == a.semi_major_axis());
        CHECK(b.eccentricity() == a.eccentricity());
        CHECK(b.inclination() == doctest::Approx(a.inclination()).epsilon(1e-15));
        CHECK(b.true_anomaly() == doctest::Approx(a.true_anomaly()).epsilon(1e-15));
    }
    CHECK(second.scenario.budget.transmit_power() == first.scenario.budget.transmit_power());
    CHECK(second.scenario.budget.snr_threshold() ==
          doctest::Approx(first.scenario.budget.snr_threshold()).epsilon(1e-15));
    CHECK(second.run.duration_s == first.run.duration_s);
    CHECK(second.scenario.ris.element_count == first.scenario.ris.element_count);
}

TEST_CASE("parse: missing file reports an error") {
    CHECK_THROWS_AS(parse_scenario("/nonexistent/path/to/scenario.cfg"), ScenarioError);
}
