#include "cislunar/scenario_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "cislunar/units.hpp"

namespace cislunar::scenario_io {

namespace {

struct KeyValue {
    std::string key;
    std::string value;
    int line;
};

struct Section {
    std::string name;
    int line;
    std::vector<KeyValue> entries;
};

[[noreturn]] void fail(const std::string& origin, int line, const std::string& message) {
    std::ostringstream msg;
    msg << origin << ":" << line << ": " << message;
    throw ScenarioError(msg.str());
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<Section> tokenize(const std::string& text, const std::string& origin) {
    std::vector<Section> sections;
    std::istringstream stream(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                fail(origin, line_no, "malformed section header: " + line);
            }
            sections.push_back({trim(line.substr(1, line.size() - 2)), line_no, {}});
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            fail(origin, line_no, "expected 'key = value', got: " + line);
        }
        if (sections.empty()) {
            fail(origin, line_no, "key outside of any section: " + line);
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            fail(origin, line_no, "empty key");
        }
        if (value.empty()) {
            fail(origin, line_no, "empty value for key '" + key + "'");
        }
        for (const auto& existing : sections.back().entries) {
            if (existing.key == key) {
                fail(origin, line_no,
                     "duplicate key '" + key + "' in section [" + sections.back().name + "]");
            }
        }
        sections.back().entries.push_back({key, value, line_no});
    }
    return sections;
}

// Accessor over one section that records which keys were consumed so
// unknown keys can be rejected afterwards.
class SectionReader {
  public:
    SectionReader(Section& section, const std::string& origin)
        : section_(section), origin_(origin) {}

    std::optional<std::string> raw(const std::string& key) const {
        for (const auto& e : section_.entries) {
            if (e.key == key) {
                return e.value;
            }
        }
        return std::nullopt;
    }

    bool has(const std::string& key) const {
        for (const auto& e : section_.entries) {
            if (e.key == key) {
                return true;
            }
        }
        return false;
    }

    // Rejects any key outside the allowed set. Runs before the required-key
    // lookups so a typo is reported as the unknown key it is.
    void restrict_keys(std::initializer_list<const char*> allowed) {
        for (const auto& e : section_.entries) {
            bool known = false;
            for (const char* name : allowed) {
                if (e.key == name) {
                    known = true;
                    break;
                }
            }
            if (!known) {
                fail(origin_, e.line,
                     "unknown key '" + e.key + "' in section [" + section_.name + "]");
            }
        }
    }

    std::string require_raw(const std::string& key) {
        auto v = raw(key);
        if (!v) {
            fail(origin_, section_.line,
                 "missing required key '" + key + "' in section [" + section_.name + "]");
        }
        return *v;
    }

    double number(const std::string& key, const std::string& text) {
        const std::string t = trim(text);
        double out = 0.0;
        const char* begin = t.data();
        const char* end = t.data() + t.size();
        auto [ptr, ec] = std::from_chars(begin, end, out);
        if (ec != std::errc() || ptr != end) {
            fail(origin_, line_of(key), "key '" + key + "': not a number: '" + text + "'");
        }
        return out;
    }

    double require_number(const std::string& key) { return number(key, require_raw(key)); }

    std::optional<double> optional_number(const std::string& key) {
        auto v = raw(key);
        if (!v) {
            return std::nullopt;
        }
        return number(key, *v);
    }

    long require_integer(const std::string& key) {
        const std::string t = trim(require_raw(key));
        long out = 0;
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
        if (ec != std::errc() || ptr != t.data() + t.size()) {
            fail(origin_, line_of(key), "key '" + key + "': not an integer: '" + t + "'");
        }
        return out;
    }

    // "<number> <unit>" with a per-key unit table; converter maps (value,
    // unit) into the internal representation.
    template <typename Converter>
    double require_with_unit(const std::string& key, Converter convert) {
        const std::string t = trim(require_raw(key));
        const auto space = t.find_first_of(" \t");
        const std::string num_part = space == std::string::npos ? t : trim(t.substr(0, space));
        const std::string unit = space == std::string::npos ? "" : trim(t.substr(space + 1));
        const double value = number(key, num_part);
        auto converted = convert(value, unit);
        if (!converted) {
            fail(origin_, line_of(key),
                 "key '" + key + "': unsupported unit '" + unit + "' in value '" + t + "'");
        }
        return *converted;
    }

    int line_of(const std::string& key) const {
        for (const auto& e : section_.entries) {
            if (e.key == key) {
                return e.line;
            }
        }
        return section_.line;
    }

    int line() const { return section_.line; }

  private:
    Section& section_;
    const std::string& origin_;
};

orbital::OrbitalElements parse_elements(SectionReader& reader, const std::string& origin,
                                        const std::string& section_name) {
    reader.restrict_keys({"semi_major_axis_km", "eccentricity", "inclination_deg", "raan_deg",
                          "arg_perigee_deg", "true_anomaly_deg"});
    const double a = reader.require_number("semi_major_axis_km");
    const double e = reader.require_number("eccentricity");
    const double i = reader.require_number("inclination_deg");
    const double raan = reader.require_number("raan_deg");
    const double argp = reader.require_number("arg_perigee_deg");
    const double nu = reader.require_number("true_anomaly_deg");
    try {
        return orbital::OrbitalElements(a, e, deg_to_rad(i), deg_to_rad(raan), deg_to_rad(argp),
                                        deg_to_rad(nu));
    } catch (const std::invalid_argument& ex) {
        fail(origin, reader.line(), "section [" + section_name + "]: " + ex.what());
    }
}

std::optional<double> power_to_watts(double value, const std::string& unit) {
    if (unit == "W") {
        return value;
    }
    if (unit == "kW") {
        return value * 1000.0;
    }
    if (unit == "dBm") {
        return linkbudget::dbm_to_watts(value);
    }
    return std::nullopt;
}

std::optional<double> gain_to_linear(double value, const std::string& unit) {
    if (unit == "dBi" || unit == "dB") {
        return linkbudget::db_to_linear(value);
    }
    if (unit == "linear") {
        return value;
    }
    return std::nullopt;
}

std::optional<double> ratio_to_linear(double value, const std::string& unit) {
    if (unit == "dB") {
        return linkbudget::db_to_linear(value);
    }
    if (unit == "linear") {
        return value;
    }
    return std::nullopt;
}

std::optional<double> length_meters(double value, const std::string& unit) {
    if (unit == "m") {
        return value;
    }
    return std::nullopt;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

LoadedScenario parse_scenario(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw ScenarioError("cannot open scenario file: " + path);
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    if (file.bad()) {
        throw ScenarioError("I/O error reading scenario file: " + path);
    }
    return parse_scenario_text(buffer.str(), path);
}

LoadedScenario parse_scenario_text(const std::string& text, const std::string& origin) {
    std::vector<Section> sections = tokenize(text, origin);

    Section* bodies = nullptr;
    Section* moon = nullptr;
    Section* budget = nullptr;
    Section* ris_section = nullptr;
    Section* run = nullptr;
    std::vector<Section*> geos;
    std::vector<Section*> llos;

    auto bind_singleton = [&](Section& s, Section*& slot) {
        if (slot != nullptr) {
            fail(origin, s.line, "duplicate section [" + s.name + "]");
        }
        slot = &s;
    };

    for (auto& s : sections) {
        if (s.name == "bodies") {
            bind_singleton(s, bodies);
        } else if (s.name == "moon") {
            bind_singleton(s, moon);
        } else if (s.name == "budget") {
            bind_singleton(s, budget);
        } else if (s.name == "ris") {
            bind_singleton(s, ris_section);
        } else if (s.name == "run") {
            bind_singleton(s, run);
        } else if (s.name == "geo") {
            geos.push_back(&s);
        } else if (s.name == "llo") {
            llos.push_back(&s);
        } else {
            fail(origin, s.line, "unknown section [" + s.name + "]");
        }
    }

    if (moon == nullptr) {
        throw ScenarioError(origin + ": missing required section [moon]");
    }
    if (budget == nullptr) {
        throw ScenarioError(origin + ": missing required section [budget]");
    }
    if (ris_section == nullptr) {
        throw ScenarioError(origin + ": missing required section [ris]");
    }
    if (run == nullptr) {
        throw ScenarioError(origin + ": missing required section [run]");
    }
    if (geos.empty()) {
        throw ScenarioError(origin + ": scenario needs at least one [geo] section");
    }
    if (llos.empty()) {
        throw ScenarioError(origin + ": scenario needs at least one [llo] section");
    }

    orbital::CentralBody earth_body = orbital::earth();
    orbital::CentralBody moon_body = orbital::moon();
    if (bodies != nullptr) {
        SectionReader reader(*bodies, origin);
        reader.restrict_keys(
            {"mu_earth_km3_s2", "mu_moon_km3_s2", "earth_radius_km", "moon_radius_km"});
        if (auto v = reader.optional_number("mu_earth_km3_s2")) {
            earth_body.gravitational_parameter = *v;
        }
        if (auto v = reader.optional_number("mu_moon_km3_s2")) {
            moon_body.gravitational_parameter = *v;
        }
        if (auto v = reader.optional_number("earth_radius_km")) {
            earth_body.radius = *v;
        }
        if (auto v = reader.optional_number("moon_radius_km")) {
            moon_body.radius = *v;
        }
        if (!(earth_body.gravitational_parameter > 0.0) || !(earth_body.radius > 0.0) ||
            !(moon_body.gravitational_parameter > 0.0) || !(moon_body.radius > 0.0)) {
            fail(origin, reader.line(), "section [bodies]: constants must be positive");
        }
    }

    orbital::LunarEphemerisModel moon_model;
    {
        SectionReader reader(*moon, origin);
        reader.restrict_keys({"orbit_radius_km", "sidereal_period_days", "inclination_deg",
                              "phase_at_epoch_deg"});
        moon_model.orbit_radius = reader.require_number("orbit_radius_km");
        moon_model.sidereal_period =
            reader.require_number("sidereal_period_days") * kSecondsPerDay;
        moon_model.inclination = deg_to_rad(reader.optional_number("inclination_deg").value_or(0.0));
        moon_model.phase_at_epoch =
            deg_to_rad(reader.optional_number("phase_at_epoch_deg").value_or(0.0));
        if (!(moon_model.orbit_radius > 0.0)) {
            fail(origin, reader.line_of("orbit_radius_km"),
                 "key 'orbit_radius_km': must be positive");
        }
        if (!(moon_model.sidereal_period > 0.0)) {
            fail(origin, reader.line_of("sidereal_period_days"),
                 "key 'sidereal_period_days': must be positive");
        }
    }

    std::vector<orbital::OrbitalElements> geo_elements;
    for (Section* s : geos) {
        SectionReader reader(*s, origin);
        geo_elements.push_back(parse_elements(reader, origin, "geo"));
    }
    std::vector<orbital::OrbitalElements> llo_elements;
    for (Section* s : llos) {
        SectionReader reader(*s, origin);
        llo_elements.push_back(parse_elements(reader, origin, "llo"));
    }

    std::optional<linkbudget::LinkBudgetParams> budget_params;
    {
        SectionReader reader(*budget, origin);
        reader.restrict_keys({"transmit_power", "max_transmit_power", "gain_tx", "gain_rx",
                              "wavelength", "noise", "ris_insertion_loss", "snr_threshold"});
        const double p_t = reader.require_with_unit("transmit_power", power_to_watts);
        const double p_max = reader.has("max_transmit_power")
                                 ? reader.require_with_unit("max_transmit_power", power_to_watts)
                                 : p_t;
        const double g_t = reader.require_with_unit("gain_tx", gain_to_linear);
        const double g_r = reader.require_with_unit("gain_rx", gain_to_linear);
        const double lambda = reader.require_with_unit("wavelength", length_meters);
        const double noise = reader.require_with_unit("noise", power_to_watts);
        const double l_ris = reader.require_number("ris_insertion_loss");
        const double gamma_th = reader.require_with_unit("snr_threshold", ratio_to_linear);
        try {
            budget_params.emplace(p_t, p_max, g_t, g_r, lambda, noise, l_ris, gamma_th);
        } catch (const std::domain_error& ex) {
            fail(origin, reader.line(), std::string("section [budget]: ") + ex.what());
        }
    }

    linkselect::RisParams ris_params;
    {
        SectionReader reader(*ris_section, origin);
        reader.restrict_keys({"elements", "area_mode", "k", "a_max_m2"});
        const long m = reader.require_integer("elements");
        if (m < 1) {
            fail(origin, reader.line_of("elements"), "key 'elements': must be >= 1");
        }
        ris_params.element_count = static_cast<std::size_t>(m);
        const std::string mode = reader.raw("area_mode").value_or("fixed-total");
        if (mode == "fixed-total") {
            ris_params.area_mode = ris::AreaMode::kFixedTotal;
        } else if (mode == "fixed-element") {
            ris_params.area_mode = ris::AreaMode::kFixedElement;
        } else {
            fail(origin, reader.line_of("area_mode"),
                 "key 'area_mode': expected fixed-total or fixed-element, got '" + mode + "'");
        }
        ris_params.directivity_constant = reader.require_number("k");
        ris_params.a_max = reader.require_number("a_max_m2");
        if (!(ris_params.directivity_constant > 0.0)) {
            fail(origin, reader.line_of("k"), "key 'k': must be positive");
        }
        if (!(ris_params.a_max > 0.0)) {
            fail(origin, reader.line_of("a_max_m2"), "key 'a_max_m2': must be positive");
        }
    }

    RunSettings run_settings;
    {
        SectionReader reader(*run, origin);
        reader.restrict_keys({"duration_days", "sampling_interval_s", "output"});
        run_settings.duration_s = reader.require_number("duration_days") * kSecondsPerDay;
        run_settings.sampling_interval_s = reader.require_number("sampling_interval_s");
        run_settings.output_path = reader.raw("output").value_or("");
    }

    LoadedScenario loaded{
        linkselect::Scenario{
            std::move(geo_elements),
            std::move(llo_elements),
            moon_model,
            earth_body,
            moon_body,
            Vec3{0.0, 0.0, 0.0},  // ground station fixed at the frame origin
            run_settings.duration_s,
            run_settings.sampling_interval_s,
            *budget_params,
            ris_params,
        },
        run_settings,
    };
    try {
        linkselect::validate_scenario(loaded.scenario);
    } catch (const std::invalid_argument& ex) {
        throw ScenarioError(origin + ": " + ex.what());
    }
    return loaded;
}

std::string dump_scenario(const LoadedScenario& loaded) {
    const linkselect::Scenario& s = loaded.scenario;
    std::ostringstream out;
    out << "# canonical scenario dump\n";
    out << "\n[bodies]\n";
    out << "mu_earth_km3_s2 = " << format_double(s.earth_body.gravitational_parameter) << "\n";
    out << "mu_moon_km3_s2 = " << format_double(s.moon_body.gravitational_parameter) << "\n";
    out << "earth_radius_km = " << format_double(s.earth_body.radius) << "\n";
    out << "moon_radius_km = " << format_double(s.moon_body.radius) << "\n";
    out << "\n[moon]\n";
    out << "orbit_radius_km = " << format_double(s.moon_model.orbit_radius) << "\n";
    out << "sidereal_period_days = "
        << format_double(s.moon_model.sidereal_period / kSecondsPerDay) << "\n";
    out << "inclination_deg = " << format_double(rad_to_deg(s.moon_model.inclination)) << "\n";
    out << "phase_at_epoch_deg = " << format_double(rad_to_deg(s.moon_model.phase_at_epoch))
        << "\n";
    auto dump_elements = [&](const char* name, const orbital::OrbitalElements& el) {
        out << "\n[" << name << "]\n";
        out << "semi_major_axis_km = " << format_double(el.semi_major_axis()) << "\n";
        out << "eccentricity = " << format_double(el.eccentricity()) << "\n";
        out << "inclination_deg = " << format_double(rad_to_deg(el.inclination())) << "\n";
        out << "raan_deg = " << format_double(rad_to_deg(el.raan())) << "\n";
        out << "arg_perigee_deg = " << format_double(rad_to_deg(el.arg_perigee())) << "\n";
        out << "true_anomaly_deg = " << format_double(rad_to_deg(el.true_anomaly())) << "\n";
    };
    for (const auto& el : s.geo_elements) {
        dump_elements("geo", el);
    }
    for (const auto& el : s.llo_elements) {
        dump_elements("llo", el);
    }
    out << "\n[budget]\n";
    out << "transmit_power = " << format_double(s.budget.transmit_power()) << " W\n";
    out << "max_transmit_power = " << format_double(s.budget.max_transmit_power()) << " W\n";
    out << "gain_tx = " << format_double(s.budget.gain_tx()) << " linear\n";
    out << "gain_rx = " << format_double(s.budget.gain_rx()) << " linear\n";
    out << "wavelength = " << format_double(s.budget.wavelength()) << " m\n";
    out << "noise = " << format_double(s.budget.noise_power()) << " W\n";
    out << "ris_insertion_loss = " << format_double(s.budget.ris_insertion_loss()) << "\n";
    out << "snr_threshold = " << format_double(s.budget.snr_threshold()) << " linear\n";
    out << "\n[ris]\n";
    out << "elements = " << s.ris.element_count << "\n";
    out << "area_mode = "
        << (s.ris.area_mode == ris::AreaMode::kFixedTotal ? "fixed-total" : "fixed-element")
        << "\n";
    out << "k = " << format_double(s.ris.directivity_constant) << "\n";
    out << "a_max_m2 = " << format_double(s.ris.a_max) << "\n";
    out << "\n[run]\n";
    out << "duration_days = " << format_double(loaded.run.duration_s / kSecondsPerDay) << "\n";
    out << "sampling_interval_s = " << format_double(loaded.run.sampling_interval_s) << "\n";
    if (!loaded.run.output_path.empty()) {
        out << "output = " << loaded.run.output_path << "\n";
    }
    return out.str();
}

}  // namespace cislunar::scenario_io
