// cislunar-sim: batch CLI over the simulator. One subcommand per output
// product (selected-link time series, SNR vs element count, SNR vs phase
// misalignment) plus a scenario linter.
//
// Exit codes: 0 success, 1 usage error, 2 scenario parse/validation
// error, 3 runtime or numerical error.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cislunar/linkselect.hpp"
#include "cislunar/scenario_io.hpp"
#include "cislunar/sweeps.hpp"
#include "cislunar/units.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitScenario = 2;
constexpr int kExitRuntime = 3;

/// Thrown for malformed flag values discovered after CLI11 parsing.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Removes the output file unless the write completed.
class OutputFileGuard {
  public:
    explicit OutputFileGuard(std::string path) : path_(std::move(path)) {}
    ~OutputFileGuard() {
        if (!committed_) {
            std::remove(path_.c_str());
        }
    }
    void commit() { committed_ = true; }

  private:
    std::string path_;
    bool committed_ = false;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : text) {
        if (c == sep) {
            parts.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    parts.push_back(current);
    return parts;
}

double parse_double(const std::string& text, const std::string& what) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw UsageError(what + ": not a number: '" + text + "'");
    }
    return out;
}

std::vector<double> parse_epoch_list(const std::string& text) {
    std::vector<double> epochs;
    for (const auto& part : split(text, ',')) {
        const double t = parse_double(part, "--at");
        if (t < 0.0) {
            throw UsageError("--at: epochs must be >= 0, got " + part);
        }
        epochs.push_back(t);
    }
    return epochs;
}

std::vector<std::size_t> parse_m_list(const std::string& text) {
    std::vector<std::size_t> counts;
    for (const auto& part : split(text, ',')) {
        long m = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), m);
        if (ec != std::errc() || ptr != part.data() + part.size() || m < 1) {
            throw UsageError("--m-list: expected positive integers, got '" + part + "'");
        }
        counts.push_back(static_cast<std::size_t>(m));
    }
    return counts;
}

// "start:stop:step" in degrees, endpoints inclusive.
std::vector<double> parse_delta_grid_rad(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) {
        throw UsageError("--delta-grid: expected start:stop:step degrees, got '" + text + "'");
    }
    const double start = parse_double(parts[0], "--delta-grid start");
    const double stop = parse_double(parts[1], "--delta-grid stop");
    const double step = parse_double(parts[2], "--delta-grid step");
    if (!(step > 0.0)) {
        throw UsageError("--delta-grid: step must be positive");
    }
    if (stop < start) {
        throw UsageError("--delta-grid: stop must be >= start");
    }
    if (start < -180.0 || stop > 180.0) {
        throw UsageError("--delta-grid: offsets must lie within [-180, 180] degrees");
    }
    std::vector<double> grid;
    const double slack = step * 1e-9;
    for (int k = 0;; ++k) {
        const double value = start + static_cast<double>(k) * step;
        if (value > stop + slack) {
            break;
        }
        grid.push_back(cislunar::deg_to_rad(value));
    }
    return grid;
}

void apply_area_mode_override(cislunar::linkselect::Scenario& scenario, const std::string& mode) {
    if (mode.empty()) {
        return;
    }
    if (mode == "fixed-total") {
        scenario.ris.area_mode = cislunar::ris::AreaMode::kFixedTotal;
    } else if (mode == "fixed-element") {
        scenario.ris.area_mode = cislunar::ris::AreaMode::kFixedElement;
    } else {
        throw UsageError("--area-mode: expected fixed-total or fixed-element, got '" + mode + "'");
    }
}

std::string resolve_output(const std::string& flag_value,
                           const cislunar::scenario_io::RunSettings& run) {
    if (!flag_value.empty()) {
        return flag_value;
    }
    if (!run.output_path.empty()) {
        return run.output_path;
    }
    throw UsageError("no output path: pass --out or set 'output' in the scenario [run] section");
}

void write_output(const std::string& path, const std::string& content) {
    OutputFileGuard guard(path);
    {
        std::ofstream file(path, std::ios::binary | std::ios::trunc);
        if (!file) {
            throw std::runtime_error("cannot open output file: " + path);
        }
        file << content;
        file.flush();
        if (!file) {
            throw std::runtime_error("failed writing output file: " + path);
        }
    }
    guard.commit();
}

struct Options {
    std::string scenario_path;
    std::string out_path;
    std::string at = "0";
    std::string m_list = "1,10,100,1000,10000";
    std::string delta_grid = "-180:180:1";
    std::string area_mode;
    unsigned threads = 1;
};

int run_timeseries_cmd(const Options& opt) {
    auto loaded = cislunar::scenario_io::parse_scenario(opt.scenario_path);
    apply_area_mode_override(loaded.scenario, opt.area_mode);
    const std::string out_path = resolve_output(opt.out_path, loaded.run);
    const auto records = cislunar::linkselect::run_timeseries(loaded.scenario, opt.threads);
    write_output(out_path, cislunar::sweeps::timeseries_csv(records));
    std::size_t outages = 0;
    for (const auto& rec : records) {
        if (!rec.link) {
            ++outages;
        }
    }
    std::cout << "timeseries: " << records.size() << " steps, " << outages << " outages -> "
              << out_path << "\n";
    return 0;
}

int run_snr_elements_cmd(const Options& opt) {
    auto loaded = cislunar::scenario_io::parse_scenario(opt.scenario_path);
    apply_area_mode_override(loaded.scenario, opt.area_mode);
    const std::string out_path = resolve_output(opt.out_path, loaded.run);
    const auto rows = cislunar::sweeps::snr_vs_elements(loaded.scenario, parse_m_list(opt.m_list),
                                                        parse_epoch_list(opt.at));
    write_output(out_path, cislunar::sweeps::element_sweep_csv(rows));
    std::cout << "snr-elements: " << rows.size() << " rows -> " << out_path << "\n";
    return 0;
}

int run_misalign_cmd(const Options& opt) {
    auto loaded = cislunar::scenario_io::parse_scenario(opt.scenario_path);
    apply_area_mode_override(loaded.scenario, opt.area_mode);
    const std::string out_path = resolve_output(opt.out_path, loaded.run);
    const auto epochs = parse_epoch_list(opt.at);
    if (epochs.size() != 1) {
        throw UsageError("misalign takes a single --at epoch");
    }
    const auto rows = cislunar::sweeps::misalignment_sweep(
        loaded.scenario, parse_delta_grid_rad(opt.delta_grid), epochs.front());
    write_output(out_path, cislunar::sweeps::misalignment_csv(rows));
    std::cout << "misalign: " << rows.size() << " rows -> " << out_path << "\n";
    return 0;
}

int run_validate_cmd(const Options& opt) {
    const auto loaded = cislunar::scenario_io::parse_scenario(opt.scenario_path);
    std::cout << cislunar::scenario_io::dump_scenario(loaded);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Earth-to-Moon relayed-link simulator"};
    app.require_subcommand(1);

    Options opt;

    auto add_common = [&](CLI::App* sub, bool with_out) {
        sub->add_option("--scenario", opt.scenario_path, "scenario file path")->required();
        if (with_out) {
            sub->add_option("--out", opt.out_path, "output CSV path");
        }
    };

    CLI::App* timeseries = app.add_subcommand("timeseries", "selected-link time series CSV");
    add_common(timeseries, true);
    timeseries->add_option("--threads", opt.threads, "worker threads for step evaluation")
        ->check(CLI::PositiveNumber);

    CLI::App* snr_elements =
        app.add_subcommand("snr-elements", "SNR versus RIS element count CSV");
    add_common(snr_elements, true);
    snr_elements->add_option("--at", opt.at, "reference epochs, comma-separated seconds");
    snr_elements->add_option("--m-list", opt.m_list, "element counts, comma-separated");
    snr_elements->add_option("--area-mode", opt.area_mode, "fixed-total or fixed-element")
        ->check(CLI::IsMember({"fixed-total", "fixed-element"}));

    CLI::App* misalign = app.add_subcommand("misalign", "SNR versus phase misalignment CSV");
    add_common(misalign, true);
    misalign->add_option("--at", opt.at, "reference epoch, seconds");
    misalign->add_option("--delta-grid", opt.delta_grid, "start:stop:step in degrees");
    misalign->add_option("--area-mode", opt.area_mode, "fixed-total or fixed-element")
        ->check(CLI::IsMember({"fixed-total", "fixed-element"}));

    CLI::App* validate =
        app.add_subcommand("validate", "parse a scenario and print its canonical form");
    add_common(validate, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (timeseries->parsed()) {
            return run_timeseries_cmd(opt);
        }
        if (snr_elements->parsed()) {
            return run_snr_elements_cmd(opt);
        }
        if (misalign->parsed()) {
            return run_misalign_cmd(opt);
        }
        return run_validate_cmd(opt);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const cislunar::scenario_io::ScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitScenario;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
