#pragma once

// Scenario file loading and canonical emission. The format is a strict
// sectioned key = value text file; unknown sections or keys are hard
// errors, angles live in degrees, and budget values carry unit suffixes
// (W, kW, dBm, dBi, dB, m).

#include <stdexcept>
#include <string>

#include "cislunar/linkselect.hpp"

namespace cislunar::scenario_io {

/// Malformed document or invariant breach; the message names the
/// offending section, key, and value.
class ScenarioError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Per-run settings that live in the file but outside the Scenario
/// struct proper.
struct RunSettings {
    double duration_s = 0.0;
    double sampling_interval_s = 0.0;
    std::string output_path;  // optional; may be overridden by --out
};

struct LoadedScenario {
    linkselect::Scenario scenario;
    RunSettings run;
};

LoadedScenario parse_scenario(const std::string& path);
LoadedScenario parse_scenario_text(const std::string& text, const std::string& origin = "<string>");

/// Canonical text form: fixed section and key order, full-precision
/// numbers. parse_scenario_text(dump_scenario(x)) reproduces x exactly.
std::string dump_scenario(const LoadedScenario& loaded);

}  // namespace cislunar::scenario_io
