#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "spintangle/quantum_dynamics.hpp"

namespace spintangle {

enum class Scenario { evolve, phase_portrait, scan_kappa, scan_phi, overlap_criterion };
enum class ScanAxis { none, kappa, phi };

std::string_view to_string(Scenario s);
Scenario parse_scenario(std::string_view name);

struct ScanRange {
    double min = 0.0;
    double max = 0.0;
    double step = 1.0;

    // min, min+step, ... up to max inclusive (within 1e-9 of a step).
    std::vector<double> values() const;
};

struct ScenarioConfig {
    Scenario scenario = Scenario::evolve;
    KickedTopParams params{SpinQuantumNumber(1.0)};
    std::optional<std::string> point;  // P1, P2, P3, FP1 or P4 when named
    std::optional<BlochAngles> initial;  // unset => phase-portrait grid
    int kicks = 1;
    std::vector<int> partitions;
    ScanAxis scan_axis = ScanAxis::none;
    ScanRange scan;
    std::string output;
    unsigned workers = 1;

    int grid_theta = 32;
    int grid_phi = 32;
    int lyapunov_kicks = 5000;
    int period = 0;                    // overlap-criterion orbit length
    double overlap_threshold = 1e-10;
    bool allow_large_j = false;
    bool plot = false;
};

// Flat key/value document: one "key: value" or "key = value" per line,
// '#' starts a comment.
using ConfigDocument = std::map<std::string, std::string>;

ConfigDocument parse_document(std::string_view text);

// Applies scenario defaults (kappa = 3, p = pi/2, tau = 1) and validates.
// Throws ConfigError naming the offending key.
ScenarioConfig resolve_config(const ConfigDocument& doc);

inline ScenarioConfig parse_config(std::string_view text) { return resolve_config(parse_document(text)); }

// "pi/2", "-pi", "3pi/4", "0.5*pi" or plain decimal radians.
double parse_angle(std::string_view text);

// Named initial conditions of the kicked-top phase space.
std::optional<BlochAngles> named_point(std::string_view name);

// Largest j that scans run without allow_large_j.
inline constexpr double kDeskScaleMaxJ = 200.0;

nlohmann::json to_json(const ScenarioConfig& config);

}  // namespace spintangle
