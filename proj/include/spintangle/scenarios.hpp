#pragma once

#include <cstddef>
#include <map>
#include <string>

#include <json.hpp>

#include "spintangle/config.hpp"

namespace spintangle {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunManifest {
    nlohmann::json config;
    std::string version = kToolVersion;
    double wall_clock_seconds = 0.0;
    std::map<std::string, std::size_t> row_counts;  // output file -> data rows
    nlohmann::json summary;                         // scenario-specific extras

    nlohmann::json to_json() const;
};

// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

// Runs one scenario, writes its CSV (and optional gnuplot script) plus
// "<out>.manifest.json". Throws IoError on file failures and
// NumericalViolation when a per-kick invariant (S_q <= bound, entropy caps)
// fails.
RunManifest run_scenario(const ScenarioConfig& config);

// CSV headers, one per scenario family.
inline constexpr const char* kEvolveHeader =
    "kick,q,S_q_bits,D_re,D_re_prime,bound_bits,loose_bound_bits,loose_valid,"
    "Jx_exp,Jy_exp,Jz_exp,cl_X,cl_Y,cl_Z,degenerate_dir";
inline constexpr const char* kPortraitHeader = "ic_index,theta0,phi0,step,X,Y,Z,lyapunov,class";
inline constexpr const char* kScanHeader = "scan_value,j,max_S_q_bits,max_bound_bits,argmax_kick";
inline constexpr const char* kOverlapHeader = "j,max_pair_overlap";

}  // namespace spintangle
