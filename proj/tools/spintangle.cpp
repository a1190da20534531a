// spintangle: kicked-top entanglement and entanglement-bound experiments.
//
//   spintangle <scenario> [--config FILE] [--j J] [--kappa K] [--p P] ...
//
// Flags override keys from the config file. Exit codes: 0 success,
// 2 config error, 3 numerical invariant violation, 4 I/O error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "spintangle/errors.hpp"
#include "spintangle/parallel.hpp"
#include "spintangle/scenarios.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw spintangle::IoError("cannot read config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kicked-top entanglement and Fannes-Audenaert bounds"};
    app.set_version_flag("--version", spintangle::kToolVersion);

    std::string scenario;
    std::string config_path;
    app.add_option("scenario", scenario,
                   "evolve | phase-portrait | scan-kappa | scan-phi | overlap-criterion")
        ->required();
    app.add_option("--config", config_path, "flat key: value config file");

    // flag name, config key, help
    const std::vector<std::tuple<std::string, std::string, std::string>> overrides = {
        {"--j", "j", "spin quantum number (e.g. 4, 3/2)"},
        {"--kappa", "kappa", "kick strength (default 3)"},
        {"--p", "p", "rotation angle, radians or pi/2 (default pi/2)"},
        {"--theta", "theta", "initial polar angle"},
        {"--phi", "phi", "initial azimuth"},
        {"--point", "point", "named initial point: P1 P2 P3 FP1 P4"},
        {"--kicks", "kicks", "number of kicks"},
        {"--partitions", "partitions", "comma-separated qubit counts q"},
        {"--out", "out", "output CSV path"},
        {"--workers", "workers", "worker threads (default SPINTANGLE_WORKERS or all cores)"},
        {"--scan-min", "scan_min", "scan start"},
        {"--scan-max", "scan_max", "scan end (inclusive)"},
        {"--scan-step", "scan_step", "scan step"},
        {"--grid-theta", "grid_theta", "phase-portrait grid rows"},
        {"--grid-phi", "grid_phi", "phase-portrait grid columns"},
        {"--lyapunov-kicks", "lyapunov_kicks", "kicks used to classify each initial condition"},
        {"--period", "period", "orbit period for overlap-criterion"},
        {"--threshold", "threshold", "overlap threshold for overlap-criterion"},
    };
    std::vector<std::string> values(overrides.size());
    for (std::size_t i = 0; i < overrides.size(); ++i) {
        app.add_option(std::get<0>(overrides[i]), values[i], std::get<2>(overrides[i]));
    }
    bool allow_large_j = false;
    bool plot = false;
    app.add_flag("--allow-large-j", allow_large_j, "permit scans above j = 200");
    app.add_flag("--plot", plot, "also write a gnuplot script next to the CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        spintangle::ConfigDocument doc;
        if (!config_path.empty()) doc = spintangle::parse_document(read_file(config_path));
        if (auto it = doc.find("scenario"); it != doc.end() && it->second != scenario) {
            throw spintangle::ConfigError("scenario", "config file says '" + it->second + "' but command line says '" +
                                                          scenario + "'");
        }
        doc["scenario"] = scenario;
        for (std::size_t i = 0; i < overrides.size(); ++i) {
            if (app.count(std::get<0>(overrides[i])) > 0) doc[std::get<1>(overrides[i])] = values[i];
        }
        if (allow_large_j) doc["allow_large_j"] = "true";
        if (plot) doc["plot"] = "true";
        if (!doc.count("workers")) {
            const char* env = std::getenv("SPINTANGLE_WORKERS");
            doc["workers"] = env && *env ? std::string(env) : std::to_string(spintangle::default_worker_count());
        }

        const spintangle::ScenarioConfig config = spintangle::resolve_config(doc);
        if (config.allow_large_j && config.params.j.value() > spintangle::kDeskScaleMaxJ) {
            std::cerr << "warning: j = " << config.params.j.value()
                      << " is above desk scale; dense propagation cost grows as (2j+1)^2 per kick\n";
        }
        const spintangle::RunManifest manifest = spintangle::run_scenario(config);
        for (const auto& [file, rows] : manifest.row_counts) {
            std::cout << file << ": " << rows << " rows\n";
        }
        if (!manifest.summary.is_null()) std::cout << manifest.summary.dump() << '\n';
        return 0;
    } catch (const spintangle::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const spintangle::IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const spintangle::Error& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    }
}
