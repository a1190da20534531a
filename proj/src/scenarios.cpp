#include "spintangle/scenarios.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <vector>

#include "spintangle/classical_top.hpp"
#include "spintangle/entanglement_bounds.hpp"
#include "spintangle/errors.hpp"
#include "spintangle/parallel.hpp"
#include "spintangle/quantum_dynamics.hpp"

namespace spintangle {
namespace {

constexpr double kBoundSlack = 1e-9;

class CsvWriter {
public:
    CsvWriter(const std::string& path, const char* header) : path_(path), out_(path, std::ios::binary) {
        if (!out_) throw IoError("cannot open '" + path + "' for writing");
        out_ << header << '\n';
    }

    void row(const std::string& line) {
        out_ << line << '\n';
        ++rows_;
    }

    std::size_t finish() {
        out_.close();
        if (out_.fail()) throw IoError("failed writing '" + path_ + "'");
        return rows_;
    }

private:
    std::string path_;
    std::ofstream out_;
    std::size_t rows_ = 0;
};

std::string fmt(double v) { return format_double(v); }
std::string fmt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::string join(std::initializer_list<std::string> fields) {
    std::string line;
    bool first = true;
    for (const auto& f : fields) {
        if (!first) line += ',';
        line += f;
        first = false;
    }
    return line;
}

void check_record(const BoundRecord& rec) {
    if (rec.slack() < -kBoundSlack) {
        throw NumericalViolation("kick " + std::to_string(rec.kick) + ", q = " + std::to_string(rec.q) +
                                 ": entropy " + format_double(rec.entropy) + " exceeds bound " +
                                 format_double(rec.bound));
    }
    if (rec.entropy > std::log2(rec.q + 1.0) + kBoundSlack) {
        throw NumericalViolation("kick " + std::to_string(rec.kick) + ": entropy above log2(q+1)");
    }
}

std::string evolve_row(const BoundRecord& r) {
    const auto& cl = r.classical_point;
    return join({std::to_string(r.kick), std::to_string(r.q), fmt(r.entropy), fmt(r.d_expectation),
                 fmt(r.d_classical), fmt(r.bound), r.loose ? fmt(r.loose->value) : std::string(),
                 r.loose ? (r.loose->valid ? "1" : "0") : std::string(), fmt(r.expectation.x()),
                 fmt(r.expectation.y()), fmt(r.expectation.z()), cl ? fmt(cl->x) : std::string(),
                 cl ? fmt(cl->y) : std::string(), cl ? fmt(cl->z) : std::string(),
                 r.degenerate_direction ? "1" : "0"});
}

void write_plot(const std::string& path, const std::string& body) {
    std::ofstream out(path + ".gp", std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + ".gp' for writing");
    out << "set datafile separator ','\nset key autotitle columnhead\n" << body;
    if (!out) throw IoError("failed writing '" + path + ".gp'");
}

struct ScanResult {
    double max_entropy = -1.0;
    double max_bound = 0.0;
    int argmax_kick = 0;
};

ScanResult scan_point(const FloquetUnitary& unitary, const BlochAngles& initial, int q, int kicks) {
    const auto classical = trajectory(SpherePoint::from_angles(initial), unitary.params().classical(), kicks);
    ScanResult result;
    propagate(scs_state(unitary.params().j, initial), unitary, kicks, [&](int k, const SpinState& s) {
        const BoundRecord rec = bound_record(s, q, classical[static_cast<std::size_t>(k)], k);
        check_record(rec);
        if (rec.entropy > result.max_entropy) {
            result.max_entropy = rec.entropy;
            result.argmax_kick = k;
        }
        result.max_bound = std::max(result.max_bound, rec.bound);
    });
    return result;
}

void run_evolve(const ScenarioConfig& cfg, RunManifest& manifest) {
    const FloquetUnitary unitary(cfg.params);
    const auto classical =
        trajectory(SpherePoint::from_angles(*cfg.initial), cfg.params.classical(), cfg.kicks);
    CsvWriter csv(cfg.output, kEvolveHeader);
    std::vector<double> gap_sum(cfg.partitions.size(), 0.0);
    std::vector<double> max_entropy(cfg.partitions.size(), 0.0);
    propagate(scs_state(cfg.params.j, *cfg.initial), unitary, cfg.kicks, [&](int k, const SpinState& s) {
        for (std::size_t i = 0; i < cfg.partitions.size(); ++i) {
            const BoundRecord rec = bound_record(s, cfg.partitions[i], classical[static_cast<std::size_t>(k)], k);
            check_record(rec);
            gap_sum[i] += rec.slack();
            max_entropy[i] = std::max(max_entropy[i], rec.entropy);
            csv.row(evolve_row(rec));
        }
    });
    manifest.row_counts[cfg.output] = csv.finish();
    for (std::size_t i = 0; i < cfg.partitions.size(); ++i) {
        const std::string q = std::to_string(cfg.partitions[i]);
        manifest.summary["mean_bound_gap_bits"][q] = gap_sum[i] / (cfg.kicks + 1);
        manifest.summary["max_S_q_bits"][q] = max_entropy[i];
    }
    if (cfg.plot) {
        std::string body = "set xlabel 'kick'\nset ylabel 'bits'\nplot ";
        for (std::size_t i = 0; i < cfg.partitions.size(); ++i) {
            const std::string q = std::to_string(cfg.partitions[i]);
            if (i) body += ", \\\n     ";
            body += "'" + cfg.output + "' using ($2==" + q + "?$1:1/0):3 with lines title 'S_" + q + "', '" +
                    cfg.output + "' using ($2==" + q + "?$1:1/0):6 with lines dt 2 title 'bound q=" + q + "'";
        }
        write_plot(cfg.output, body + "\n");
    }
}

void run_phase_portrait(const ScenarioConfig& cfg, RunManifest& manifest) {
    const GridSpec grid = cfg.initial ? GridSpec{{*cfg.initial}} : GridSpec::uniform(cfg.grid_theta, cfg.grid_phi);
    const auto rows = phase_portrait(grid, cfg.params.classical(), cfg.kicks, {cfg.lyapunov_kicks, cfg.workers});
    CsvWriter csv(cfg.output, kPortraitHeader);
    std::size_t chaotic = 0;
    for (const auto& r : rows) {
        if (r.step == 0 && r.orbit_class == OrbitClass::chaotic) ++chaotic;
        csv.row(join({std::to_string(r.ic_index), fmt(r.initial.theta), fmt(r.initial.phi),
                      std::to_string(r.step), fmt(r.point.x), fmt(r.point.y), fmt(r.point.z), fmt(r.lyapunov),
                      to_string(r.orbit_class)}));
    }
    manifest.row_counts[cfg.output] = csv.finish();
    manifest.summary["initial_conditions"] = grid.initial_conditions.size();
    manifest.summary["chaotic_initial_conditions"] = chaotic;
    if (cfg.plot) {
        write_plot(cfg.output,
                   "set xlabel 'phi'\nset ylabel 'theta'\nunset key\n"
                   "plot '" + cfg.output + "' using (atan2($6,$5)):(acos($7)):(strcol(9) eq 'chaotic' ? 1 : 3) "
                   "with dots lc variable\n");
    }
}

void run_scan(const ScenarioConfig& cfg, RunManifest& manifest) {
    const std::vector<double> values = cfg.scan.values();
    const int q = cfg.partitions.front();
    std::vector<ScanResult> results(values.size());
    if (cfg.scan_axis == ScanAxis::kappa) {
        parallel_for(values.size(), cfg.workers, [&](std::size_t i) {
            KickedTopParams params = cfg.params;
            params.kappa = values[i];
            results[i] = scan_point(FloquetUnitary(params), *cfg.initial, q, cfg.kicks);
        });
    } else {
        const FloquetUnitary unitary(cfg.params);
        parallel_for(values.size(), cfg.workers, [&](std::size_t i) {
            results[i] = scan_point(unitary, BlochAngles::make(cfg.initial->theta, values[i]), q, cfg.kicks);
        });
    }
    CsvWriter csv(cfg.output, kScanHeader);
    for (std::size_t i = 0; i < values.size(); ++i) {
        csv.row(join({fmt(values[i]), fmt(cfg.params.j.value()), fmt(results[i].max_entropy),
                      fmt(results[i].max_bound), std::to_string(results[i].argmax_kick)}));
    }
    manifest.row_counts[cfg.output] = csv.finish();
    if (cfg.plot) {
        write_plot(cfg.output, std::string("set xlabel '") + (cfg.scan_axis == ScanAxis::kappa ? "kappa" : "phi") +
                                   "'\nset ylabel 'bits'\nplot '" + cfg.output + "' using 1:3 with linespoints, '" +
                                   cfg.output + "' using 1:4 with lines dt 2\n");
    }
}

void run_overlap(const ScenarioConfig& cfg, RunManifest& manifest) {
    const auto path = trajectory(SpherePoint::from_angles(*cfg.initial), cfg.params.classical(), cfg.period);
    if ((path.back().vec() - path.front().vec()).norm() > 1e-9) {
        throw ConfigError("period", "the initial point is not on a closed orbit of this period");
    }
    std::vector<BlochAngles> orbit;
    for (int k = 0; k < cfg.period; ++k) orbit.push_back(path[static_cast<std::size_t>(k)].angles());

    CsvWriter csv(cfg.output, kOverlapHeader);
    std::optional<double> first_below;
    for (int twice = 1; twice <= cfg.params.j.twice(); ++twice) {
        const SpinQuantumNumber j = SpinQuantumNumber::from_twice(twice);
        const double overlap = orbit_overlap_criterion(orbit, j);
        if (!first_below && overlap < cfg.overlap_threshold) first_below = j.value();
        csv.row(join({fmt(j.value()), fmt(overlap)}));
    }
    manifest.row_counts[cfg.output] = csv.finish();
    manifest.summary["threshold"] = cfg.overlap_threshold;
    manifest.summary["first_j_below_threshold"] =
        first_below ? nlohmann::json(*first_below) : nlohmann::json(nullptr);
    if (cfg.plot) {
        write_plot(cfg.output, "set logscale y\nset xlabel 'j'\nplot '" + cfg.output + "' using 1:2 with linespoints\n");
    }
}

}  // namespace

std::string format_double(double value) {
    if (value == 0.0) return "0";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) throw NumericalViolation("cannot format double");
    return std::string(buf, ptr);
}

nlohmann::json RunManifest::to_json() const {
    nlohmann::json j;
    j["tool"] = "spintangle";
    j["version"] = version;
    j["config"] = config;
    j["wall_clock_seconds"] = wall_clock_seconds;
    j["row_counts"] = row_counts;
    if (!summary.is_null()) j["summary"] = summary;
    return j;
}

RunManifest run_scenario(const ScenarioConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    RunManifest manifest;
    manifest.config = to_json(config);
    switch (config.scenario) {
        case Scenario::evolve: run_evolve(config, manifest); break;
        case Scenario::phase_portrait: run_phase_portrait(config, manifest); break;
        case Scenario::scan_kappa:
        case Scenario::scan_phi: run_scan(config, manifest); break;
        case Scenario::overlap_criterion: run_overlap(config, manifest); break;
    }
    manifest.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::string manifest_path = config.output + ".manifest.json";
    std::ofstream out(manifest_path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + manifest_path + "' for writing");
    out << manifest.to_json().dump(2) << '\n';
    if (!out) throw IoError("failed writing '" + manifest_path + "'");
    return manifest;
}

}  // namespace spintangle
