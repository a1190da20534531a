#include "spintangle/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <regex>
#include <set>
#include <sstream>

#include "spintangle/errors.hpp"

namespace spintangle {
namespace {

const std::set<std::string, std::less<>> kKnownKeys = {
    "scenario", "j", "kappa", "p", "theta", "phi", "point", "kicks", "partitions",
    "scan", "scan_min", "scan_max", "scan_step", "out", "workers", "grid_theta", "grid_phi",
    "lyapunov_kicks", "period", "threshold", "allow_large_j", "plot"};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, std::string_view text) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw ConfigError(key, "expected a number, got '" + std::string(text) + "'");
    }
    return value;
}

int to_int(const std::string& key, std::string_view text) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError(key, "expected an integer, got '" + std::string(text) + "'");
    }
    return value;
}

bool to_bool(const std::string& key, std::string_view text) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError(key, "expected true or false, got '" + std::string(text) + "'");
}

double angle_value(const std::string& key, std::string_view text) {
    try {
        return parse_angle(text);
    } catch (const Error& e) {
        throw ConfigError(key, e.what());
    }
}

// "1", "3/2", "1.5"
SpinQuantumNumber to_spin(const std::string& key, std::string_view text) {
    double j = 0.0;
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        if (trim(text.substr(slash + 1)) != "2") throw ConfigError(key, "fractional j must be written n/2");
        j = 0.5 * to_int(key, trim(text.substr(0, slash)));
    } else {
        j = to_double(key, text);
    }
    try {
        return SpinQuantumNumber(j);
    } catch (const Error& e) {
        throw ConfigError(key, e.what());
    }
}

std::vector<int> to_int_list(const std::string& key, std::string_view text) {
    std::vector<int> out;
    std::string item;
    std::istringstream in{std::string(text)};
    while (std::getline(in, item, ',')) out.push_back(to_int(key, trim(item)));
    if (out.empty()) throw ConfigError(key, "expected a comma-separated list of integers");
    return out;
}

class Reader {
public:
    explicit Reader(const ConfigDocument& doc) : doc_(doc) {}

    std::optional<std::string_view> get(const std::string& key) const {
        const auto it = doc_.find(key);
        if (it == doc_.end()) return std::nullopt;
        return std::string_view(it->second);
    }
    bool has(const std::string& key) const { return doc_.count(key) > 0; }
    std::string_view require(const std::string& key, std::string_view why) const {
        const auto v = get(key);
        if (!v) throw ConfigError(key, "missing required field (" + std::string(why) + ")");
        return *v;
    }

private:
    const ConfigDocument& doc_;
};

}  // namespace

std::string_view to_string(Scenario s) {
    switch (s) {
        case Scenario::evolve: return "evolve";
        case Scenario::phase_portrait: return "phase-portrait";
        case Scenario::scan_kappa: return "scan-kappa";
        case Scenario::scan_phi: return "scan-phi";
        case Scenario::overlap_criterion: return "overlap-criterion";
    }
    return "unknown";
}

Scenario parse_scenario(std::string_view name) {
    for (Scenario s : {Scenario::evolve, Scenario::phase_portrait, Scenario::scan_kappa, Scenario::scan_phi,
                       Scenario::overlap_criterion}) {
        if (to_string(s) == name) return s;
    }
    throw ConfigError("scenario", "unknown scenario '" + std::string(name) + "'");
}

std::vector<double> ScanRange::values() const {
    const auto count = static_cast<long>(std::floor((max - min) / step + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) out.push_back(min + static_cast<double>(i) * step);
    return out;
}

ConfigDocument parse_document(std::string_view text) {
    ConfigDocument doc;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto sep = line.find_first_of(":=");
        if (sep == std::string_view::npos) {
            throw ConfigError("", "line " + std::to_string(line_no) + ": expected 'key: value'");
        }
        const std::string key(trim(line.substr(0, sep)));
        const std::string value(trim(line.substr(sep + 1)));
        if (!kKnownKeys.contains(key)) throw ConfigError(key, "unknown key");
        if (value.empty()) throw ConfigError(key, "empty value");
        if (!doc.emplace(key, value).second) throw ConfigError(key, "duplicate key");
    }
    return doc;
}

double parse_angle(std::string_view text) {
    static const std::regex pi_form(R"(^([+-]?)(\d*\.?\d*)\*?pi(?:/(\d+(?:\.\d+)?))?$)");
    const std::string s(trim(text));
    std::smatch m;
    if (std::regex_match(s, m, pi_form)) {
        double factor = m[2].length() > 0 ? std::stod(m[2].str()) : 1.0;
        if (m[3].matched) factor /= std::stod(m[3].str());
        if (m[1].str() == "-") factor = -factor;
        return factor * std::numbers::pi;
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) {
        throw InvalidParameter("cannot parse angle '" + s + "'");
    }
    return value;
}

std::optional<BlochAngles> named_point(std::string_view name) {
    using std::numbers::pi;
    if (name == "P1") return BlochAngles::make(2.1, 0.9);
    if (name == "P2") return BlochAngles::make(1.5, 1.5);
    if (name == "P3") return BlochAngles::make(2.25, 0.75);
    if (name == "FP1") return BlochAngles::make(pi / 2, pi / 2);
    if (name == "P4") return BlochAngles::make(pi / 2, 0.0);
    return std::nullopt;
}

ScenarioConfig resolve_config(const ConfigDocument& doc) {
    using std::numbers::pi;
    const Reader r(doc);
    ScenarioConfig cfg;
    cfg.scenario = parse_scenario(r.require("scenario", "one of evolve, phase-portrait, scan-kappa, scan-phi, overlap-criterion"));
    const Scenario sc = cfg.scenario;
    const bool quantum = sc != Scenario::phase_portrait;
    const bool scan = sc == Scenario::scan_kappa || sc == Scenario::scan_phi;

    if (quantum) {
        cfg.params.j = to_spin("j", r.require("j", "spin quantum number"));
    } else if (const auto j = r.get("j")) {
        cfg.params.j = to_spin("j", *j);
    }
    cfg.params.kappa = r.has("kappa") ? to_double("kappa", *r.get("kappa")) : 3.0;
    cfg.params.p = r.has("p") ? angle_value("p", *r.get("p")) : pi / 2;

    // Initial condition: a named point or explicit angles.
    if (const auto name = r.get("point")) {
        if (r.has("theta") || r.has("phi")) throw ConfigError("point", "give either point or theta/phi, not both");
        cfg.initial = named_point(*name);
        if (!cfg.initial) throw ConfigError("point", "unknown point '" + std::string(*name) + "' (expected P1, P2, P3, FP1 or P4)");
        cfg.point = std::string(*name);
    } else if (r.has("theta") || r.has("phi")) {
        double theta = sc == Scenario::scan_phi ? 2.25 : 0.0;
        if (const auto t = r.get("theta")) theta = angle_value("theta", *t);
        else if (sc != Scenario::scan_phi) throw ConfigError("theta", "missing required field (initial polar angle)");
        double phi = 0.0;
        if (const auto f = r.get("phi")) phi = angle_value("phi", *f);
        else if (sc != Scenario::scan_phi) throw ConfigError("phi", "missing required field (initial azimuth)");
        try {
            cfg.initial = BlochAngles::make(theta, phi);
        } catch (const Error& e) {
            throw ConfigError("theta", e.what());
        }
    } else if (sc == Scenario::scan_phi) {
        cfg.initial = BlochAngles::make(2.25, 0.0);
    } else if (sc == Scenario::overlap_criterion) {
        cfg.point = "P4";
        cfg.initial = named_point("P4");
    } else if (sc != Scenario::phase_portrait) {
        throw ConfigError("point", "missing required field (point or theta/phi)");
    }

    if (const auto k = r.get("kicks")) {
        cfg.kicks = to_int("kicks", *k);
    } else if (scan) {
        cfg.kicks = 5000;
    } else if (sc == Scenario::overlap_criterion) {
        cfg.kicks = 1;
    } else {
        throw ConfigError("kicks", "missing required field (number of kicks)");
    }
    if (cfg.kicks < 1) throw ConfigError("kicks", "must be at least 1");

    if (const auto parts = r.get("partitions")) {
        cfg.partitions = to_int_list("partitions", *parts);
    } else {
        cfg.partitions = scan ? std::vector<int>{2} : std::vector<int>{1, 2};
    }
    if (sc == Scenario::evolve || scan) {
        const int N = cfg.params.j.twice();
        for (int q : cfg.partitions) {
            if (q < 1 || q > N - 1) {
                throw ConfigError("partitions", "q = " + std::to_string(q) + " outside [1, 2j-1] = [1, " +
                                                    std::to_string(N - 1) + "]");
            }
        }
        if (scan && cfg.partitions.size() != 1) throw ConfigError("partitions", "scans take exactly one partition");
    }

    cfg.scan_axis = sc == Scenario::scan_kappa ? ScanAxis::kappa : sc == Scenario::scan_phi ? ScanAxis::phi : ScanAxis::none;
    if (const auto axis = r.get("scan")) {
        const std::string_view expected =
            cfg.scan_axis == ScanAxis::kappa ? "kappa" : cfg.scan_axis == ScanAxis::phi ? "phi" : "none";
        if (*axis != expected) throw ConfigError("scan", "scenario " + std::string(to_string(sc)) + " scans '" + std::string(expected) + "'");
    }
    if (cfg.scan_axis == ScanAxis::kappa) cfg.scan = {0.5, 4.0, 0.05};
    if (cfg.scan_axis == ScanAxis::phi) cfg.scan = {-pi, pi, 0.01};
    if (cfg.scan_axis != ScanAxis::none) {
        const bool phi_axis = cfg.scan_axis == ScanAxis::phi;
        auto read = [&](const std::string& key, double& slot) {
            if (const auto v = r.get(key)) slot = phi_axis ? angle_value(key, *v) : to_double(key, *v);
        };
        read("scan_min", cfg.scan.min);
        read("scan_max", cfg.scan.max);
        if (const auto v = r.get("scan_step")) cfg.scan.step = to_double("scan_step", *v);
        if (!(cfg.scan.step > 0.0)) throw ConfigError("scan_step", "must be positive");
        if (cfg.scan.max < cfg.scan.min) throw ConfigError("scan_max", "scan range is empty");
    } else {
        for (const char* key : {"scan_min", "scan_max", "scan_step"}) {
            if (r.has(key)) throw ConfigError(key, "only valid for scan scenarios");
        }
    }

    cfg.allow_large_j = r.has("allow_large_j") && to_bool("allow_large_j", *r.get("allow_large_j"));
    if (scan && cfg.params.j.value() > kDeskScaleMaxJ && !cfg.allow_large_j) {
        throw ConfigError("j", "scans above j = 200 need allow_large_j");
    }
    cfg.plot = r.has("plot") && to_bool("plot", *r.get("plot"));

    if (const auto v = r.get("grid_theta")) cfg.grid_theta = to_int("grid_theta", *v);
    if (const auto v = r.get("grid_phi")) cfg.grid_phi = to_int("grid_phi", *v);
    if (cfg.grid_theta < 1) throw ConfigError("grid_theta", "must be at least 1");
    if (cfg.grid_phi < 1) throw ConfigError("grid_phi", "must be at least 1");
    if (const auto v = r.get("lyapunov_kicks")) cfg.lyapunov_kicks = to_int("lyapunov_kicks", *v);
    if (cfg.lyapunov_kicks < 100) throw ConfigError("lyapunov_kicks", "must be at least 100");

    if (const auto v = r.get("threshold")) cfg.overlap_threshold = to_double("threshold", *v);
    if (!(cfg.overlap_threshold > 0.0)) throw ConfigError("threshold", "must be positive");
    if (const auto v = r.get("period")) {
        cfg.period = to_int("period", *v);
    } else if (sc == Scenario::overlap_criterion) {
        if (cfg.point == "P4") cfg.period = 4;
        else throw ConfigError("period", "missing required field (orbit period)");
    }
    if (sc == Scenario::overlap_criterion && cfg.period < 2) throw ConfigError("period", "must be at least 2");

    cfg.workers = 1;
    if (const auto v = r.get("workers")) {
        const int w = to_int("workers", *v);
        if (w < 1) throw ConfigError("workers", "must be at least 1");
        cfg.workers = static_cast<unsigned>(w);
    }
    cfg.output = r.has("out") ? std::string(*r.get("out")) : std::string(to_string(sc)) + ".csv";
    return cfg;
}

nlohmann::json to_json(const ScenarioConfig& c) {
    nlohmann::json j;
    j["scenario"] = std::string(to_string(c.scenario));
    j["j"] = c.params.j.value();
    j["kappa"] = c.params.kappa;
    j["p"] = c.params.p;
    j["tau"] = 1.0;
    if (c.point) j["point"] = *c.point;
    if (c.initial) {
        j["theta"] = c.initial->theta;
        j["phi"] = c.initial->phi;
    } else {
        j["grid_theta"] = c.grid_theta;
        j["grid_phi"] = c.grid_phi;
    }
    j["kicks"] = c.kicks;
    j["partitions"] = c.partitions;
    if (c.scan_axis != ScanAxis::none) {
        j["scan"] = c.scan_axis == ScanAxis::kappa ? "kappa" : "phi";
        j["scan_min"] = c.scan.min;
        j["scan_max"] = c.scan.max;
        j["scan_step"] = c.scan.step;
    }
    if (c.scenario == Scenario::phase_portrait) j["lyapunov_kicks"] = c.lyapunov_kicks;
    if (c.scenario == Scenario::overlap_criterion) {
        j["period"] = c.period;
        j["threshold"] = c.overlap_threshold;
    }
    j["out"] = c.output;
    j["workers"] = c.workers;
    return j;
}

}  // namespace spintangle
