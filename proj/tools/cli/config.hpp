#pragma once

// Flat key=value experiment settings, named presets and sweep specifications.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mimohop/csv.hpp"
#include "mimohop/errors.hpp"
#include "mimohop/ppp_sim.hpp"
#include "mimohop/special_fn.hpp"

namespace mimohop::cli {

enum class SweepScale { linear, log, geometric, list };

struct SweepSpec {
    std::string variable;
    std::vector<double> values;
};

struct ExperimentConfig {
    std::string preset;
    double alpha = 2.0;
    double phi = std::numbers::pi / 2.0;
    int n = 3;
    double d = 1.0;
    double n0 = 1.0;
    int nt = 2;
    int nr = 2;
    double rate = 4.0;
    double eps = 0.05;
    int nodes = 30;
    std::int64_t trials = 10000;
    std::uint64_t seed = 1;
    InverseMode mode = InverseMode::exact;
    std::string sweep;
    std::string family;
    SectorAnchor anchor = SectorAnchor::per_hop;
    PointProcess process = PointProcess::uniform_count;
    double intensity = 1.0;
    double distance = 0.0;
    bool mc_rate_auto = false;
    std::string which = "all";
    bool corollary = false;
    unsigned threads = 0;  // never echoed: output must not depend on it
};

namespace detail {

inline std::string trim(std::string s) {
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(s);
    while (std::getline(in, part, sep)) parts.push_back(trim(part));
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
}

/// Real number; also accepts "pi", "pi/k" and "k*pi".
inline double parse_real(const std::string& key, const std::string& raw) {
    const std::string v = trim(raw);
    if (v == "pi") return std::numbers::pi;
    if (v.rfind("pi/", 0) == 0) return std::numbers::pi / parse_real(key, v.substr(3));
    if (v.size() > 3 && v.compare(v.size() - 3, 3, "*pi") == 0) {
        return parse_real(key, v.substr(0, v.size() - 3)) * std::numbers::pi;
    }
    try {
        std::size_t used = 0;
        const double out = std::stod(v, &used);
        if (used != v.size() || !std::isfinite(out)) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': not a number: '" + raw + "'");
    }
}

inline std::int64_t parse_int(const std::string& key, const std::string& raw) {
    const double v = parse_real(key, raw);
    if (v != std::floor(v) || std::abs(v) > 9.0e15) {
        throw ConfigError("key '" + key + "': not an integer: '" + raw + "'");
    }
    return static_cast<std::int64_t>(v);
}

inline bool parse_bool(const std::string& key, const std::string& raw) {
    const std::string v = trim(raw);
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    throw ConfigError("key '" + key + "': not a boolean: '" + raw + "'");
}

}  // namespace detail

/// Keys that may be swept (numeric model parameters).
inline bool is_numeric_key(const std::string& key) {
    static const std::vector<std::string> keys{"alpha", "phi",   "n",         "d",        "n0",    "nt",  "nr",
                                               "rate",  "pr",    "eps",       "nodes",    "snr",   "trials",
                                               "intensity", "distance"};
    return std::find(keys.begin(), keys.end(), key) != keys.end();
}

/// Applies one setting. Every source (preset, config file, flags, sweep
/// points) goes through here.
inline void set_key(ExperimentConfig& c, const std::string& key, const std::string& value) {
    using detail::parse_int;
    using detail::parse_real;
    if (key == "alpha") c.alpha = parse_real(key, value);
    else if (key == "phi") c.phi = parse_real(key, value);
    else if (key == "n") c.n = static_cast<int>(parse_int(key, value));
    else if (key == "d") c.d = parse_real(key, value);
    else if (key == "n0") c.n0 = parse_real(key, value);
    else if (key == "nt") c.nt = static_cast<int>(parse_int(key, value));
    else if (key == "nr") c.nr = static_cast<int>(parse_int(key, value));
    else if (key == "rate") c.rate = parse_real(key, value);
    else if (key == "pr") c.eps = 1.0 - parse_real(key, value);
    else if (key == "eps") c.eps = parse_real(key, value);
    else if (key == "nodes") c.nodes = static_cast<int>(parse_int(key, value));
    else if (key == "trials") c.trials = parse_int(key, value);
    else if (key == "seed") {
        try {
            std::size_t used = 0;
            c.seed = std::stoull(detail::trim(value), &used);
            if (used != detail::trim(value).size()) throw std::invalid_argument(value);
        } catch (const std::exception&) {
            throw ConfigError("key 'seed': not an unsigned integer: '" + value + "'");
        }
    } else if (key == "mode") {
        if (value == "exact") c.mode = InverseMode::exact;
        else if (value == "philip") c.mode = InverseMode::philip;
        else throw ConfigError("key 'mode': expected exact|philip, got '" + value + "'");
    } else if (key == "sweep") c.sweep = detail::trim(value);
    else if (key == "family") c.family = detail::trim(value);
    else if (key == "anchor") {
        if (value == "per-hop") c.anchor = SectorAnchor::per_hop;
        else if (value == "source") c.anchor = SectorAnchor::source;
        else throw ConfigError("key 'anchor': expected per-hop|source, got '" + value + "'");
    } else if (key == "process") {
        if (value == "uniform") c.process = PointProcess::uniform_count;
        else if (value == "poisson") c.process = PointProcess::poisson;
        else throw ConfigError("key 'process': expected uniform|poisson, got '" + value + "'");
    } else if (key == "intensity") c.intensity = parse_real(key, value);
    else if (key == "distance") c.distance = parse_real(key, value);
    else if (key == "mc_rate") {
        if (value == "auto") c.mc_rate_auto = true;
        else if (value == "fixed") c.mc_rate_auto = false;
        else throw ConfigError("key 'mc_rate': expected auto|fixed, got '" + value + "'");
    } else if (key == "which") c.which = detail::trim(value);
    else if (key == "corollary") c.corollary = detail::parse_bool(key, value);
    else if (key == "threads") c.threads = static_cast<unsigned>(parse_int(key, value));
    else if (key == "preset") c.preset = detail::trim(value);
    else throw ConfigError("unknown key '" + key + "'");
}

/// Flat key=value text; '#' starts a comment, blank lines ignored.
inline std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key=value");
        }
        entries.emplace_back(detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
    }
    return entries;
}

// ---------------------------------------------------------------------------
// Presets

struct Preset {
    std::string name;
    std::string command;
    std::string description;
    std::vector<std::pair<std::string, std::string>> settings;
};

inline const std::vector<Preset>& presets() {
    static const std::vector<Preset> all{
        {"fig-sublinear-n4", "line-compare", "Long-hop vs. short-hop energy, n = 4, line network",
         {{"n", "4"}, {"nt", "2"}, {"nr", "2"}, {"alpha", "2"}, {"rate", "4"}, {"sweep", "pr:0.9:0.9999:151:log"}}},
        {"fig-sublinear-n3", "line-compare", "Long-hop vs. short-hop energy, n = 3, line network",
         {{"n", "3"}, {"nt", "2"}, {"nr", "2"}, {"alpha", "2"}, {"rate", "4"}, {"sweep", "pr:0.9:0.9999:151:log"}}},
        {"fig-rate-effect", "line-compare", "Impact of the target rate, n = 4, 2x2",
         {{"n", "4"}, {"nt", "2"}, {"nr", "2"}, {"alpha", "2"}, {"rate", "4"},
          {"sweep", "pr:0.9:0.9999:151:log"}, {"family", "rate:2,4,8,16"}}},
        {"fig-loose-qos", "line-compare", "Impact of Nt under a loose outage constraint",
         {{"n", "5"}, {"nr", "2"}, {"alpha", "2"}, {"rate", "4"}, {"sweep", "nt:1:32:32:linear"},
          {"family", "pr:0.91,0.92,0.93"}}},
        {"fig-strict-qos", "line-compare", "Impact of Nt under a strict outage constraint",
         {{"n", "5"}, {"nr", "2"}, {"alpha", "2"}, {"rate", "4"}, {"sweep", "nt:1:32:32:linear"},
          {"family", "pr:0.98,0.99,0.995"}}},
        {"fig-rx-antennas", "line-compare", "Impact of Nr, Nt = 2",
         {{"n", "5"}, {"nt", "2"}, {"alpha", "2"}, {"rate", "4"}, {"sweep", "nr:1:32:32:linear"},
          {"family", "pr:0.91,0.95,0.99"}}},
        {"fig-mult-short-line", "line-compare", "Multi-transmit long hop vs. short hops, Nr = 2",
         {{"n", "2"}, {"nr", "2"}, {"alpha", "2"}, {"rate", "4"}, {"sweep", "nt:1:32:32:linear"},
          {"family", "pr:0.96,0.98,0.99"}}},
        {"fig-mult-short-line2", "line-compare", "Multi-transmit long hop vs. short hops, Nr = 4",
         {{"n", "2"}, {"nr", "4"}, {"alpha", "2"}, {"rate", "4"}, {"sweep", "nt:1:32:32:linear"},
          {"family", "pr:0.96,0.98,0.99"}}},
        {"fig-mult-short-rand", "rand-compare", "Multi-transmit Strategy B vs. Strategy A, 2-D network",
         {{"n", "5"}, {"phi", "pi/2"}, {"nr", "2"}, {"alpha", "2"}, {"rate", "4"}, {"sweep", "nt:1:32:32:linear"},
          {"family", "pr:0.96,0.98,0.99"}}},
        {"fig-energy-ppp", "ppp-sim", "Monte Carlo energy of Strategies A and B, 30 uniform nodes",
         {{"nodes", "30"}, {"phi", "pi/2"}, {"alpha", "2"}, {"pr", "0.92"}, {"nt", "2"}, {"nr", "2"}, {"rate", "2"},
          {"process", "uniform"}, {"trials", "10000"}, {"sweep", "n:1:5:5:linear"}}},
        {"example-2d", "rand-compare", "2-D example: n = 3, phi = pi/2, 2x2, R = 4",
         {{"n", "3"}, {"phi", "pi/2"}, {"nt", "2"}, {"nr", "2"}, {"alpha", "2"}, {"rate", "4"},
          {"sweep", "pr:0.9:0.9999:151:log"}}},
        {"mc-gaussian-fidelity", "mc-validate", "Empirical vs. Gaussian success probability, 2x2",
         {{"nt", "2"}, {"nr", "2"}, {"mc_rate", "auto"}, {"trials", "1000000"}, {"sweep", "snr:1,5,10,20"}}},
        {"theorem-suite", "theorem", "All limit checks and the f/g and 2-D example computations",
         {{"which", "all"}, {"alpha", "2"}, {"n", "3"}, {"nt", "2"}, {"nr", "2"}, {"rate", "4"}, {"pr", "0.95"}}},
    };
    return all;
}

inline const Preset& find_preset(const std::string& name) {
    for (const auto& p : presets()) {
        if (p.name == name) return p;
    }
    throw ConfigError("unknown preset '" + name + "' (see list-presets)");
}

// ---------------------------------------------------------------------------
// Sweeps

inline bool is_integer_key(const std::string& key) {
    return key == "n" || key == "nt" || key == "nr" || key == "nodes" || key == "trials";
}

/// VAR:MIN:MAX:POINTS:SCALE (scale linear|log|geometric) or VAR:v1,v2,...
/// Integer variables are rounded and deduplicated. A log-scaled pr sweep is
/// log-spaced in eps = 1 - pr and listed in increasing pr.
inline SweepSpec parse_sweep(const std::string& text) {
    const auto fields = detail::split(text, ':');
    if (fields.size() < 2 || fields[0].empty()) throw ConfigError("sweep '" + text + "': expected VAR:...");
    SweepSpec spec{fields[0], {}};
    if (!is_numeric_key(spec.variable)) throw ConfigError("sweep variable '" + spec.variable + "' is not numeric");
    const bool integer = is_integer_key(spec.variable);

    if (fields.size() == 2) {
        for (const auto& v : detail::split(fields[1], ',')) {
            spec.values.push_back(detail::parse_real(spec.variable, v));
        }
    } else if (fields.size() == 5) {
        const double lo = detail::parse_real(spec.variable, fields[1]);
        const double hi = detail::parse_real(spec.variable, fields[2]);
        const auto points = detail::parse_int("points", fields[3]);
        if (points < 1) throw ConfigError("sweep '" + text + "': POINTS must be >= 1");
        if (!(hi >= lo)) throw ConfigError("sweep '" + text + "': MAX must be >= MIN");
        const std::string& scale = fields[4];
        const auto at = [&](std::int64_t i) { return points == 1 ? 0.0 : static_cast<double>(i) / (points - 1); };
        if (scale == "linear") {
            for (std::int64_t i = 0; i < points; ++i) spec.values.push_back(lo + (hi - lo) * at(i));
        } else if (scale == "log" || scale == "geometric") {
            if (spec.variable == "pr") {
                const double e_hi = 1.0 - lo;
                const double e_lo = 1.0 - hi;
                if (!(e_lo > 0.0)) throw ConfigError("sweep '" + text + "': pr must stay below 1");
                for (std::int64_t i = 0; i < points; ++i) {
                    spec.values.push_back(1.0 - e_hi * std::pow(e_lo / e_hi, at(i)));
                }
            } else {
                if (!(lo > 0.0)) throw ConfigError("sweep '" + text + "': log scale needs MIN > 0");
                for (std::int64_t i = 0; i < points; ++i) spec.values.push_back(lo * std::pow(hi / lo, at(i)));
            }
        } else {
            throw ConfigError("sweep '" + text + "': SCALE must be linear|log|geometric");
        }
    } else {
        throw ConfigError("sweep '" + text + "': expected VAR:MIN:MAX:POINTS:SCALE or VAR:v1,v2,...");
    }
    if (spec.values.empty()) throw ConfigError("sweep '" + text + "' has no values");
    if (integer) {
        std::vector<double> rounded;
        for (double v : spec.values) {
            const double r = std::round(v);
            if (rounded.empty() || r != rounded.back()) rounded.push_back(r);
        }
        spec.values = std::move(rounded);
    }
    return spec;
}

/// The string fed to set_key for one sweep value.
inline std::string sweep_value_text(const SweepSpec& spec, double v) {
    if (is_integer_key(spec.variable)) return std::to_string(static_cast<std::int64_t>(v));
    return format_real(v);
}

/// Effective configuration as '# key=value' lines (threads deliberately absent).
inline std::string echo_config(const std::string& command, const ExperimentConfig& c) {
    std::ostringstream out;
    const auto line = [&](const std::string& k, const std::string& v) { out << "# " << k << '=' << v << '\n'; };
    line("command", command);
    line("preset", c.preset.empty() ? "none" : c.preset);
    line("alpha", format_real(c.alpha));
    line("phi", format_real(c.phi));
    line("n", std::to_string(c.n));
    line("d", format_real(c.d));
    line("n0", format_real(c.n0));
    line("nt", std::to_string(c.nt));
    line("nr", std::to_string(c.nr));
    line("rate", format_real(c.rate));
    line("eps", format_real(c.eps));
    line("nodes", std::to_string(c.nodes));
    line("trials", std::to_string(c.trials));
    line("seed", std::to_string(c.seed));
    line("mode", c.mode == InverseMode::exact ? "exact" : "philip");
    line("sweep", c.sweep.empty() ? "none" : c.sweep);
    line("family", c.family.empty() ? "none" : c.family);
    line("anchor", c.anchor == SectorAnchor::per_hop ? "per-hop" : "source");
    line("process", c.process == PointProcess::uniform_count ? "uniform" : "poisson");
    line("intensity", format_real(c.intensity));
    line("distance", format_real(c.distance));
    line("mc_rate", c.mc_rate_auto ? "auto" : "fixed");
    line("which", c.which);
    line("corollary", c.corollary ? "true" : "false");
    return out.str();
}

}  // namespace mimohop::cli
