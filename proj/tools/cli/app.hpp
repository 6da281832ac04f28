#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "config.hpp"

namespace mimohop::cli {

inline const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"line-compare", "rand-compare", "ppp-sim",
                                                "mc-validate",  "theorem",      "list-presets"};
    return names;
}

/// Flags that map one-to-one onto configuration keys.
inline const std::vector<std::pair<std::string, std::string>>& key_flags() {
    static const std::vector<std::pair<std::string, std::string>> flags{
        {"alpha", "path-loss exponent"},
        {"phi", "sector angle in radians (accepts pi/k)"},
        {"n", "number of short hops"},
        {"d", "short-hop distance"},
        {"n0", "noise power spectral density"},
        {"nt", "transmit antennas"},
        {"nr", "receive antennas"},
        {"rate", "target rate R (bit/s/Hz)"},
        {"pr", "end-to-end success probability"},
        {"eps", "end-to-end failure probability (1 - pr)"},
        {"nodes", "node count (expected count for poisson)"},
        {"trials", "Monte Carlo trials"},
        {"seed", "master RNG seed"},
        {"mode", "erfc inverse: exact|philip"},
        {"sweep", "VAR:MIN:MAX:POINTS:SCALE or VAR:v1,v2,..."},
        {"family", "VAR:v1,v2,... (one curve per value)"},
        {"anchor", "sector anchor for strategy A: per-hop|source"},
        {"process", "node process: uniform|poisson"},
        {"intensity", "poisson intensity"},
        {"distance", "source-destination distance (0: from node count)"},
        {"mc_rate", "mc-validate rate: auto (pilot mean) or fixed (--rate)"},
        {"which", "theorem: 1|2|3|4|b|c|decomp|all"},
        {"corollary", "theorem: also evaluate the 2-D ratios"},
        {"threads", "worker threads (0: hardware concurrency)"},
    };
    return flags;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Energy of short-hop vs. long-hop MIMO routing under outage constraints", "mimohop"};
    app.set_version_flag("--version", "mimohop 1.0.0");
    std::string command;
    std::string preset;
    std::string config_path;
    std::string out_path;
    app.add_option("command", command, "line-compare | rand-compare | ppp-sim | mc-validate | theorem | list-presets")
        ->check(CLI::IsMember(command_names()));
    app.add_option("--preset", preset, "named parameter set (see list-presets)");
    app.add_option("--config", config_path, "key=value file");
    app.add_option("--out", out_path, "output CSV path (default: stdout)");
    std::map<std::string, std::string> flag_values;
    for (const auto& [key, help] : key_flags()) app.add_option("--" + key, flag_values[key], help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        std::vector<std::pair<std::string, std::string>> file_entries;
        if (!config_path.empty()) file_entries = read_config_file(config_path);
        if (preset.empty()) {
            for (const auto& [k, v] : file_entries) {
                if (k == "preset") preset = v;
            }
        }

        ExperimentConfig cfg;
        if (!preset.empty()) {
            const Preset& p = find_preset(preset);
            cfg.preset = p.name;
            for (const auto& [k, v] : p.settings) set_key(cfg, k, v);
            if (command.empty()) command = p.command;
        }
        for (const auto& [k, v] : file_entries) {
            if (k != "preset") set_key(cfg, k, v);
        }
        for (const auto& [key, help] : key_flags()) {
            if (app.count("--" + key) > 0) set_key(cfg, key, flag_values[key]);
        }
        if (command.empty()) throw ConfigError("no command given (try --help)");
        if (command == "list-presets") return run_list_presets(out);

        std::ostringstream body;
        body << echo_config(command, cfg);
        int code = kOk;
        if (command == "line-compare") code = run_line_compare(cfg, body);
        else if (command == "rand-compare") code = run_rand_compare(cfg, body);
        else if (command == "ppp-sim") code = run_ppp_sim(cfg, body);
        else if (command == "mc-validate") code = run_mc_validate(cfg, body);
        else if (command == "theorem") code = run_theorem(cfg, body);

        if (out_path.empty()) {
            out << body.str();
        } else {
            std::ofstream file(out_path, std::ios::binary);
            if (!file) throw ConfigError("cannot write '" + out_path + "'");
            file << body.str();
            if (command == "ppp-sim") write_ppp_artifacts(cfg, out_path);
        }
        if (code == kInfeasible) err << "warning: some rows are infeasible at any finite power\n";
        if (code == kConfigError) err << "warning: some rows have invalid parameters\n";
        if (code == kNumericFailure) err << "error: numeric failure in some rows\n";
        return code;
    } catch (const InfeasibleAtZeroPower& e) {
        err << "infeasible: " << e.what() << '\n';
        return kInfeasible;
    } catch (const EvalError& e) {
        err << "numeric failure: " << e.what() << '\n';
        return kNumericFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }
}

}  // namespace mimohop::cli
