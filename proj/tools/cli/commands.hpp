#pragma once

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"
#include "mimohop/mimohop.hpp"

namespace mimohop::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kInfeasible = 3, kNumericFailure = 4 };

/// Worst outcome seen while evaluating rows; numeric failure dominates.
class Outcome {
public:
    void note(int code) {
        const auto rank = [](int c) {
            switch (c) {
                case kNumericFailure: return 3;
                case kConfigError: return 2;
                case kInfeasible: return 1;
                default: return 0;
            }
        };
        if (rank(code) > rank(code_)) code_ = code;
    }
    [[nodiscard]] int code() const { return code_; }

private:
    int code_ = kOk;
};

struct RowPoint {
    ExperimentConfig cfg;
    std::vector<std::string> labels;  // family value, sweep value
};

/// Expands family x sweep into concrete configurations.
inline std::vector<RowPoint> expand_points(const ExperimentConfig& base, std::vector<std::string>& label_names) {
    std::vector<RowPoint> rows{{base, {}}};
    const auto cross = [&](const std::string& text) {
        const SweepSpec spec = parse_sweep(text);
        label_names.push_back(spec.variable);
        std::vector<RowPoint> next;
        for (const auto& row : rows) {
            for (double v : spec.values) {
                RowPoint p = row;
                const std::string value = sweep_value_text(spec, v);
                if (spec.variable != "snr") set_key(p.cfg, spec.variable, value);
                p.labels.push_back(value);
                next.push_back(std::move(p));
            }
        }
        rows = std::move(next);
    };
    if (!base.family.empty()) cross(base.family);
    if (!base.sweep.empty()) cross(base.sweep);
    return rows;
}

inline void write_row(std::ostream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
}

/// Runs `fill` for one row; on a library error the row gets `status` and NaN values.
inline std::vector<std::string> guarded_row(const RowPoint& p, std::size_t value_count, Outcome& outcome,
                                            const std::function<std::vector<double>()>& fill) {
    std::vector<std::string> cells = p.labels;
    std::string status = "ok";
    std::vector<double> values;
    try {
        values = fill();
        if (std::any_of(values.begin(), values.end(), [](double v) { return std::isnan(v); })) {
            status = "numeric_failure";
            outcome.note(kNumericFailure);
        }
    } catch (const InfeasibleAtZeroPower&) {
        status = "infeasible";
        outcome.note(kInfeasible);
    } catch (const InvalidGeometry&) {
        status = "invalid_geometry";
        outcome.note(kConfigError);
    } catch (const DomainError&) {
        status = "domain_error";
        outcome.note(kConfigError);
    } catch (const EvalError&) {
        status = "numeric_failure";
        outcome.note(kNumericFailure);
    }
    values.resize(value_count, std::numeric_limits<double>::quiet_NaN());
    cells.push_back(status);
    for (double v : values) cells.push_back(format_real(v));
    return cells;
}

inline std::vector<std::string> header(std::vector<std::string> labels, const std::vector<std::string>& columns) {
    labels.emplace_back("status");
    labels.insert(labels.end(), columns.begin(), columns.end());
    return labels;
}

inline unsigned effective_threads(const ExperimentConfig& c) {
    return c.threads == 0 ? default_thread_count() : c.threads;
}

// ---------------------------------------------------------------------------

inline int run_line_compare(const ExperimentConfig& base, std::ostream& out) {
    std::vector<std::string> labels;
    const auto rows = expand_points(base, labels);
    const std::vector<std::string> columns{"e_s",          "e_m",      "ratio",
                                           "upper_bound",  "philip_ratio", "e_s_mult",
                                           "ratio_mult_to_short"};
    write_row(out, header(labels, columns));
    Outcome outcome;
    for (const auto& p : rows) {
        write_row(out, guarded_row(p, columns.size(), outcome, [&] {
            const auto& c = p.cfg;
            const LineNetworkParams line(c.d, c.alpha, c.n0, c.n);
            const AntennaConfig ant(c.nt, c.nr);
            const OutageTarget target(c.rate, c.eps);
            const auto rb = ratio_short_to_long(line, ant, target, c.mode);
            return std::vector<double>{energy_long_hop(line, ant, target, c.mode),
                                       energy_short_hop(line, ant, target, c.mode),
                                       rb.ratio,
                                       rb.upper_bound,
                                       ratio_short_to_long(line, ant, target, InverseMode::philip).ratio,
                                       energy_multi_transmit_long(line, ant, target, c.mode),
                                       ratio_mult_to_short(line, ant, target, c.mode)};
        }));
    }
    return outcome.code();
}

inline int run_rand_compare(const ExperimentConfig& base, std::ostream& out) {
    std::vector<std::string> labels;
    const auto rows = expand_points(base, labels);
    const std::vector<std::string> columns{"e_b",          "e_a",      "ratio_a_to_b",
                                           "path_efficiency", "philip_ratio", "e_b_mult",
                                           "ratio_mult_b_to_a"};
    write_row(out, header(labels, columns));
    Outcome outcome;
    for (const auto& p : rows) {
        write_row(out, guarded_row(p, columns.size(), outcome, [&] {
            const auto& c = p.cfg;
            const RandomNetworkParams geo(c.alpha, c.phi, c.n);
            const AntennaConfig ant(c.nt, c.nr);
            const OutageTarget target(c.rate, c.eps);
            return std::vector<double>{energy_strategy_b(geo, ant, target, c.mode),
                                       energy_strategy_a(geo, ant, target, c.mode),
                                       ratio_a_to_b(geo, ant, target, c.mode),
                                       checked_path_efficiency(geo),
                                       ratio_a_to_b(geo, ant, target, InverseMode::philip),
                                       energy_multi_transmit_b(geo, ant, target, c.mode),
                                       ratio_mult_b_to_a(geo, ant, target, c.mode)};
        }));
    }
    return outcome.code();
}

inline PppConfig ppp_config(const ExperimentConfig& c) {
    PppConfig p;
    p.node_count = c.nodes;
    p.phi = c.phi;
    p.alpha = c.alpha;
    p.destination_distance = c.distance;
    p.antennas = AntennaConfig(c.nt, c.nr);
    p.rate = c.rate;
    p.failure_prob = c.eps;
    p.n_hops = c.n;
    p.process = c.process;
    p.intensity = c.intensity;
    p.anchor = c.anchor;
    p.mode = c.mode;
    return p;
}

/// Trial 0 of the base configuration as point and route CSVs next to `stem`.
inline void write_ppp_artifacts(const ExperimentConfig& c, const std::string& stem) {
    const PppConfig cfg = ppp_config(c);
    const PointSet set = trial_points(cfg, c.seed, 0);
    const Route a = route_strategy_a(set, cfg.phi, cfg.anchor);
    const Route b = route_strategy_b(a, cfg.n_hops);
    const auto write = [](const std::string& path, const auto& writer) {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw ConfigError("cannot write '" + path + "'");
        writer(f);
    };
    write(stem + ".points.csv", [&](std::ostream& f) { write_points_csv(f, set); });
    write(stem + ".route_a.csv", [&](std::ostream& f) { write_route_csv(f, a); });
    write(stem + ".route_b.csv", [&](std::ostream& f) { write_route_csv(f, b); });
}

inline int run_ppp_sim(const ExperimentConfig& base, std::ostream& out) {
    std::vector<std::string> labels;
    const auto rows = expand_points(base, labels);
    const std::vector<std::string> columns{"mean_e_a",   "se_e_a",      "mean_e_b",    "se_e_b",
                                           "mean_ratio", "se_ratio",    "mean_diff",   "se_diff",
                                           "mean_hops_a", "mean_hops_b", "trials"};
    write_row(out, header(labels, columns));
    Outcome outcome;
    for (const auto& p : rows) {
        write_row(out, guarded_row(p, columns.size(), outcome, [&] {
            const auto& c = p.cfg;
            const auto r = monte_carlo_compare(ppp_config(c), c.trials, c.seed, effective_threads(c));
            std::vector<double> diff(r.samples_a.size());
            for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = r.samples_b[i] - r.samples_a[i];
            const auto d = summarize(diff);
            return std::vector<double>{r.energy_a.mean, r.energy_a.std_error, r.energy_b.mean, r.energy_b.std_error,
                                       r.ratio.mean,    r.ratio.std_error,    d.mean,          d.std_error,
                                       r.hops_a.mean,   r.hops_b.mean,        static_cast<double>(c.trials)};
        }));
    }
    return outcome.code();
}

inline int run_mc_validate(const ExperimentConfig& base, std::ostream& out) {
    std::vector<std::string> labels;
    ExperimentConfig cfg = base;
    if (cfg.sweep.empty()) cfg.sweep = "snr:1,5,10,20";
    if (parse_sweep(cfg.sweep).variable != "snr" && cfg.family.empty()) {
        throw ConfigError("mc-validate sweeps snr (e.g. --sweep snr:1,5,10,20)");
    }
    const auto rows = expand_points(cfg, labels);
    const auto snr_at = std::find(labels.begin(), labels.end(), "snr");
    if (snr_at == labels.end()) throw ConfigError("mc-validate needs an snr sweep or family");
    const auto snr_col = static_cast<std::size_t>(snr_at - labels.begin());
    const std::vector<std::string> columns{"nt",         "nr",      "rate",        "p_empirical", "std_error",
                                           "p_gaussian", "abs_diff", "mi_mean",    "trials"};
    write_row(out, header(labels, columns));
    Outcome outcome;
    for (const auto& p : rows) {
        write_row(out, guarded_row(p, columns.size(), outcome, [&] {
            const auto& c = p.cfg;
            const Snr snr(detail::parse_real("snr", p.labels[snr_col]));
            const AntennaConfig ant(c.nt, c.nr);
            const unsigned threads = effective_threads(c);
            const std::int64_t pilot_trials = std::max<std::int64_t>(10000, c.trials / 10);
            const auto pilot = mutual_information_moments(snr, ant, pilot_trials, c.seed ^ 0xa5a5a5a5a5a5a5a5ULL,
                                                          threads);
            const double rate = c.mc_rate_auto ? pilot.mean : c.rate;
            const auto est = empirical_success_prob(snr, rate, ant, c.trials, c.seed, threads);
            const double gauss = gaussian_success_prob(snr, rate, ant).value();
            return std::vector<double>{static_cast<double>(c.nt), static_cast<double>(c.nr), rate,
                                       est.prob.value(), est.std_error, gauss,
                                       std::abs(est.prob.value() - gauss), pilot.mean,
                                       static_cast<double>(c.trials)};
        }));
    }
    return outcome.code();
}

inline std::vector<TrendReport> theorem_reports(const ExperimentConfig& c) {
    const std::string& w = c.which;
    const bool all = w == "all";
    if (!all && w != "1" && w != "2" && w != "3" && w != "4" && w != "b" && w != "c" && w != "decomp") {
        throw ConfigError("which: expected 1|2|3|4|b|c|decomp|all, got '" + w + "'");
    }
    const AntennaConfig ant(c.nt, c.nr);
    std::optional<double> phi;
    if (c.corollary) phi = c.phi;
    std::vector<TrendReport> reports;
    if (all || w == "1") {
        Theorem1Options o;
        o.alpha = c.alpha;
        o.failure_prob = c.eps;
        o.antennas = ant;
        o.rate = c.rate;
        o.mode = c.mode;
        o.phi = phi;
        reports.push_back(check_theorem1(o));
    }
    if (all || w == "decomp") reports.push_back(check_decomposition(c.eps, ant));
    if (all || w == "2") {
        Theorem2Options o;
        o.alpha = c.alpha;
        o.n = c.n;
        o.antennas = ant;
        o.rate = c.rate;
        o.mode = c.mode;
        o.phi = phi;
        reports.push_back(check_theorem2(o));
    }
    if (all || w == "3") {
        for (auto axis : {AntennaSweep::both, AntennaSweep::transmit, AntennaSweep::receive}) {
            Theorem3Options o;
            o.alpha = c.alpha;
            o.n = c.n;
            o.rate = c.rate;
            o.failure_prob = c.eps;
            o.axis = axis;
            o.fixed_count = axis == AntennaSweep::transmit ? c.nr : c.nt;
            o.mode = c.mode;
            o.phi = phi;
            reports.push_back(check_theorem3(o));
        }
    }
    if (all || w == "4") {
        Theorem4Options o;
        o.alpha = c.alpha;
        o.n = c.n;
        o.antennas = ant;
        o.rate = c.rate;
        o.mode = c.mode;
        o.phi = phi;
        reports.push_back(check_theorem4(o));
    }
    if (all || w == "b") reports.push_back(check_appendix_b());
    if (all || w == "c") {
        AppendixCOptions o;
        o.rate = c.rate;
        o.antennas = ant;
        reports.push_back(appendix_c_check(o));
    }
    return reports;
}

inline int run_theorem(const ExperimentConfig& c, std::ostream& out) {
    const auto reports = theorem_reports(c);
    for (const auto& r : reports) {
        std::istringstream summary(summarize_report(r));
        for (std::string line; std::getline(summary, line);) out << "# " << line << '\n';
    }
    out << "report,sweep_variable,grid,series,value\n";
    for (const auto& r : reports) write_report_rows(out, r);
    return kOk;
}

inline int run_list_presets(std::ostream& out) {
    out << "name,command,description\n";
    for (const auto& p : presets()) out << p.name << ',' << p.command << ",\"" << p.description << "\"\n";
    return kOk;
}

}  // namespace mimohop::cli
