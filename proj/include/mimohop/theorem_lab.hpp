#pragma once

// Numerical checks of the limit results: finite trend scans with explicit
// thresholds, the f/g/g' approximation chain and the 2-D example bounds.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mimohop/csv.hpp"
#include "mimohop/errors.hpp"
#include "mimohop/line_network.hpp"
#include "mimohop/outage.hpp"
#include "mimohop/random_network.hpp"
#include "mimohop/special_fn.hpp"

namespace mimohop {

enum class Verdict { confirmed, violated };

inline const char* to_string(Verdict v) { return v == Verdict::confirmed ? "confirmed" : "violated"; }

struct TrendCheck {
    std::string name;
    bool passed = false;
    std::string detail;
    std::optional<double> witness;  // grid point where the check fails
};

struct Series {
    std::string name;
    std::vector<double> values;
};

struct TrendReport {
    std::string title;
    std::string sweep_variable;
    std::vector<double> grid;
    std::string value_name = "value";
    std::vector<double> values;
    std::vector<Series> extra;
    std::vector<TrendCheck> checks;
    Verdict verdict = Verdict::violated;
    std::optional<double> witness;  // first violating grid point, if any

    void add_check(TrendCheck check) { checks.push_back(std::move(check)); }

    /// Sets verdict and witness from the checks.
    void finalize() {
        verdict = Verdict::confirmed;
        witness.reset();
        for (const auto& c : checks) {
            if (!c.passed) {
                verdict = Verdict::violated;
                if (!witness && c.witness) witness = c.witness;
            }
        }
        if (verdict == Verdict::violated && !witness && !grid.empty()) witness = grid.back();
    }

    [[nodiscard]] const Series* find(const std::string& name) const {
        for (const auto& s : extra) {
            if (s.name == name) return &s;
        }
        return nullptr;
    }
};

inline constexpr std::size_t kTailLength = 8;

namespace detail {

inline std::string fmt(double v) { return format_real(v); }

// Strictly decreasing (or increasing) over the last `tail` points.
inline TrendCheck tail_monotone(const std::vector<double>& grid, const std::vector<double>& values,
                                const std::string& what, bool decreasing, std::size_t tail = kTailLength) {
    TrendCheck check{what + (decreasing ? " strictly decreasing" : " strictly increasing") + " over last " +
                         std::to_string(tail) + " grid points",
                     true, "", std::nullopt};
    if (values.size() < tail) {
        check.passed = false;
        check.detail = "grid shorter than the tail length";
        return check;
    }
    for (std::size_t i = values.size() - tail + 1; i < values.size(); ++i) {
        const bool ok = decreasing ? values[i] < values[i - 1] : values[i] > values[i - 1];
        if (!ok) {
            check.passed = false;
            check.witness = grid[i];
            check.detail = "breaks at " + fmt(grid[i]) + ": " + fmt(values[i - 1]) + " -> " + fmt(values[i]);
            return check;
        }
    }
    return check;
}

inline TrendCheck less_than(const std::string& name, double value, double bound, double at) {
    TrendCheck check{name, value < bound, fmt(value) + " vs " + fmt(bound), std::nullopt};
    if (!check.passed) check.witness = at;
    return check;
}

// Every entry of `lhs` below the matching entry of `rhs`.
inline TrendCheck all_below(const std::string& name, const std::vector<double>& grid,
                            const std::vector<double>& lhs, const std::vector<double>& rhs) {
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        if (!(lhs[i] < rhs[i])) {
            return {name, false, "fails at " + fmt(grid[i]) + ": " + fmt(lhs[i]) + " >= " + fmt(rhs[i]), grid[i]};
        }
    }
    return {name, true, "holds on all " + std::to_string(lhs.size()) + " grid points", std::nullopt};
}

inline TrendCheck all_below(const std::string& name, const std::vector<double>& grid,
                            const std::vector<double>& lhs, double bound) {
    return all_below(name, grid, lhs, std::vector<double>(lhs.size(), bound));
}

inline void require_grid(const std::vector<double>& grid, bool increasing, const char* what) {
    if (grid.size() < kTailLength) {
        throw ConfigError(std::string(what) + " grid needs at least " + std::to_string(kTailLength) + " points");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const bool ok = increasing ? grid[i] > grid[i - 1] : grid[i] < grid[i - 1];
        if (!ok) {
            throw ConfigError(std::string(what) + (increasing ? " grid must be strictly increasing"
                                                              : " grid must be strictly decreasing"));
        }
    }
}

inline LineNetworkParams unit_line(int n, double alpha) { return LineNetworkParams(1.0, alpha, 1.0, n); }

}  // namespace detail

/// Integers from lo to hi, `per_octave` geometric steps per doubling, deduplicated.
inline std::vector<double> geometric_int_grid(int lo, int hi, int per_octave = 4) {
    std::vector<double> grid;
    const double steps = std::log2(static_cast<double>(hi) / lo) * per_octave;
    const int count = static_cast<int>(std::lround(steps));
    for (int i = 0; i <= count; ++i) {
        const double v = std::round(lo * std::exp2(static_cast<double>(i) / per_octave));
        if (grid.empty() || v > grid.back()) grid.push_back(v);
    }
    if (grid.back() != hi) grid.push_back(hi);
    return grid;
}

/// Log-spaced values from `from` down to `to` (from > to > 0), `per_decade` per decade.
inline std::vector<double> log_grid_descending(double from, double to, int per_decade) {
    std::vector<double> grid;
    const double decades = std::log10(from / to);
    const int count = static_cast<int>(std::lround(decades * per_decade));
    for (int i = 0; i <= count; ++i) {
        grid.push_back(from * std::pow(10.0, -static_cast<double>(i) / per_decade));
    }
    return grid;
}

// ---------------------------------------------------------------------------
// E_m/E_s -> 0 as n grows (and E_A/E_B in the sector).

struct Theorem1Options {
    double alpha = 2.0;
    double failure_prob = 0.05;
    AntennaConfig antennas{2, 2};
    double rate = 4.0;
    std::vector<double> n_grid = geometric_int_grid(2, 512);
    double threshold = 0.01;
    InverseMode mode = InverseMode::exact;
    std::optional<double> phi;  // set to also evaluate the 2-D ratio
};

inline TrendReport check_theorem1(const Theorem1Options& o) {
    if (!(o.alpha > 1.0)) throw ConfigError("check_theorem1 requires alpha > 1");
    if (!(o.failure_prob > 0.0 && o.failure_prob < 0.1)) {
        throw ConfigError("check_theorem1 requires p_r in (0.9, 1)");
    }
    detail::require_grid(o.n_grid, true, "n");
    if (o.phi && !(o.alpha * *o.phi * *o.phi < 24.0)) {
        throw PreconditionError("check_theorem1 with phi requires alpha * phi^2 < 24");
    }
    const OutageTarget target(o.rate, o.failure_prob);

    TrendReport r;
    r.title = "theorem1";
    r.sweep_variable = "n";
    r.value_name = "ratio_short_to_long";
    r.grid = o.n_grid;
    Series bound{"upper_bound", {}};
    Series corollary{"ratio_a_to_b", {}};
    for (double n : o.n_grid) {
        const int hops = static_cast<int>(n);
        const auto rb = ratio_short_to_long(detail::unit_line(hops, o.alpha), o.antennas, target, o.mode);
        r.values.push_back(rb.ratio);
        bound.values.push_back(rb.upper_bound);
        if (o.phi) {
            corollary.values.push_back(
                ratio_a_to_b(RandomNetworkParams(o.alpha, *o.phi, hops), o.antennas, target, o.mode));
        }
    }
    r.add_check(detail::tail_monotone(r.grid, r.values, "E_m/E_s", true));
    r.add_check(detail::less_than("E_m/E_s at largest n below threshold", r.values.back(), o.threshold,
                                  r.grid.back()));
    r.extra.push_back(std::move(bound));
    if (o.phi) {
        const double divisor = 1.0 / (1.0 - o.alpha * *o.phi * *o.phi / 24.0);
        r.add_check({"limiting efficiency divisor 1/(1 - a*phi^2/24) finite", std::isfinite(divisor) && divisor > 0,
                     "divisor = " + detail::fmt(divisor), std::nullopt});
        r.add_check(detail::tail_monotone(r.grid, corollary.values, "E_A/E_B", true));
        r.add_check(detail::less_than("E_A/E_B at largest n below threshold", corollary.values.back(),
                                      o.threshold, r.grid.back()));
        r.extra.push_back(std::move(corollary));
    }
    r.finalize();
    return r;
}

// ---------------------------------------------------------------------------
// Philip-approximated offset differences.

/// f_1(n, p_r) = c (phi(2 eps_hop) - phi(2 eps)) + 1 with phi the Philip form:
/// the approximated k_m - k_s + 1.
inline double philip_f1(int n, double eps, const AntennaConfig& ant) {
    const double eps_hop = per_hop_failure_short(eps, n);
    return outage_coefficient(ant) * (erfc_inv_philip(2.0 * eps_hop) - erfc_inv_philip(2.0 * eps)) + 1.0;
}

/// f_4(n, p_r) = c (phi(2 eps^(1/n)) - phi(2 eps_hop)): the approximated k_s,mult - k_m.
inline double philip_f4(int n, double eps, const AntennaConfig& ant) {
    const double eps_slot = per_slot_failure_multi(eps, n);
    const double eps_hop = per_hop_failure_short(eps, n);
    return outage_coefficient(ant) * (erfc_inv_philip(2.0 * eps_slot) - erfc_inv_philip(2.0 * eps_hop));
}

/// a(n) = b(n) + c(n): the exact scaled erfc^-1 term of k_m, its Philip value,
/// and the remainder.
struct PhilipDecomposition {
    double a;
    double b;
    double c;
};

inline PhilipDecomposition philip_decomposition(int n, double eps, const AntennaConfig& ant) {
    const double x = 2.0 * per_hop_failure_short(eps, n);
    const double coef = outage_coefficient(ant);
    const double a = coef * erfc_inv(x);
    const double b = coef * erfc_inv_philip(x);
    return {a, b, a - b};
}

/// |c(n)| over an n grid; confirms it shrinks and ends below `threshold`.
inline TrendReport check_decomposition(double eps = 0.05, const AntennaConfig& ant = {2, 2},
                                       const std::vector<double>& n_grid = geometric_int_grid(2, 512),
                                       double threshold = 0.05) {
    detail::require_grid(n_grid, true, "n");
    TrendReport r;
    r.title = "philip_decomposition";
    r.sweep_variable = "n";
    r.value_name = "abs_c";
    r.grid = n_grid;
    Series a{"a", {}};
    Series b{"b", {}};
    for (double n : n_grid) {
        const auto d = philip_decomposition(static_cast<int>(n), eps, ant);
        a.values.push_back(d.a);
        b.values.push_back(d.b);
        r.values.push_back(std::abs(d.c));
    }
    r.add_check(detail::tail_monotone(r.grid, r.values, "|c(n)|", true));
    r.add_check(detail::less_than("|c(n)| at largest n below threshold", r.values.back(), threshold, r.grid.back()));
    r.extra.push_back(std::move(a));
    r.extra.push_back(std::move(b));
    r.finalize();
    return r;
}

// ---------------------------------------------------------------------------
// lim_{p_r -> 1} E_m/E_s < 1 when n^(1-alpha) < 1/2.

struct Theorem2Options {
    double alpha = 2.0;
    int n = 3;
    AntennaConfig antennas{2, 2};
    double rate = 4.0;
    std::vector<double> eps_grid = log_grid_descending(1e-1, 1e-12, 4);
    InverseMode mode = InverseMode::exact;
    std::optional<double> phi;
};

inline TrendReport check_theorem2(const Theorem2Options& o) {
    if (!(o.alpha > 1.0) || o.n < 1) throw ConfigError("check_theorem2 requires alpha > 1 and n >= 1");
    detail::require_grid(o.eps_grid, false, "eps");
    const double scale = std::pow(o.n, 1.0 - o.alpha);
    if (!(scale < 0.5)) {
        throw PreconditionError("check_theorem2 requires n^(1-alpha) < 1/2, got " + detail::fmt(scale));
    }
    double eff = 1.0;
    if (o.phi) {
        eff = checked_path_efficiency(RandomNetworkParams(o.alpha, *o.phi, o.n));
        if (!(scale / eff < 0.5)) {
            throw PreconditionError("check_theorem2 with phi requires n^(1-alpha)/(1 - a*phi^2*(n-1)/(24n)) < 1/2");
        }
    }
    TrendReport r;
    r.title = "theorem2";
    r.sweep_variable = "eps";
    r.value_name = "ratio_short_to_long";
    r.grid = o.eps_grid;
    Series bound{"upper_bound", {}};
    Series f1{"f1", {}};
    Series f2{"f2", {}};
    Series corollary{"ratio_a_to_b", {}};
    Series g2{"g2", {}};
    const auto line = detail::unit_line(o.n, o.alpha);
    for (double eps : o.eps_grid) {
        const OutageTarget target(o.rate, eps);
        const auto rb = ratio_short_to_long(line, o.antennas, target, o.mode);
        r.values.push_back(rb.ratio);
        bound.values.push_back(rb.upper_bound);
        const double f = philip_f1(o.n, eps, o.antennas);
        f1.values.push_back(f);
        f2.values.push_back(scale * std::exp2(f));
        if (o.phi) {
            corollary.values.push_back(
                ratio_a_to_b(RandomNetworkParams(o.alpha, *o.phi, o.n), o.antennas, target, o.mode));
            g2.values.push_back(scale * std::exp2(f) / eff);
        }
    }
    const double limit = 2.0 * scale;
    r.add_check(detail::less_than("E_m/E_s below 1 at smallest eps", r.values.back(), 1.0, r.grid.back()));
    r.add_check(detail::all_below("E_m/E_s below exact bound n^(1-a) 2^(k_m-k_s+1)", r.grid, r.values, bound.values));
    r.add_check(detail::tail_monotone(r.grid, f2.values, "f_2", true));
    r.add_check(detail::less_than("f_2 approaches its limit 2 n^(1-a) from above", limit, f2.values.back(),
                                  r.grid.back()));
    r.extra.push_back(std::move(bound));
    r.extra.push_back(std::move(f1));
    r.extra.push_back(std::move(f2));
    if (o.phi) {
        r.add_check(detail::less_than("E_A/E_B below 1 at smallest eps", corollary.values.back(), 1.0,
                                      r.grid.back()));
        r.add_check(detail::tail_monotone(r.grid, g2.values, "g_2", true));
        r.extra.push_back(std::move(corollary));
        r.extra.push_back(std::move(g2));
    }
    r.finalize();
    return r;
}

// ---------------------------------------------------------------------------
// E_m/E_s for growing antenna arrays.

enum class AntennaSweep { transmit, receive, both };

inline const char* to_string(AntennaSweep a) {
    switch (a) {
        case AntennaSweep::transmit: return "nt";
        case AntennaSweep::receive: return "nr";
        case AntennaSweep::both: return "nt_nr";
    }
    return "?";
}

struct Theorem3Options {
    double alpha = 2.0;
    int n = 3;
    double rate = 4.0;
    double failure_prob = 0.05;
    std::vector<double> antenna_grid = geometric_int_grid(1, 256, 2);
    AntennaSweep axis = AntennaSweep::both;
    int fixed_count = 2;  // antennas on the side that is not swept
    std::optional<double> threshold;  // default: 2 n^(1-alpha), the proven limit bound
    InverseMode mode = InverseMode::exact;
    std::optional<double> phi;
};

inline AntennaConfig antennas_for(AntennaSweep axis, int swept, int fixed) {
    switch (axis) {
        case AntennaSweep::transmit: return {swept, fixed};
        case AntennaSweep::receive: return {fixed, swept};
        case AntennaSweep::both: return {swept, swept};
    }
    return {swept, swept};
}

inline TrendReport check_theorem3(const Theorem3Options& o) {
    if (!(o.alpha > 1.0) || o.n < 1) throw ConfigError("check_theorem3 requires alpha > 1 and n >= 1");
    detail::require_grid(o.antenna_grid, true, "antenna");
    const double scale = std::pow(o.n, 1.0 - o.alpha);
    if (!(2.0 * scale < 1.0)) {
        throw PreconditionError("check_theorem3 requires 2 n^(1-alpha) < 1, got " + detail::fmt(2.0 * scale));
    }
    double eff = 1.0;
    if (o.phi) {
        eff = checked_path_efficiency(RandomNetworkParams(o.alpha, *o.phi, o.n));
        if (!(2.0 * scale / eff < 1.0)) {
            throw PreconditionError("check_theorem3 with phi requires 2 n^(1-alpha)/(1 - a*phi^2*(n-1)/(24n)) < 1");
        }
    }
    const double threshold = o.threshold.value_or(2.0 * scale);
    const OutageTarget target(o.rate, o.failure_prob);
    const auto line = detail::unit_line(o.n, o.alpha);

    TrendReport r;
    r.title = std::string("theorem3_") + to_string(o.axis);
    r.sweep_variable = to_string(o.axis);
    r.value_name = "ratio_short_to_long";
    r.grid = o.antenna_grid;
    Series bound{"upper_bound", {}};
    Series k_gap{"k_m_minus_k_s", {}};
    Series corollary{"ratio_a_to_b", {}};
    for (double count : o.antenna_grid) {
        const AntennaConfig ant = antennas_for(o.axis, static_cast<int>(count), o.fixed_count);
        const auto rb = ratio_short_to_long(line, ant, target, o.mode);
        const auto k = line_offsets(o.n, ant, target, o.mode);
        r.values.push_back(rb.ratio);
        bound.values.push_back(rb.upper_bound);
        k_gap.values.push_back(k.k_short - k.k_long);
        if (o.phi) {
            corollary.values.push_back(ratio_a_to_b(RandomNetworkParams(o.alpha, *o.phi, o.n), ant, target, o.mode));
        }
    }
    r.add_check(detail::tail_monotone(r.grid, r.values, "E_m/E_s", true));
    r.add_check(detail::less_than("E_m/E_s at largest array below threshold", r.values.back(), threshold,
                                  r.grid.back()));
    r.add_check(detail::less_than("bound n^(1-a) 2^(k_m-k_s+1) at largest array below 1", bound.values.back(), 1.0,
                                  r.grid.back()));
    r.extra.push_back(std::move(bound));
    r.extra.push_back(std::move(k_gap));
    if (o.phi) {
        r.add_check(detail::tail_monotone(r.grid, corollary.values, "E_A/E_B", true));
        r.extra.push_back(std::move(corollary));
    }
    r.finalize();
    return r;
}

// ---------------------------------------------------------------------------
// Multi-transmit long hop vs short hops as p_r -> 1.

struct Theorem4Options {
    double alpha = 2.0;
    int n = 2;
    AntennaConfig antennas{2, 2};
    double rate = 4.0;
    std::vector<double> eps_grid = log_grid_descending(1e-1, 1e-300, 2);
    InverseMode mode = InverseMode::exact;
    std::optional<double> phi;
};

/// n^alpha 2^(f_4): the Philip-approximated multi-transmit to short-hop ratio.
inline double philip_mult_ratio(int n, double alpha, double eps, const AntennaConfig& ant) {
    return std::pow(n, alpha) * std::exp2(philip_f4(n, eps, ant));
}

inline TrendReport check_theorem4(const Theorem4Options& o) {
    if (!(o.alpha > 1.0) || o.n < 1) throw ConfigError("check_theorem4 requires alpha > 1 and n >= 1");
    detail::require_grid(o.eps_grid, false, "eps");
    const auto line = detail::unit_line(o.n, o.alpha);

    TrendReport r;
    r.title = "theorem4";
    r.sweep_variable = "eps";
    r.grid = o.eps_grid;
    Series exact{"ratio_mult_to_short", {}};
    Series approx{"philip_ratio", {}};
    Series f4{"f4", {}};
    Series corollary{"ratio_mult_b_to_a", {}};
    for (double eps : o.eps_grid) {
        const OutageTarget target(o.rate, eps);
        exact.values.push_back(ratio_mult_to_short(line, o.antennas, target, InverseMode::exact));
        approx.values.push_back(philip_mult_ratio(o.n, o.alpha, eps, o.antennas));
        f4.values.push_back(philip_f4(o.n, eps, o.antennas));
        if (o.phi) {
            corollary.values.push_back(
                ratio_mult_b_to_a(RandomNetworkParams(o.alpha, *o.phi, o.n), o.antennas, target, o.mode));
        }
    }
    const bool exact_mode = o.mode == InverseMode::exact;
    r.value_name = exact_mode ? exact.name : approx.name;
    r.values = exact_mode ? exact.values : approx.values;

    std::vector<double> log_ratio;
    for (double v : r.values) log_ratio.push_back(std::log2(v));
    r.add_check(detail::tail_monotone(r.grid, log_ratio, "log2 ratio", true));

    const auto crossing = std::find_if(r.values.begin(), r.values.end(), [](double v) { return v < 1.0; });
    TrendCheck cross{"ratio crosses below 1", crossing != r.values.end(), "", std::nullopt};
    if (cross.passed) {
        cross.detail = "first below 1 at eps = " + detail::fmt(r.grid[static_cast<std::size_t>(crossing - r.values.begin())]);
    } else {
        cross.detail = "never below 1 on the grid";
        cross.witness = r.grid.back();
    }
    r.add_check(cross);
    r.add_check(detail::less_than("ratio below 1 at smallest eps", r.values.back(), 1.0, r.grid.back()));
    r.add_check(detail::less_than("f_4 negative at smallest eps", f4.values.back(), 0.0, r.grid.back()));
    if (r.grid.back() < detail::kErfcUnderflowArgument) {
        r.add_check({"note: eps below 1e-280 uses the Philip asymptotic branch of erfc^-1", true,
                     "beyond double-precision erfc range", std::nullopt});
    }
    r.extra.push_back(exact_mode ? std::move(approx) : std::move(exact));
    r.extra.push_back(std::move(f4));
    if (o.phi) {
        r.add_check(detail::less_than("E_B,mult/E_A below 1 at smallest eps", corollary.values.back(), 1.0,
                                      r.grid.back()));
        r.extra.push_back(std::move(corollary));
    }
    r.finalize();
    return r;
}

// ---------------------------------------------------------------------------
// f(p_r) = k_m - k_s + 1 on (0.9, 1) and its approximation chain g, g'.

inline constexpr int kAppendixSeriesTerms = 10000;

namespace detail {

inline void require_appendix_range(double p_r) {
    if (!(p_r > 0.9 && p_r < 1.0)) throw DomainError("p_r must lie in (0.9, 1)");
}

// Neumaier-compensated sum of q^k (or q^k / k) for k = first..terms, largest terms first.
inline double power_series(double q, int first, int terms, bool divide_by_k) {
    double sum = 0.0;
    double comp = 0.0;
    double power = std::pow(q, first);
    for (int k = first; k <= terms; ++k) {
        const double term = divide_by_k ? power / k : power;
        const double t = sum + term;
        comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
        sum = t;
        power *= q;
    }
    return sum + comp;
}

}  // namespace detail

/// f(p_r) = k_m - k_s + 1 from the exact erfc^-1 (defaults n = 3, 2x2).
inline double appendix_b_f(double p_r, int n = 3, const AntennaConfig& ant = {2, 2},
                           InverseMode mode = InverseMode::exact) {
    detail::require_appendix_range(p_r);
    const double eps = 1.0 - p_r;
    return outage_coefficient(ant) *
               (erfc_inv(2.0 * per_hop_failure_short(eps, n), mode) - erfc_inv(2.0 * eps, mode)) +
           1.0;
}

/// g(p_r): step (d) of the chain (Philip form, 10^4-term series for -ln(1-x),
/// first-order log expansions), with the rounded coefficient 1.02.
inline double appendix_b_g(double p_r) {
    detail::require_appendix_range(p_r);
    const double base = -std::log(2.0 * std::sqrt(std::numbers::pi));
    const auto branch = [&](double q) {
        const double series = detail::power_series(q, 1, kAppendixSeriesTerms, true);
        return 1.02 * std::sqrt(base + series - 0.5 * (-1.0 - std::numbers::ln2 + q));
    };
    return branch(std::cbrt(p_r)) - branch(p_r) + 1.0;
}

/// g'(p_r), with the rounded constant 0.51 (= 1.02 / 2).
inline double appendix_b_gprime(double p_r) {
    detail::require_appendix_range(p_r);
    const double base = -0.5 * std::log(2.0 * std::numbers::pi);
    const double q = std::cbrt(p_r);
    // sum_{k>=2} p^(k/3 - 1) = (sum_{k>=2} q^k) / p
    const double num1 = (1.0 / 6.0) / (q * q) + (1.0 / 3.0) * detail::power_series(q, 2, kAppendixSeriesTerms, false) / p_r;
    const double den1 = std::sqrt(base + 0.5 * (1.0 + q) + detail::power_series(q, 2, kAppendixSeriesTerms, true));
    const double num2 = 0.5 + detail::power_series(p_r, 2, kAppendixSeriesTerms, false) / p_r;
    const double den2 = std::sqrt(base + 0.5 * (1.0 + p_r) + detail::power_series(p_r, 2, kAppendixSeriesTerms, true));
    return 0.51 * num1 / den1 - 0.51 * num2 / den2;
}

/// Uniform interior grid of `points` values in (lo, hi).
inline std::vector<double> open_linear_grid(double lo, double hi, int points) {
    std::vector<double> grid;
    for (int i = 1; i <= points; ++i) {
        grid.push_back(lo + (hi - lo) * i / (points + 1.0));
    }
    return grid;
}

/// g' < 0 on the grid, f(0.9) < log2 3 (evaluated at the left end of the
/// open interval), and the f - g gap per grid point.
inline TrendReport check_appendix_b(const std::vector<double>& pr_grid = open_linear_grid(0.9, 1.0, 1000)) {
    detail::require_grid(pr_grid, true, "p_r");
    TrendReport r;
    r.title = "appendix_b";
    r.sweep_variable = "pr";
    r.value_name = "gprime";
    r.grid = pr_grid;
    Series f{"f", {}};
    Series g{"g", {}};
    Series gap{"abs_f_minus_g", {}};
    for (double p : pr_grid) {
        r.values.push_back(appendix_b_gprime(p));
        f.values.push_back(appendix_b_f(p));
        g.values.push_back(appendix_b_g(p));
        gap.values.push_back(std::abs(f.values.back() - g.values.back()));
    }
    r.add_check(detail::all_below("g'(p_r) < 0", r.grid, r.values, 0.0));
    // f is continuous at 0.9 even though the interval is open.
    const double eps = 0.1;
    const double f09 = outage_coefficient({2, 2}) * (erfc_inv(2.0 * per_hop_failure_short(eps, 3)) - erfc_inv(2.0 * eps)) + 1.0;
    r.add_check(detail::less_than("f(0.9) < log2(3)", f09, std::log2(3.0), 0.9));
    r.add_check(detail::all_below("f(p_r) < log2(3)", r.grid, f.values, std::log2(3.0)));
    r.add_check(detail::tail_monotone(r.grid, f.values, "f", true));
    r.extra.push_back(std::move(f));
    r.extra.push_back(std::move(g));
    r.extra.push_back(std::move(gap));
    r.finalize();
    return r;
}

// ---------------------------------------------------------------------------
// The 2-D example: alpha = 2, phi = pi/2, n = 3.

/// (1/n) 48n / ((48 - pi^2) n + pi^2): n^(1-alpha) / path-efficiency at alpha = 2, phi = pi/2.
inline double appendix_c_prefactor(int n = 3) {
    const double pi2 = std::numbers::pi * std::numbers::pi;
    return (1.0 / n) * 48.0 * n / ((48.0 - pi2) * n + pi2);
}

struct AppendixCOptions {
    double rate = 4.0;
    AntennaConfig antennas{2, 2};
    std::vector<double> eps_grid = log_grid_descending(1e-1, 1e-6, 10);
};

inline TrendReport appendix_c_check(const AppendixCOptions& o = {}) {
    detail::require_grid(o.eps_grid, false, "eps");
    constexpr int n = 3;
    const double prefactor = appendix_c_prefactor(n);
    const RandomNetworkParams geometry(2.0, std::numbers::pi / 2.0, n);

    TrendReport r;
    r.title = "appendix_c";
    r.sweep_variable = "eps";
    r.value_name = "gain_over_gain_minus_one";  // 2^k_s / (2^k_s - 1)
    r.grid = o.eps_grid;
    Series ratio{"ratio_a_to_b", {}};
    Series chain{"chain_bound", {}};  // (2/3) 2^(k_m - k_s + 1)
    for (double eps : o.eps_grid) {
        const OutageTarget target(o.rate, eps);
        const auto k = line_offsets(n, o.antennas, target);
        r.values.push_back(-1.0 / std::expm1(-k.k_long * std::numbers::ln2));
        ratio.values.push_back(ratio_a_to_b(geometry, o.antennas, target));
        chain.values.push_back((2.0 / 3.0) * std::exp2(k.k_short - k.k_long + 1.0));
    }
    r.add_check({"prefactor ~ 0.386", std::abs(prefactor - 0.386) <= 5e-4, "prefactor = " + detail::fmt(prefactor),
                 std::nullopt});
    r.add_check({"prefactor equals n^(1-alpha)/path-efficiency",
                 std::abs(prefactor - std::pow(n, -1.0) / path_efficiency_factor(geometry)) <= 1e-12 * prefactor,
                 "", std::nullopt});
    r.add_check(detail::all_below("2^k_s/(2^k_s - 1) < 4/3", r.grid, r.values, 4.0 / 3.0));
    r.add_check(detail::all_below("(2/3) 2^(k_m-k_s+1) < 1/prefactor", r.grid, chain.values, 1.0 / prefactor));
    r.add_check(detail::all_below("E_A/E_B < 1", r.grid, ratio.values, 1.0));
    r.add_check(detail::tail_monotone(r.grid, r.values, "2^k_s/(2^k_s - 1)", true));
    r.extra.push_back(std::move(ratio));
    r.extra.push_back(std::move(chain));
    r.finalize();
    return r;
}

// ---------------------------------------------------------------------------
// Serialization.

/// Wide CSV: sweep variable, primary value, extra series.
inline void write_report_csv(std::ostream& out, const TrendReport& r) {
    out << r.sweep_variable << ',' << r.value_name;
    for (const auto& s : r.extra) out << ',' << s.name;
    out << '\n';
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
        out << format_real(r.grid[i]) << ',' << format_real(r.values[i]);
        for (const auto& s : r.extra) out << ',' << format_real(s.values[i]);
        out << '\n';
    }
}

/// Long CSV rows (report,sweep_variable,grid,series,value) for mixing reports in one file.
inline void write_report_rows(std::ostream& out, const TrendReport& r) {
    const auto emit = [&](const std::string& series, const std::vector<double>& values) {
        for (std::size_t i = 0; i < r.grid.size(); ++i) {
            out << r.title << ',' << r.sweep_variable << ',' << format_real(r.grid[i]) << ',' << series << ','
                << format_real(values[i]) << '\n';
        }
    };
    emit(r.value_name, r.values);
    for (const auto& s : r.extra) emit(s.name, s.values);
}

inline std::string summarize_report(const TrendReport& r) {
    std::ostringstream out;
    out << r.title << ": " << to_string(r.verdict) << " (" << r.grid.size() << " grid points over "
        << r.sweep_variable << ")";
    if (r.witness) out << ", witness " << r.sweep_variable << " = " << format_real(*r.witness);
    out << '\n';
    for (const auto& c : r.checks) {
        out << "  [" << (c.passed ? "ok" : "FAIL") << "] " << c.name;
        if (!c.detail.empty()) out << " -- " << c.detail;
        out << '\n';
    }
    return out.str();
}

}  // namespace mimohop
