#pragma once

// Monte Carlo model of the 2-D random network: point generation in a sector
// between source and destination, Strategy A / Strategy B routes, and energy
// over realized hop distances.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <ostream>
#include <vector>

#include "mimohop/csv.hpp"
#include "mimohop/errors.hpp"
#include "mimohop/line_network.hpp"
#include "mimohop/outage.hpp"
#include "mimohop/random.hpp"

namespace mimohop {

struct Point {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Circular sector of radius D and angle phi with apex at the source (origin),
/// symmetric about the x-axis; the destination sits at (D, 0).
class SectorRegion {
public:
    SectorRegion(double destination_distance, double phi) : radius_(destination_distance), phi_(phi) {
        if (!(destination_distance > 0.0)) throw DomainError("destination distance must be positive");
        if (!(phi > 0.0 && phi <= std::numbers::pi)) throw DomainError("sector angle must lie in (0, pi]");
    }
    /// Radius that makes the sector area equal to `expected_count` at unit density.
    static SectorRegion for_expected_count(double expected_count, double phi) {
        return SectorRegion(std::sqrt(2.0 * expected_count / phi), phi);
    }

    [[nodiscard]] double destination_distance() const noexcept { return radius_; }
    [[nodiscard]] double phi() const noexcept { return phi_; }
    [[nodiscard]] double area() const noexcept { return 0.5 * phi_ * radius_ * radius_; }
    [[nodiscard]] Point source() const noexcept { return {0.0, 0.0}; }
    [[nodiscard]] Point destination() const noexcept { return {radius_, 0.0}; }

    [[nodiscard]] bool contains(const Point& p) const noexcept {
        const double r = std::hypot(p.x, p.y);
        if (r > radius_) return false;
        if (r == 0.0) return true;
        return std::abs(std::atan2(p.y, p.x)) <= 0.5 * phi_;
    }

    /// Uniform point in the sector.
    Point sample(RandomStream& rng) const {
        const double r = radius_ * std::sqrt(rng.uniform());
        const double theta = (rng.uniform() - 0.5) * phi_;
        return {r * std::cos(theta), r * std::sin(theta)};
    }

private:
    double radius_;
    double phi_;
};

struct PointSet {
    std::vector<Point> points;
    SectorRegion region;
    std::uint64_t seed = 0;
};

/// Poisson point process of the given intensity restricted to the sector.
inline PointSet generate_ppp(const SectorRegion& region, double intensity, RandomStream& rng,
                             std::uint64_t seed_tag = 0) {
    if (!(intensity > 0.0)) throw DomainError("intensity must be positive");
    const auto count = rng.poisson(intensity * region.area());
    PointSet set{{}, region, seed_tag};
    set.points.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        set.points.push_back(region.sample(rng));
    }
    return set;
}

/// Exactly `count` i.i.d. uniform points in the sector.
inline PointSet generate_uniform_count(const SectorRegion& region, int count, RandomStream& rng,
                                       std::uint64_t seed_tag = 0) {
    if (count < 0) throw DomainError("point count must be >= 0");
    PointSet set{{}, region, seed_tag};
    set.points.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        set.points.push_back(region.sample(rng));
    }
    return set;
}

inline constexpr int kSourceIndex = -1;
inline constexpr int kDestinationIndex = -2;

struct Route {
    std::vector<int> node_indices;  // kSourceIndex, point indices..., kDestinationIndex
    std::vector<Point> positions;   // same length as node_indices
    std::vector<double> hop_distances;

    [[nodiscard]] int hop_count() const noexcept { return static_cast<int>(hop_distances.size()); }
    [[nodiscard]] int intermediate_count() const noexcept {
        return static_cast<int>(node_indices.size()) - 2;
    }
    [[nodiscard]] double length() const noexcept {
        double total = 0.0;
        for (double d : hop_distances) total += d;
        return total;
    }
};

/// Where the Strategy A sector is anchored.
enum class SectorAnchor {
    per_hop,  // re-centered on the current-node -> destination ray at every hop
    source,   // the single source-anchored sector (the generation region)
};

namespace detail {

inline void append_node(Route& route, int index, const Point& p) {
    if (!route.positions.empty()) {
        route.hop_distances.push_back(distance(route.positions.back(), p));
    }
    route.node_indices.push_back(index);
    route.positions.push_back(p);
}

// Is p inside the sector of angle phi with apex `from`, centered on the ray to `to`?
inline bool in_sector(const Point& from, const Point& to, const Point& p, double phi) {
    const double ax = to.x - from.x;
    const double ay = to.y - from.y;
    const double bx = p.x - from.x;
    const double by = p.y - from.y;
    const double norm = std::hypot(ax, ay) * std::hypot(bx, by);
    if (norm == 0.0) return false;
    return ax * bx + ay * by >= norm * std::cos(0.5 * phi);
}

}  // namespace detail

/// Strategy A: from the current node, hop to the nearest node in the sector
/// that strictly reduces the x-distance to the destination; hop to the
/// destination once it is nearer than every eligible node (or none is left).
inline Route route_strategy_a(const PointSet& set, double phi, SectorAnchor anchor = SectorAnchor::per_hop) {
    const Point dest = set.region.destination();
    Route route;
    detail::append_node(route, kSourceIndex, set.region.source());
    Point current = set.region.source();

    while (true) {
        const double x_gap = std::abs(dest.x - current.x);
        int best = -1;
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < set.points.size(); ++j) {
            const Point& p = set.points[j];
            if (!(std::abs(dest.x - p.x) < x_gap)) continue;
            const bool eligible = anchor == SectorAnchor::per_hop ? detail::in_sector(current, dest, p, phi)
                                                                  : set.region.contains(p);
            if (!eligible) continue;
            const double dj = distance(current, p);
            if (dj < best_dist) {
                best_dist = dj;
                best = static_cast<int>(j);
            }
        }
        if (best < 0 || distance(current, dest) < best_dist) {
            break;
        }
        current = set.points[static_cast<std::size_t>(best)];
        detail::append_node(route, best, current);
    }
    detail::append_node(route, kDestinationIndex, dest);
    return route;
}

/// Strategy B: keep every n-th intermediate node of the Strategy A route
/// (positions n, 2n, ...) and the destination.
inline Route route_strategy_b(const Route& route_a, int n) {
    if (n < 1) throw DomainError("n must be >= 1");
    Route route;
    detail::append_node(route, route_a.node_indices.front(), route_a.positions.front());
    const int m = route_a.intermediate_count();
    for (int pos = n; pos <= m; pos += n) {
        const auto i = static_cast<std::size_t>(pos);
        detail::append_node(route, route_a.node_indices[i], route_a.positions[i]);
    }
    detail::append_node(route, route_a.node_indices.back(), route_a.positions.back());
    return route;
}

/// Sum of d_i^alpha (2^k - 1) over the hops, k at the given per-hop failure.
/// Normalized by N0 (Nt/Nr) like the closed-form random-network energies.
inline double route_energy(const Route& route, double alpha, const AntennaConfig& ant, double per_hop_failure,
                           double rate, InverseMode mode = InverseMode::exact) {
    const double gain = snr_gain_factor(rate_offset_k(rate, ant, per_hop_failure, mode));
    double total = 0.0;
    for (double d : route.hop_distances) {
        total += std::pow(d, alpha);
    }
    return total * gain;
}

struct EnergyStats {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t trials = 0;
};

inline EnergyStats summarize(const std::vector<double>& values) {
    if (values.empty()) throw DomainError("no samples to summarize");
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double var = values.size() > 1 ? ss / (n - 1.0) : 0.0;
    return {mean, std::sqrt(var / n), static_cast<std::int64_t>(values.size())};
}

enum class PointProcess { uniform_count, poisson };

struct PppConfig {
    int node_count = 30;  // exact count (uniform_count) or expected count (poisson)
    double phi = std::numbers::pi / 2.0;
    double alpha = 2.0;
    double destination_distance = 0.0;  // 0: radius giving area = node_count at unit density
    AntennaConfig antennas{2, 2};
    double rate = 2.0;
    double failure_prob = 0.08;
    int n_hops = 2;
    PointProcess process = PointProcess::uniform_count;
    double intensity = 1.0;
    SectorAnchor anchor = SectorAnchor::per_hop;
    InverseMode mode = InverseMode::exact;

    [[nodiscard]] SectorRegion region() const {
        return destination_distance > 0.0 ? SectorRegion(destination_distance, phi)
                                          : SectorRegion::for_expected_count(node_count, phi);
    }
};

struct CompareResult {
    EnergyStats energy_a;
    EnergyStats energy_b;
    EnergyStats ratio;  // per-sample E_A / E_B
    EnergyStats hops_a;
    EnergyStats hops_b;
    std::vector<double> samples_a;
    std::vector<double> samples_b;
};

/// Energies of one realized sample. A splits the end-to-end target over its
/// own hop count, B over B's realized hop count.
inline std::pair<double, double> sample_energies(const PointSet& set, const PppConfig& cfg,
                                                 int* hops_a = nullptr, int* hops_b = nullptr) {
    const Route a = route_strategy_a(set, cfg.phi, cfg.anchor);
    const Route b = route_strategy_b(a, cfg.n_hops);
    if (hops_a) *hops_a = a.hop_count();
    if (hops_b) *hops_b = b.hop_count();
    const double e_a = route_energy(a, cfg.alpha, cfg.antennas,
                                    per_hop_failure_short(cfg.failure_prob, a.hop_count()), cfg.rate, cfg.mode);
    const double e_b = route_energy(b, cfg.alpha, cfg.antennas,
                                    per_hop_failure_short(cfg.failure_prob, b.hop_count()), cfg.rate, cfg.mode);
    return {e_a, e_b};
}

/// Point set of trial `t`: depends only on (seed, t, region, process), not on n.
inline PointSet trial_points(const PppConfig& cfg, std::uint64_t seed, std::uint64_t trial) {
    RandomStream rng = RandomStream::substream(seed, trial);
    const SectorRegion region = cfg.region();
    return cfg.process == PointProcess::poisson ? generate_ppp(region, cfg.intensity, rng, seed)
                                                : generate_uniform_count(region, cfg.node_count, rng, seed);
}

inline CompareResult monte_carlo_compare(const PppConfig& cfg, std::int64_t trials, std::uint64_t seed,
                                         unsigned threads = 1) {
    if (trials < 1) throw DomainError("trials must be >= 1");
    if (cfg.n_hops < 1) throw DomainError("n must be >= 1");
    const auto count = static_cast<std::size_t>(trials);
    std::vector<double> e_a(count), e_b(count), hops_a(count), hops_b(count);
    constexpr std::size_t block = 256;
    const std::size_t blocks = (count + block - 1) / block;
    for_each_block(blocks, threads, [&](std::size_t b) {
        const std::size_t end = std::min(count, (b + 1) * block);
        for (std::size_t t = b * block; t < end; ++t) {
            int ha = 0;
            int hb = 0;
            const auto [a, bb] = sample_energies(trial_points(cfg, seed, t), cfg, &ha, &hb);
            e_a[t] = a;
            e_b[t] = bb;
            hops_a[t] = ha;
            hops_b[t] = hb;
        }
    });
    std::vector<double> ratio(count);
    for (std::size_t t = 0; t < count; ++t) ratio[t] = e_a[t] / e_b[t];
    CompareResult result;
    result.energy_a = summarize(e_a);
    result.energy_b = summarize(e_b);
    result.ratio = summarize(ratio);
    result.hops_a = summarize(hops_a);
    result.hops_b = summarize(hops_b);
    result.samples_a = std::move(e_a);
    result.samples_b = std::move(e_b);
    return result;
}

/// index,x,y; one row per point.
inline void write_points_csv(std::ostream& out, const PointSet& set) {
    out << "# destination_distance=" << format_real(set.region.destination_distance())
        << "\n# phi=" << format_real(set.region.phi()) << "\n# seed=" << set.seed << "\n";
    out << "index,x,y\n";
    for (std::size_t i = 0; i < set.points.size(); ++i) {
        out << i << ',' << format_real(set.points[i].x) << ',' << format_real(set.points[i].y) << '\n';
    }
}

/// hop,from,to,from_x,from_y,to_x,to_y,distance; source is -1, destination -2.
inline void write_route_csv(std::ostream& out, const Route& route) {
    out << "hop,from,to,from_x,from_y,to_x,to_y,distance\n";
    for (std::size_t h = 0; h < route.hop_distances.size(); ++h) {
        const Point& a = route.positions[h];
        const Point& b = route.positions[h + 1];
        out << h << ',' << route.node_indices[h] << ',' << route.node_indices[h + 1] << ','
            << format_real(a.x) << ',' << format_real(a.y) << ',' << format_real(b.x) << ','
            << format_real(b.y) << ',' << format_real(route.hop_distances[h]) << '\n';
    }
}

}  // namespace mimohop
