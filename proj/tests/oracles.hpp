#pragma once

// Reference implementations used only by the tests. They share no code with
// the library: long-double bisection for erfc^-1, polar-angle sector tests for
// routing, and the closed 2x2 determinant for mutual information.

#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

inline constexpr long double kPi = 3.141592653589793238462643383279502884L;
inline constexpr long double kLn2 = 0.693147180559945309417232121458176568L;

/// erfc^-1(y) for y in (0, 2) by plain bisection on erfcl.
inline long double erfc_inv(long double y) {
    long double lo = -30.0L;
    long double hi = 30.0L;
    for (int i = 0; i < 400; ++i) {
        const long double mid = 0.5L * (lo + hi);
        if (std::erfc(mid) > y) lo = mid;
        else hi = mid;
    }
    return 0.5L * (lo + hi);
}

inline long double philip(long double x) {
    return std::sqrt(-std::log(std::sqrt(kPi) * x * std::sqrt(-std::log(x))));
}

inline long double coefficient(int nt, int nr) {
    return std::sqrt(2.0L / (static_cast<long double>(nt) * nr)) / kLn2;
}

inline long double k_offset(long double rate, int nt, int nr, long double eps) {
    return rate / nt + coefficient(nt, nr) * erfc_inv(2.0L * eps);
}

inline long double per_hop(long double eps, int n) { return 1.0L - std::pow(1.0L - eps, 1.0L / n); }

inline long double gain(long double k) { return std::pow(2.0L, k) - 1.0L; }

inline long double energy_long(long double alpha, int n, long double d, long double n0, int nt, int nr,
                               long double rate, long double eps) {
    return std::pow(n * d, alpha) * n0 * nt / nr * gain(k_offset(rate, nt, nr, eps));
}

inline long double energy_short(long double alpha, int n, long double d, long double n0, int nt, int nr,
                                long double rate, long double eps) {
    return n * std::pow(d, alpha) * n0 * nt / nr * gain(k_offset(rate, nt, nr, per_hop(eps, n)));
}

inline long double energy_multi(long double alpha, int n, long double d, long double n0, int nt, int nr,
                                long double rate, long double eps) {
    const long double slot = std::pow(eps, 1.0L / n);
    return std::pow(static_cast<long double>(n), alpha + 1.0L) * std::pow(d, alpha) * n0 * nt / nr *
           gain(k_offset(rate, nt, nr, slot));
}

/// Gaussian-approximation success probability straight from the mean/variance.
inline long double success_prob(long double rho, long double rate, int nt, int nr) {
    const long double mean = nt * std::log2(1.0L + rho * nr / nt);
    const long double sd = std::sqrt(static_cast<long double>(nt) / nr) / kLn2;
    return 0.5L * std::erfc((rate - mean) / (sd * std::sqrt(2.0L)));
}

struct Pt {
    double x;
    double y;
};

/// Strategy A by brute force: sector membership by polar angle difference.
/// Returns visited point indices (source and destination excluded).
inline std::vector<int> route_a(const std::vector<Pt>& pts, Pt dest, double phi) {
    std::vector<int> visited;
    Pt cur{0.0, 0.0};
    for (;;) {
        const double heading = std::atan2(dest.y - cur.y, dest.x - cur.x);
        int best = -1;
        double best_d2 = std::numeric_limits<double>::infinity();
        for (int j = 0; j < static_cast<int>(pts.size()); ++j) {
            const Pt& p = pts[static_cast<std::size_t>(j)];
            if (std::abs(dest.x - p.x) >= std::abs(dest.x - cur.x)) continue;
            if (p.x == cur.x && p.y == cur.y) continue;
            double diff = std::atan2(p.y - cur.y, p.x - cur.x) - heading;
            while (diff > M_PI) diff -= 2.0 * M_PI;
            while (diff < -M_PI) diff += 2.0 * M_PI;
            if (std::abs(diff) > 0.5 * phi) continue;
            const double d2 = (p.x - cur.x) * (p.x - cur.x) + (p.y - cur.y) * (p.y - cur.y);
            if (d2 < best_d2) {
                best_d2 = d2;
                best = j;
            }
        }
        const double dd2 = (dest.x - cur.x) * (dest.x - cur.x) + (dest.y - cur.y) * (dest.y - cur.y);
        if (best < 0 || dd2 < best_d2) return visited;
        visited.push_back(best);
        cur = pts[static_cast<std::size_t>(best)];
    }
}

/// log2 det(I + rho/2 H^H H) for a 2x2 Rayleigh channel via
/// det = 1 + (rho/2) |H|_F^2 + (rho/2)^2 |det H|^2.
class Mi2x2 {
public:
    explicit Mi2x2(unsigned seed) : engine_(seed), normal_(0.0, std::sqrt(0.5)) {}

    double operator()(double rho) {
        std::complex<double> h[4];
        for (auto& v : h) v = {normal_(engine_), normal_(engine_)};
        double frob = 0.0;
        for (const auto& v : h) frob += std::norm(v);
        const double det_h = std::norm(h[0] * h[3] - h[1] * h[2]);
        const double a = 0.5 * rho;
        return std::log2(1.0 + a * frob + a * a * det_h);
    }

private:
    std::mt19937 engine_;
    std::normal_distribution<double> normal_;
};

}  // namespace oracle
