#pragma once

// Transmit-energy closed forms for the deterministic line network:
// long hop E_s, n short hops E_m, multi-transmit long hop E_s,mult.

#include <cmath>
#include <numbers>

#include "mimohop/errors.hpp"
#include "mimohop/outage.hpp"

namespace mimohop {

class LineNetworkParams {
public:
    LineNetworkParams(double d, double alpha, double n0, int n_hops)
        : d_(d), alpha_(alpha), n0_(n0), n_hops_(n_hops) {
        if (!(d > 0.0)) throw DomainError("hop distance d must be positive");
        if (!(alpha > 1.0)) throw DomainError("path-loss exponent must exceed 1");
        if (!(n0 > 0.0)) throw DomainError("noise level must be positive");
        if (n_hops < 1) throw DomainError("hop count must be >= 1");
    }
    [[nodiscard]] double d() const noexcept { return d_; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] double n0() const noexcept { return n0_; }
    [[nodiscard]] int n_hops() const noexcept { return n_hops_; }

    /// N0 d^alpha, the energy unit of one short hop.
    [[nodiscard]] double hop_energy_unit() const { return n0_ * std::pow(d_, alpha_); }

private:
    double d_;
    double alpha_;
    double n0_;
    int n_hops_;
};

/// Per-hop failure 1 - (1 - eps)^(1/n) so that n independent hops meet eps.
inline double per_hop_failure_short(double eps, int n) {
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must lie in (0, 1)");
    if (n < 1) throw DomainError("n must be >= 1");
    return -std::expm1(std::log1p(-eps) / n);
}

/// Per-slot failure eps^(1/n) of the multi-transmit long hop.
inline double per_slot_failure_multi(double eps, int n) {
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must lie in (0, 1)");
    if (n < 1) throw DomainError("n must be >= 1");
    return std::exp(std::log(eps) / n);
}

/// (2^a - 1) / (2^b - 1) for a, b > 0 without forming 2^a.
inline double gain_ratio(double k_num, double k_den) {
    if (!(k_num > 0.0) || !(k_den > 0.0)) {
        throw InfeasibleAtZeroPower("rate offset k <= 0: target met at non-positive SNR");
    }
    const double ln2 = std::numbers::ln2;
    return std::exp2(k_num - k_den) * std::expm1(-k_num * ln2) / std::expm1(-k_den * ln2);
}

/// Rate offsets of the three strategies for one long-hop span.
struct LineOffsets {
    double k_long;        // end-to-end target on one long hop
    double k_short;       // per-hop target p_r^(1/n)
    double k_long_multi;  // per-slot target eps^(1/n)
};

inline LineOffsets line_offsets(int n, const AntennaConfig& ant, const OutageTarget& target,
                                InverseMode mode = InverseMode::exact) {
    const double eps = target.failure_prob();
    return {rate_offset_k(target.rate(), ant, eps, mode),
            rate_offset_k(target.rate(), ant, per_hop_failure_short(eps, n), mode),
            rate_offset_k(target.rate(), ant, per_slot_failure_multi(eps, n), mode)};
}

namespace detail {
inline double antenna_ratio(const AntennaConfig& ant) {
    return static_cast<double>(ant.n_t()) / ant.n_r();
}
}  // namespace detail

/// E_s = n^alpha N0 d^alpha (Nt/Nr) (2^k_s - 1).
inline double energy_long_hop(const LineNetworkParams& params, const AntennaConfig& ant,
                              const OutageTarget& target, InverseMode mode = InverseMode::exact) {
    const double k = rate_offset_k(target.rate(), ant, target.failure_prob(), mode);
    return std::pow(params.n_hops(), params.alpha()) * params.hop_energy_unit() *
           detail::antenna_ratio(ant) * snr_gain_factor(k);
}

/// E_m = n N0 d^alpha (Nt/Nr) (2^k_m - 1), per-hop target p_r^(1/n).
inline double energy_short_hop(const LineNetworkParams& params, const AntennaConfig& ant,
                               const OutageTarget& target, InverseMode mode = InverseMode::exact) {
    const double eps_hop = per_hop_failure_short(target.failure_prob(), params.n_hops());
    const double k = rate_offset_k(target.rate(), ant, eps_hop, mode);
    return params.n_hops() * params.hop_energy_unit() * detail::antenna_ratio(ant) * snr_gain_factor(k);
}

/// E_s,mult = n^(alpha+1) N0 d^alpha (Nt/Nr) (2^k_s,mult - 1), per-slot failure eps^(1/n).
inline double energy_multi_transmit_long(const LineNetworkParams& params, const AntennaConfig& ant,
                                         const OutageTarget& target,
                                         InverseMode mode = InverseMode::exact) {
    const double eps_slot = per_slot_failure_multi(target.failure_prob(), params.n_hops());
    const double k = rate_offset_k(target.rate(), ant, eps_slot, mode);
    return std::pow(params.n_hops(), params.alpha() + 1.0) * params.hop_energy_unit() *
           detail::antenna_ratio(ant) * snr_gain_factor(k);
}

struct RatioWithBound {
    double ratio;        // E_m / E_s
    double upper_bound;  // n^(1-alpha) 2^(k_m - k_s + 1)
};

/// E_m / E_s = n^(1-alpha) (2^k_m - 1)/(2^k_s - 1), evaluated in k space.
inline RatioWithBound ratio_short_to_long(const LineNetworkParams& params, const AntennaConfig& ant,
                                          const OutageTarget& target,
                                          InverseMode mode = InverseMode::exact) {
    const auto k = line_offsets(params.n_hops(), ant, target, mode);
    const double scale = std::pow(params.n_hops(), 1.0 - params.alpha());
    return {scale * gain_ratio(k.k_short, k.k_long), scale * std::exp2(k.k_short - k.k_long + 1.0)};
}

/// E_s,mult / E_m = n^alpha (2^k_s,mult - 1)/(2^k_m - 1), evaluated in k space.
inline double ratio_mult_to_short(const LineNetworkParams& params, const AntennaConfig& ant,
                                  const OutageTarget& target, InverseMode mode = InverseMode::exact) {
    const auto k = line_offsets(params.n_hops(), ant, target, mode);
    return std::pow(params.n_hops(), params.alpha()) * gain_ratio(k.k_long_multi, k.k_short);
}

}  // namespace mimohop
