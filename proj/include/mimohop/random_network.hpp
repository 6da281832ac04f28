#pragma once

// Expected transmit energies in the 2-D Poisson network (density 1),
// normalized by N0 (Nt/Nr): Strategy A (short hops), Strategy B (long hops)
// and multi-transmit Strategy B.

#include <cmath>
#include <numbers>

#include "mimohop/errors.hpp"
#include "mimohop/line_network.hpp"
#include "mimohop/outage.hpp"
#include "mimohop/special_fn.hpp"

namespace mimohop {

class RandomNetworkParams {
public:
    RandomNetworkParams(double alpha, double phi, int n_hops) : alpha_(alpha), phi_(phi), n_hops_(n_hops) {
        if (!(alpha > 1.0)) throw DomainError("path-loss exponent must exceed 1");
        if (!(phi > 0.0 && phi <= std::numbers::pi)) throw DomainError("sector angle must lie in (0, pi]");
        if (n_hops < 1) throw DomainError("hop count must be >= 1");
    }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] double phi() const noexcept { return phi_; }
    [[nodiscard]] int n_hops() const noexcept { return n_hops_; }

private:
    double alpha_;
    double phi_;
    int n_hops_;
};

/// 1 - alpha phi^2 (n-1) / (24 n). May be non-positive; see checked_path_efficiency.
inline double path_efficiency_factor(const RandomNetworkParams& p) {
    const double n = p.n_hops();
    return 1.0 - p.alpha() * p.phi() * p.phi() * (n - 1.0) / (24.0 * n);
}

inline double checked_path_efficiency(const RandomNetworkParams& p) {
    const double eff = path_efficiency_factor(p);
    if (!(eff > 0.0)) {
        throw InvalidGeometry("path-efficiency factor 1 - a*phi^2*(n-1)/(24n) = " + std::to_string(eff) +
                              " is not positive");
    }
    return eff;
}

/// (2/phi)^(alpha/2) Gamma(1 + alpha/2): mean d^alpha of one nearest-neighbor hop in the sector.
inline double sector_hop_moment(const RandomNetworkParams& p) {
    return std::pow(2.0 / p.phi(), p.alpha() / 2.0) * gamma(1.0 + p.alpha() / 2.0);
}

inline double energy_strategy_b(const RandomNetworkParams& p, const AntennaConfig& ant,
                                const OutageTarget& target, InverseMode mode = InverseMode::exact) {
    const double eff = checked_path_efficiency(p);
    const double k = rate_offset_k(target.rate(), ant, target.failure_prob(), mode);
    return std::pow(p.n_hops(), p.alpha()) * sector_hop_moment(p) * eff * snr_gain_factor(k);
}

inline double energy_strategy_a(const RandomNetworkParams& p, const AntennaConfig& ant,
                                const OutageTarget& target, InverseMode mode = InverseMode::exact) {
    const double eps_hop = per_hop_failure_short(target.failure_prob(), p.n_hops());
    const double k = rate_offset_k(target.rate(), ant, eps_hop, mode);
    return p.n_hops() * sector_hop_moment(p) * snr_gain_factor(k);
}

inline double energy_multi_transmit_b(const RandomNetworkParams& p, const AntennaConfig& ant,
                                      const OutageTarget& target, InverseMode mode = InverseMode::exact) {
    const double eff = checked_path_efficiency(p);
    const double eps_slot = per_slot_failure_multi(target.failure_prob(), p.n_hops());
    const double k = rate_offset_k(target.rate(), ant, eps_slot, mode);
    return std::pow(p.n_hops(), p.alpha() + 1.0) * sector_hop_moment(p) * eff * snr_gain_factor(k);
}

/// E_A / E_B: the line-network ratio divided by the path-efficiency factor.
inline double ratio_a_to_b(const RandomNetworkParams& p, const AntennaConfig& ant,
                           const OutageTarget& target, InverseMode mode = InverseMode::exact) {
    const double eff = checked_path_efficiency(p);
    const auto k = line_offsets(p.n_hops(), ant, target, mode);
    return std::pow(p.n_hops(), 1.0 - p.alpha()) * gain_ratio(k.k_short, k.k_long) / eff;
}

/// E_B,mult / E_A in k space.
inline double ratio_mult_b_to_a(const RandomNetworkParams& p, const AntennaConfig& ant,
                                const OutageTarget& target, InverseMode mode = InverseMode::exact) {
    const double eff = checked_path_efficiency(p);
    const auto k = line_offsets(p.n_hops(), ant, target, mode);
    return std::pow(p.n_hops(), p.alpha()) * eff * gain_ratio(k.k_long_multi, k.k_short);
}

}  // namespace mimohop
