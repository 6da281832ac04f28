#pragma once

// MIMO outage model: mutual-information sampler, the large-antenna Gaussian
// approximation of the success probability, the rate offset k and the
// required SNR.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "mimohop/errors.hpp"
#include "mimohop/random.hpp"
#include "mimohop/special_fn.hpp"

namespace mimohop {

inline constexpr double kLog2E = std::numbers::log2e;

class AntennaConfig {
public:
    AntennaConfig(int n_t, int n_r) : n_t_(n_t), n_r_(n_r) {
        if (n_t < 1 || n_r < 1) {
            throw DomainError("antenna counts must be >= 1");
        }
    }
    [[nodiscard]] int n_t() const noexcept { return n_t_; }
    [[nodiscard]] int n_r() const noexcept { return n_r_; }
    friend bool operator==(const AntennaConfig&, const AntennaConfig&) = default;

private:
    int n_t_;
    int n_r_;
};

/// Rate threshold R and end-to-end failure probability eps = 1 - p.
/// Stored as a failure probability so targets near p = 1 keep their precision.
class OutageTarget {
public:
    OutageTarget(double rate, double failure_prob) : rate_(rate), failure_prob_(failure_prob) {
        if (!(rate > 0.0)) {
            throw DomainError("rate must be positive");
        }
        if (!(failure_prob > 0.0 && failure_prob < 1.0)) {
            throw DomainError("failure probability must lie in (0, 1)");
        }
    }
    static OutageTarget from_success(double rate, double success_prob) {
        return OutageTarget(rate, 1.0 - success_prob);
    }
    [[nodiscard]] double rate() const noexcept { return rate_; }
    [[nodiscard]] double failure_prob() const noexcept { return failure_prob_; }
    [[nodiscard]] double success_prob() const noexcept { return 1.0 - failure_prob_; }

private:
    double rate_;
    double failure_prob_;
};

/// Linear average SNR per receive antenna, path loss included.
class Snr {
public:
    explicit Snr(double value) : value_(value) {
        if (!(value > 0.0) || !std::isfinite(value)) {
            throw DomainError("SNR must be positive and finite");
        }
    }
    [[nodiscard]] double value() const noexcept { return value_; }

private:
    double value_;
};

/// sqrt(2 / (Nt Nr)) * log2(e), the weight of erfc^-1 in k.
inline double outage_coefficient(const AntennaConfig& ant) {
    return std::sqrt(2.0 / (static_cast<double>(ant.n_t()) * ant.n_r())) * kLog2E;
}

/// Standardized gap z such that p = erfc(z) / 2.
inline double gaussian_z(const Snr& snr, double rate, const AntennaConfig& ant) {
    const double nt = ant.n_t();
    const double nr = ant.n_r();
    const double mean = nt * std::log2(1.0 + snr.value() * nr / nt);
    const double scale = std::sqrt(2.0 * nt / nr) * kLog2E;
    return (rate - mean) / scale;
}

/// Large-antenna Gaussian approximation of P(I > R).
inline Probability gaussian_success_prob(const Snr& snr, double rate, const AntennaConfig& ant) {
    if (!(rate > 0.0)) {
        throw DomainError("rate must be positive");
    }
    return Probability(0.5 * erfc(gaussian_z(snr, rate, ant)));
}

/// 1 - gaussian_success_prob, evaluated without cancellation.
inline double gaussian_failure_prob(const Snr& snr, double rate, const AntennaConfig& ant) {
    if (!(rate > 0.0)) {
        throw DomainError("rate must be positive");
    }
    return 0.5 * erfc(-gaussian_z(snr, rate, ant));
}

/// k = R/Nt + sqrt(2/(Nt Nr)) log2(e) erfc^-1(2 eps) for a link failure
/// probability eps. Same as the -erfc^-1(2p) form via the reflection identity.
inline double rate_offset_k(double rate, const AntennaConfig& ant, double failure_prob,
                            InverseMode mode = InverseMode::exact) {
    if (!(failure_prob > 0.0 && failure_prob < 1.0)) {
        throw DomainError("failure probability must lie in (0, 1)");
    }
    return rate / ant.n_t() + outage_coefficient(ant) * erfc_inv(2.0 * failure_prob, mode);
}

inline double rate_offset_k(double rate, const AntennaConfig& ant, const OutageTarget& target,
                            InverseMode mode = InverseMode::exact) {
    return rate_offset_k(rate, ant, target.failure_prob(), mode);
}

/// 2^k - 1 for k > 0.
inline double snr_gain_factor(double k) {
    if (!(k > 0.0)) {
        throw InfeasibleAtZeroPower("rate offset k = " + std::to_string(k) +
                                    " <= 0: target met at non-positive SNR");
    }
    return std::expm1(k * std::numbers::ln2);
}

/// rho = (Nt/Nr) (2^k - 1).
inline Snr required_snr(double rate, const AntennaConfig& ant, const OutageTarget& target,
                        InverseMode mode = InverseMode::exact) {
    const double k = rate_offset_k(rate, ant, target, mode);
    return Snr(static_cast<double>(ant.n_t()) / ant.n_r() * snr_gain_factor(k));
}

/// Draws log2 det(I + (rho/Nt) H^H H) with H an Nr x Nt matrix of circularly
/// symmetric complex Gaussians (real and imaginary parts N(0, 0.5)).
/// Keeps its matrices between draws.
class MutualInformationSampler {
public:
    explicit MutualInformationSampler(const AntennaConfig& ant)
        : ant_(ant), channel_(ant.n_r(), ant.n_t()), gram_(ant.n_t(), ant.n_t()), llt_(ant.n_t()) {}

    double operator()(const Snr& snr, RandomStream& rng) {
        const double part_sd = std::sqrt(0.5);
        for (Eigen::Index r = 0; r < channel_.rows(); ++r) {
            for (Eigen::Index c = 0; c < channel_.cols(); ++c) {
                const double re = rng.normal() * part_sd;
                const double im = rng.normal() * part_sd;
                channel_(r, c) = {re, im};
            }
        }
        gram_.noalias() = channel_.adjoint() * channel_;
        gram_ *= snr.value() / ant_.n_t();
        gram_.diagonal().array() += 1.0;
        llt_.compute(gram_);
        double log_det = 0.0;
        for (Eigen::Index i = 0; i < gram_.rows(); ++i) {
            log_det += std::log(llt_.matrixLLT()(i, i).real());
        }
        const double bits = 2.0 * log_det * kLog2E;
        return bits > 0.0 ? bits : 0.0;
    }

private:
    AntennaConfig ant_;
    Eigen::MatrixXcd channel_;
    Eigen::MatrixXcd gram_;
    Eigen::LLT<Eigen::MatrixXcd> llt_;
};

inline double sample_mutual_information(const Snr& snr, const AntennaConfig& ant, RandomStream& rng) {
    MutualInformationSampler sampler(ant);
    return sampler(snr, rng);
}

struct SuccessEstimate {
    Probability prob;
    double std_error = 0.0;
    std::int64_t trials = 0;
};

inline constexpr std::int64_t kMonteCarloBlock = 4096;

/// Fraction of channel draws with I > rate. Draws are split in fixed blocks,
/// block b using substream b of `seed`, so the estimate does not depend on the
/// thread count.
inline SuccessEstimate empirical_success_prob(const Snr& snr, double rate, const AntennaConfig& ant,
                                              std::int64_t trials, std::uint64_t seed,
                                              unsigned threads = 1) {
    if (trials < 1) {
        throw DomainError("trials must be >= 1");
    }
    const auto blocks = static_cast<std::size_t>((trials + kMonteCarloBlock - 1) / kMonteCarloBlock);
    std::vector<std::int64_t> successes(blocks, 0);
    for_each_block(blocks, threads, [&](std::size_t b) {
        RandomStream rng = RandomStream::substream(seed, b);
        MutualInformationSampler sampler(ant);
        const std::int64_t begin = static_cast<std::int64_t>(b) * kMonteCarloBlock;
        const std::int64_t end = std::min(trials, begin + kMonteCarloBlock);
        std::int64_t count = 0;
        for (std::int64_t i = begin; i < end; ++i) {
            if (sampler(snr, rng) > rate) {
                ++count;
            }
        }
        successes[b] = count;
    });
    std::int64_t total = 0;
    for (auto s : successes) {
        total += s;
    }
    const double p = static_cast<double>(total) / static_cast<double>(trials);
    return {Probability(p), std::sqrt(p * (1.0 - p) / static_cast<double>(trials)), trials};
}

/// Mean and standard error of the sampled mutual information (blocked like
/// empirical_success_prob).
struct SampleMoments {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t trials = 0;
};

inline SampleMoments mutual_information_moments(const Snr& snr, const AntennaConfig& ant,
                                                std::int64_t trials, std::uint64_t seed,
                                                unsigned threads = 1) {
    if (trials < 1) {
        throw DomainError("trials must be >= 1");
    }
    const auto blocks = static_cast<std::size_t>((trials + kMonteCarloBlock - 1) / kMonteCarloBlock);
    std::vector<double> sums(blocks, 0.0);
    std::vector<double> sums_sq(blocks, 0.0);
    for_each_block(blocks, threads, [&](std::size_t b) {
        RandomStream rng = RandomStream::substream(seed, b);
        MutualInformationSampler sampler(ant);
        const std::int64_t begin = static_cast<std::int64_t>(b) * kMonteCarloBlock;
        const std::int64_t end = std::min(trials, begin + kMonteCarloBlock);
        for (std::int64_t i = begin; i < end; ++i) {
            const double v = sampler(snr, rng);
            sums[b] += v;
            sums_sq[b] += v * v;
        }
    });
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) {
        sum += sums[b];
        sum_sq += sums_sq[b];
    }
    const double n = static_cast<double>(trials);
    const double mean = sum / n;
    const double var = trials > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
    return {mean, std::sqrt(var / n), trials};
}

}  // namespace mimohop
