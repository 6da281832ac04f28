#pragma once

// Seeded random streams with bit-specified output. std::mt19937_64 and
// std::seed_seq are fully specified by the standard; the deviate conversions
// below are written out so results do not depend on the standard library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <thread>
#include <vector>

namespace mimohop {

class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : RandomStream(seed, 0, false) {}

    /// Independent stream number `index` derived from a master seed.
    static RandomStream substream(std::uint64_t master_seed, std::uint64_t index) {
        return RandomStream(master_seed, index, true);
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1].
    double uniform_open_left() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

    /// Standard normal deviate (Box-Muller, pairs cached).
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        const double u1 = uniform_open_left();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        cached_ = radius * std::sin(angle);
        has_cached_ = true;
        return radius * std::cos(angle);
    }

    /// Poisson deviate. Large means are split into chunks (sum of Poissons is
    /// Poisson) so the sequential inversion never underflows exp(-mean).
    std::uint64_t poisson(double mean) {
        constexpr double chunk = 500.0;
        std::uint64_t total = 0;
        while (mean > chunk) {
            total += poisson_inversion(chunk);
            mean -= chunk;
        }
        return total + (mean > 0.0 ? poisson_inversion(mean) : 0);
    }

private:
    RandomStream(std::uint64_t seed, std::uint64_t index, bool indexed) {
        const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
        const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
        if (indexed) {
            std::seed_seq seq{lo(seed), hi(seed), lo(index), hi(index), 0x9e3779b9u};
            engine_.seed(seq);
        } else {
            std::seed_seq seq{lo(seed), hi(seed)};
            engine_.seed(seq);
        }
    }

    std::uint64_t poisson_inversion(double mean) {
        const double u = uniform();
        double pmf = std::exp(-mean);
        double cdf = pmf;
        std::uint64_t k = 0;
        while (u >= cdf) {
            ++k;
            pmf *= mean / static_cast<double>(k);
            const double next = cdf + pmf;
            if (next == cdf) {
                break;  // tail exhausted in double precision
            }
            cdf = next;
        }
        return k;
    }

    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// Number of worker threads to use when the caller passes 0.
inline unsigned default_thread_count() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

/// Runs fn(block) for block in [0, blocks) over `threads` workers. Blocks are
/// assigned round-robin; callers write results into per-block slots so the
/// reduction order never depends on the thread count.
inline void for_each_block(std::size_t blocks, unsigned threads,
                           const std::function<void(std::size_t)>& fn) {
    if (threads == 0) {
        threads = default_thread_count();
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(blocks, 1)));
    if (threads <= 1) {
        for (std::size_t b = 0; b < blocks; ++b) {
            fn(b);
        }
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> failures(threads);
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t b = t; b < blocks; b += threads) {
                    fn(b);
                }
            } catch (...) {
                failures[t] = std::current_exception();
            }
        });
    }
    for (auto& worker : pool) {
        worker.join();
    }
    for (const auto& failure : failures) {
        if (failure) {
            std::rethrow_exception(failure);
        }
    }
}

}  // namespace mimohop
