#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "mimohop/ppp_sim.hpp"
#include "oracles.hpp"

using namespace mimohop;

namespace {

std::vector<oracle::Pt> as_oracle(const PointSet& set) {
    std::vector<oracle::Pt> out;
    for (const auto& p : set.points) out.push_back({p.x, p.y});
    return out;
}

}  // namespace

TEST(Sector, GeometryAndSampling) {
    const auto region = SectorRegion::for_expected_count(30.0, std::numbers::pi / 2.0);
    EXPECT_NEAR(region.area(), 30.0, 1e-12);
    RandomStream rng(2);
    double sum_x = 0.0;
    constexpr int kDraws = 200000;
    for (int i = 0; i < kDraws; ++i) {
        const Point p = region.sample(rng);
        ASSERT_TRUE(region.contains(p));
        sum_x += p.x;
    }
    EXPECT_NEAR(sum_x / kDraws / region.destination_distance(), 0.60021087743807071, 3e-3);
    EXPECT_THROW(SectorRegion(1.0, 4.0), DomainError);
    EXPECT_THROW(SectorRegion(0.0, 1.0), DomainError);
}

TEST(Sector, PoissonCountMean) {
    const SectorRegion region(5.0, 1.0);
    RandomStream rng(8);
    double total = 0.0;
    constexpr int kSets = 4000;
    for (int i = 0; i < kSets; ++i) total += static_cast<double>(generate_ppp(region, 2.0, rng).points.size());
    const double mean = region.area() * 2.0;
    EXPECT_NEAR(total / kSets, mean, 4.0 * std::sqrt(mean / kSets));
}

TEST(Sector, PoissonLargeMeanUsesChunks) {
    RandomStream rng(1);
    double total = 0.0;
    for (int i = 0; i < 200; ++i) total += static_cast<double>(rng.poisson(2500.0));
    EXPECT_NEAR(total / 200.0, 2500.0, 4.0 * std::sqrt(2500.0 / 200.0));
}

TEST(StrategyA, MatchesBruteForceOracle) {
    for (double phi : {std::numbers::pi / 2.0, 1.0, std::numbers::pi}) {
        for (std::uint64_t t = 0; t < 300; ++t) {
            RandomStream rng = RandomStream::substream(123, t);
            const auto region = SectorRegion::for_expected_count(40.0, phi);
            const PointSet set = generate_uniform_count(region, 40, rng);
            const Route route = route_strategy_a(set, phi);
            const auto expect = oracle::route_a(as_oracle(set), {region.destination().x, 0.0}, phi);
            const std::vector<int> got(route.node_indices.begin() + 1, route.node_indices.end() - 1);
            ASSERT_EQ(got, expect) << "phi " << phi << " trial " << t;
        }
    }
}

TEST(StrategyA, RouteInvariants) {
    for (std::uint64_t t = 0; t < 200; ++t) {
        RandomStream rng = RandomStream::substream(5, t);
        const auto region = SectorRegion::for_expected_count(30.0, std::numbers::pi / 2.0);
        const PointSet set = generate_uniform_count(region, 30, rng);
        for (auto anchor : {SectorAnchor::per_hop, SectorAnchor::source}) {
            const Route r = route_strategy_a(set, std::numbers::pi / 2.0, anchor);
            ASSERT_EQ(r.node_indices.front(), kSourceIndex);
            ASSERT_EQ(r.node_indices.back(), kDestinationIndex);
            ASSERT_EQ(r.hop_count(), r.intermediate_count() + 1);
            for (std::size_t i = 1; i + 1 < r.positions.size(); ++i) {
                EXPECT_GT(r.positions[i].x, r.positions[i - 1].x);
            }
            EXPECT_GE(r.length(), region.destination_distance() - 1e-12);
        }
    }
}

TEST(StrategyA, EmptySetIsDirectHop) {
    const SectorRegion region(3.0, 1.0);
    const Route r = route_strategy_a(PointSet{{}, region, 0}, 1.0);
    EXPECT_EQ(r.hop_count(), 1);
    EXPECT_DOUBLE_EQ(r.length(), 3.0);
}

TEST(StrategyB, SubsamplesRouteA) {
    for (std::uint64_t t = 0; t < 100; ++t) {
        RandomStream rng = RandomStream::substream(77, t);
        const auto region = SectorRegion::for_expected_count(30.0, std::numbers::pi / 2.0);
        const Route a = route_strategy_a(generate_uniform_count(region, 30, rng), std::numbers::pi / 2.0);
        for (int n = 1; n <= 5; ++n) {
            const Route b = route_strategy_b(a, n);
            EXPECT_EQ(b.intermediate_count(), a.intermediate_count() / n);
            EXPECT_LE(b.length(), a.length() + 1e-12);
            for (std::size_t i = 1; i + 1 < b.node_indices.size(); ++i) {
                EXPECT_EQ(b.node_indices[i], a.node_indices[i * static_cast<std::size_t>(n)]);
            }
        }
        EXPECT_EQ(route_strategy_b(a, 1).node_indices, a.node_indices);
    }
    EXPECT_THROW(route_strategy_b(Route{}, 0), DomainError);
}

TEST(RouteEnergy, SumsPerHopTerms) {
    Route r;
    r.hop_distances = {1.0, 2.0};
    const AntennaConfig ant(2, 2);
    const double k = rate_offset_k(2.0, ant, 0.01);
    EXPECT_NEAR(route_energy(r, 2.0, ant, 0.01, 2.0), (1.0 + 4.0) * std::expm1(k * M_LN2), 1e-12);
}

TEST(MonteCarlo, ThreadIndependentAndSeedSensitive) {
    PppConfig cfg;
    cfg.n_hops = 3;
    const auto a = monte_carlo_compare(cfg, 700, 42, 1);
    const auto b = monte_carlo_compare(cfg, 700, 42, 3);
    const auto c = monte_carlo_compare(cfg, 700, 43, 1);
    EXPECT_EQ(a.samples_a, b.samples_a);
    EXPECT_EQ(a.samples_b, b.samples_b);
    EXPECT_EQ(a.energy_a.mean, b.energy_a.mean);
    EXPECT_NE(a.energy_a.mean, c.energy_a.mean);
}

TEST(MonteCarlo, NEqualsOneGivesIdenticalStrategies) {
    PppConfig cfg;
    cfg.n_hops = 1;
    const auto r = monte_carlo_compare(cfg, 300, 1);
    EXPECT_EQ(r.samples_a, r.samples_b);
    EXPECT_DOUBLE_EQ(r.ratio.mean, 1.0);
}

TEST(MonteCarlo, ShortHopsWinAtModerateScale) {
    PppConfig cfg;
    cfg.failure_prob = 0.08;
    for (int n = 2; n <= 4; ++n) {
        cfg.n_hops = n;
        const auto r = monte_carlo_compare(cfg, 1000, 9);
        EXPECT_LT(r.energy_a.mean, r.energy_b.mean) << "n = " << n;
    }
}

TEST(MonteCarlo, PoissonProcessRuns) {
    PppConfig cfg;
    cfg.process = PointProcess::poisson;
    const auto r = monte_carlo_compare(cfg, 200, 3);
    EXPECT_TRUE(std::isfinite(r.energy_a.mean));
    EXPECT_GT(r.hops_a.mean, 1.0);
}

TEST(CsvWriters, PointsAndRoutes) {
    const SectorRegion region(2.0, 1.0);
    PointSet set{{{0.5, 0.1}, {1.2, -0.2}}, region, 0};
    std::ostringstream pts;
    write_points_csv(pts, set);
    EXPECT_NE(pts.str().find("index,x,y\n0,0.5,0.10000000000000001\n"), std::string::npos);
    std::ostringstream route;
    write_route_csv(route, route_strategy_a(set, 1.0));
    EXPECT_EQ(route.str().rfind("hop,from,to,from_x,from_y,to_x,to_y,distance\n", 0), 0u);
    EXPECT_EQ(route.str().find('\r'), std::string::npos);
}
