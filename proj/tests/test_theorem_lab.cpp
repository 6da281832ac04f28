#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "mimohop/theorem_lab.hpp"
#include "oracles.hpp"

using namespace mimohop;

TEST(Grids, Builders) {
    const auto g = geometric_int_grid(1, 256, 2);
    EXPECT_EQ(g.front(), 1.0);
    EXPECT_EQ(g.back(), 256.0);
    for (std::size_t i = 1; i < g.size(); ++i) EXPECT_GT(g[i], g[i - 1]);
    const auto e = log_grid_descending(1e-1, 1e-12, 4);
    EXPECT_EQ(e.size(), 45u);
    EXPECT_NEAR(e.back(), 1e-12, 1e-24);
    const auto o = open_linear_grid(0.9, 1.0, 9);
    EXPECT_NEAR(o.front(), 0.91, 1e-15);
    EXPECT_NEAR(o.back(), 0.99, 1e-15);
}

TEST(Grids, ValidationRejectsShortOrUnsortedGrids) {
    Theorem1Options o;
    o.n_grid = {2, 4, 8};
    EXPECT_THROW(check_theorem1(o), ConfigError);
    o.n_grid = {2, 3, 4, 5, 6, 7, 9, 8};
    EXPECT_THROW(check_theorem1(o), ConfigError);
}

TEST(Theorem1, ConfirmedWithDefaults) {
    const auto r = check_theorem1({});
    EXPECT_EQ(r.verdict, Verdict::confirmed) << summarize_report(r);
    EXPECT_LT(r.values.back(), 0.01);
    EXPECT_FALSE(r.witness.has_value());
}

TEST(Theorem1, PreconditionsEnforced) {
    Theorem1Options o;
    o.alpha = 1.0;
    EXPECT_THROW(check_theorem1(o), ConfigError);
    o.alpha = 2.0;
    o.failure_prob = 0.2;
    EXPECT_THROW(check_theorem1(o), ConfigError);
}

TEST(Theorem1, ViolatedReportCarriesWitness) {
    Theorem1Options o;
    o.threshold = 1e-6;
    const auto r = check_theorem1(o);
    EXPECT_EQ(r.verdict, Verdict::violated);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(*r.witness, r.grid.back());
}

TEST(Decomposition, ComponentsConsistent) {
    const auto d = philip_decomposition(4, 0.05, {2, 2});
    EXPECT_NEAR(d.a - d.b, d.c, 1e-15);
    const double x = 2.0 * static_cast<double>(oracle::per_hop(0.05L, 4));
    EXPECT_NEAR(d.a, 1.0201394465967895 * static_cast<double>(oracle::erfc_inv(x)), 1e-12);
    EXPECT_EQ(check_decomposition().verdict, Verdict::confirmed);
}

TEST(Theorem2, RatioBelowOneAtTinyEps) {
    for (double alpha : {2.0, 3.0}) {
        for (int n : {3, 4, 6}) {
            Theorem2Options o;
            o.alpha = alpha;
            o.n = n;
            const auto r = check_theorem2(o);
            EXPECT_EQ(r.verdict, Verdict::confirmed) << summarize_report(r);
            EXPECT_NEAR(r.grid.back(), 1e-12, 1e-24);
            EXPECT_LT(r.values.back(), 1.0);
        }
    }
}

TEST(Theorem2, PreconditionOnHopCount) {
    Theorem2Options o;
    o.n = 2;
    EXPECT_THROW(check_theorem2(o), PreconditionError);
}

TEST(Theorem2, F2IsHopScaledExponential) {
    Theorem2Options o;
    const auto r = check_theorem2(o);
    const Series* f1 = r.find("f1");
    const Series* f2 = r.find("f2");
    ASSERT_NE(f1, nullptr);
    ASSERT_NE(f2, nullptr);
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
        EXPECT_NEAR(f2->values[i], std::pow(3.0, -1.0) * std::exp2(f1->values[i]), 1e-12);
    }
}

TEST(Theorem3, BothAxesDecreaseFrom2x2To64x64) {
    Theorem3Options o;
    o.failure_prob = 0.05;
    o.antenna_grid = {2, 4, 8, 12, 16, 24, 32, 48, 64};
    const auto r = check_theorem3(o);
    EXPECT_EQ(r.verdict, Verdict::confirmed) << summarize_report(r);
    for (std::size_t i = 1; i < r.values.size(); ++i) EXPECT_LT(r.values[i], r.values[i - 1]);
    EXPECT_NEAR(r.values.front(), 0.434, 1e-3);
}

TEST(Theorem3, TransmitOnlySweepIsNotMonotone) {
    Theorem3Options o;
    o.axis = AntennaSweep::transmit;
    const auto r = check_theorem3(o);
    EXPECT_EQ(r.verdict, Verdict::violated);
    EXPECT_TRUE(r.witness.has_value());
}

TEST(Theorem3, AntennaMapping) {
    EXPECT_EQ(antennas_for(AntennaSweep::transmit, 5, 2).n_t(), 5);
    EXPECT_EQ(antennas_for(AntennaSweep::transmit, 5, 2).n_r(), 2);
    EXPECT_EQ(antennas_for(AntennaSweep::receive, 5, 2).n_r(), 5);
    EXPECT_EQ(antennas_for(AntennaSweep::both, 5, 2).n_t(), 5);
}

TEST(Theorem4, PhilipRatioAtExtremeEps) {
    EXPECT_NEAR(philip_mult_ratio(2, 2.0, 1e-300, {2, 2}), 0.016820437056764361, 1e-12);
    Theorem4Options o;
    const auto r = check_theorem4(o);
    EXPECT_EQ(r.verdict, Verdict::confirmed) << summarize_report(r);
    EXPECT_LT(r.values.back(), 1.0);
}

TEST(Theorem4, RatioExceedsOneAtModerateEps) {
    const LineNetworkParams line(1.0, 2.0, 1.0, 2);
    EXPECT_NEAR(ratio_mult_to_short(line, {2, 2}, OutageTarget(4.0, 0.04)), 2.0078, 1e-3);
}

TEST(AppendixB, FrozenAndSigns) {
    EXPECT_NEAR(appendix_b_f(0.9 + 1e-12), 1.3871682789543431, 1e-9);
    EXPECT_LT(appendix_b_gprime(0.95), 0.0);
    EXPECT_THROW(appendix_b_f(0.9), DomainError);
    EXPECT_THROW(appendix_b_g(1.0), DomainError);
    const auto r = check_appendix_b(open_linear_grid(0.9, 1.0, 50));
    EXPECT_EQ(r.verdict, Verdict::confirmed) << summarize_report(r);
}

TEST(AppendixB, SeriesMatchesLogarithm) {
    EXPECT_NEAR(detail::power_series(0.5, 1, 200, true), std::log(2.0), 1e-15);
    EXPECT_NEAR(detail::power_series(0.5, 2, 200, false), 0.5, 1e-15);
}

TEST(AppendixC, PrefactorAndChain) {
    EXPECT_NEAR(appendix_c_prefactor(), 0.38628435838288469, 1e-15);
    const auto r = appendix_c_check();
    EXPECT_EQ(r.verdict, Verdict::confirmed) << summarize_report(r);
}

TEST(Serialization, WideAndLongFormats) {
    TrendReport r;
    r.title = "t";
    r.sweep_variable = "x";
    r.value_name = "v";
    r.grid = {1.0, 2.0};
    r.values = {0.5, 0.25};
    r.extra.push_back({"w", {3.0, 4.0}});
    std::ostringstream wide;
    write_report_csv(wide, r);
    EXPECT_EQ(wide.str(), "x,v,w\n1,0.5,3\n2,0.25,4\n");
    std::ostringstream rows;
    write_report_rows(rows, r);
    EXPECT_EQ(rows.str(), "t,x,1,v,0.5\nt,x,2,v,0.25\nt,x,1,w,3\nt,x,2,w,4\n");
}
