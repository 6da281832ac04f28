#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli/app.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "mimohop");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = mimohop::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> data_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line[0] != '#') lines.push_back(line);
    }
    return lines;
}

}  // namespace

using namespace mimohop::cli;

TEST(SweepParsing, RangeAndList) {
    const auto lin = parse_sweep("nt:1:32:32:linear");
    EXPECT_EQ(lin.variable, "nt");
    EXPECT_EQ(lin.values.size(), 32u);
    EXPECT_EQ(lin.values.back(), 32.0);
    const auto list = parse_sweep("snr:1,5,10,20");
    EXPECT_EQ(list.values, (std::vector<double>{1, 5, 10, 20}));
    const auto geo = parse_sweep("n:1:64:20:geometric");
    for (std::size_t i = 1; i < geo.values.size(); ++i) EXPECT_GT(geo.values[i], geo.values[i - 1]);
}

TEST(SweepParsing, PrLogScaleIsLogInEps) {
    const auto s = parse_sweep("pr:0.9:0.9999:4:log");
    ASSERT_EQ(s.values.size(), 4u);
    EXPECT_NEAR(1.0 - s.values[0], 1e-1, 1e-15);
    EXPECT_NEAR(1.0 - s.values[1], 1e-2, 1e-15);
    EXPECT_NEAR(1.0 - s.values[2], 1e-3, 1e-15);
    EXPECT_NEAR(1.0 - s.values[3], 1e-4, 1e-15);
}

TEST(SweepParsing, Errors) {
    EXPECT_THROW(parse_sweep("pr"), mimohop::ConfigError);
    EXPECT_THROW(parse_sweep("seed:1,2"), mimohop::ConfigError);
    EXPECT_THROW(parse_sweep("nt:1:4:4:cubic"), mimohop::ConfigError);
    EXPECT_THROW(parse_sweep("alpha:3:2:4:linear"), mimohop::ConfigError);
    EXPECT_THROW(parse_sweep("rate:0:2:4:log"), mimohop::ConfigError);
}

TEST(ConfigKeys, ParseAndValidate) {
    ExperimentConfig c;
    set_key(c, "phi", "pi/4");
    EXPECT_NEAR(c.phi, M_PI / 4, 1e-15);
    set_key(c, "pr", "0.99");
    EXPECT_NEAR(c.eps, 0.01, 1e-15);
    EXPECT_THROW(set_key(c, "nt", "2.5"), mimohop::ConfigError);
    EXPECT_THROW(set_key(c, "mode", "fast"), mimohop::ConfigError);
    EXPECT_THROW(set_key(c, "bogus", "1"), mimohop::ConfigError);
    EXPECT_THROW(set_key(c, "alpha", "2x"), mimohop::ConfigError);
}

TEST(Presets, AllPresetsApplyCleanly) {
    for (const auto& p : presets()) {
        ExperimentConfig c;
        for (const auto& [k, v] : p.settings) EXPECT_NO_THROW(set_key(c, k, v)) << p.name << ' ' << k;
        if (!c.sweep.empty()) {
            EXPECT_NO_THROW(parse_sweep(c.sweep)) << p.name;
        }
        if (!c.family.empty()) {
            EXPECT_NO_THROW(parse_sweep(c.family)) << p.name;
        }
    }
    EXPECT_THROW(find_preset("nope"), mimohop::ConfigError);
}

TEST(Presets, EnergyPppParameters) {
    ExperimentConfig c;
    for (const auto& [k, v] : find_preset("fig-energy-ppp").settings) set_key(c, k, v);
    EXPECT_EQ(c.nodes, 30);
    EXPECT_NEAR(c.phi, M_PI / 2, 1e-15);
    EXPECT_NEAR(c.eps, 0.08, 1e-15);
    EXPECT_EQ(c.rate, 2.0);
    EXPECT_EQ(c.trials, 10000);
}

TEST(Cli, LineCompareSingleRow) {
    const auto r = run({"line-compare", "--n", "3", "--pr", "0.95"});
    EXPECT_EQ(r.code, 0);
    const auto lines = data_lines(r.out);
    ASSERT_EQ(lines.size(), 2u);
    EXPECT_EQ(lines[0], "status,e_s,e_m,ratio,upper_bound,philip_ratio,e_s_mult,ratio_mult_to_short");
    EXPECT_EQ(lines[1].rfind("ok,72.9365979065", 0), 0u);
    EXPECT_NE(r.out.find("# command=line-compare\n"), std::string::npos);
    EXPECT_EQ(r.out.find('\r'), std::string::npos);
}

TEST(Cli, PrecedenceFlagsOverConfigOverPreset) {
    const std::string path = ::testing::TempDir() + "mimohop_cli_test.cfg";
    {
        std::ofstream f(path);
        f << "# comment\npreset = fig-sublinear-n4\nrate = 8\nalpha=3\n";
    }
    const auto r = run({"line-compare", "--config", path, "--alpha", "2.5", "--sweep", "pr:0.95,0.99"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("# preset=fig-sublinear-n4\n"), std::string::npos);
    EXPECT_NE(r.out.find("# n=4\n"), std::string::npos);
    EXPECT_NE(r.out.find("# rate=8\n"), std::string::npos);
    EXPECT_NE(r.out.find("# alpha=2.5\n"), std::string::npos);
    EXPECT_EQ(data_lines(r.out).size(), 3u);
    std::remove(path.c_str());
}

TEST(Cli, PresetSuppliesCommandAndFamily) {
    const auto r = run({"--preset", "fig-loose-qos"});
    EXPECT_EQ(r.code, 0) << r.err;
    const auto lines = data_lines(r.out);
    EXPECT_EQ(lines.size(), 1u + 3u * 32u);
    EXPECT_EQ(lines[0].rfind("pr,nt,status,", 0), 0u);
}

TEST(Cli, InfeasibleRowsMarkedAndExitThree) {
    const auto r = run({"line-compare", "--rate", "0.1", "--sweep", "pr:0.3,0.9"});
    EXPECT_EQ(r.code, kInfeasible);
    const auto lines = data_lines(r.out);
    ASSERT_EQ(lines.size(), 3u);
    EXPECT_NE(lines[1].find(",infeasible,nan"), std::string::npos);
    EXPECT_NE(lines[2].find(",ok,"), std::string::npos);
}

TEST(Cli, ConfigErrorsExitTwo) {
    EXPECT_EQ(run({"line-compare", "--alpha", "abc"}).code, kConfigError);
    EXPECT_EQ(run({"line-compare", "--preset", "missing"}).code, kConfigError);
    EXPECT_EQ(run({"not-a-command"}).code, kConfigError);
    EXPECT_EQ(run({"line-compare", "--config", "/nonexistent/file"}).code, kConfigError);
    EXPECT_EQ(run({"theorem", "--which", "2", "--n", "2"}).code, kConfigError);
    EXPECT_EQ(run({"rand-compare", "--alpha", "4", "--phi", "3", "--n", "10"}).code, kConfigError);
}

TEST(Cli, HelpExitsZero) {
    const auto r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("--sweep"), std::string::npos);
}

TEST(Cli, TheoremOutputHasSummaryAndRows) {
    const auto r = run({"theorem", "--which", "c"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("# appendix_c: confirmed"), std::string::npos);
    EXPECT_NE(r.out.find("report,sweep_variable,grid,series,value\n"), std::string::npos);
}

TEST(Cli, PppSimDeterministicAcrossThreads) {
    const std::vector<std::string> base{"ppp-sim", "--trials", "600", "--sweep", "n:2,3", "--seed", "5"};
    auto one = base;
    one.insert(one.end(), {"--threads", "1"});
    auto many = base;
    many.insert(many.end(), {"--threads", "3"});
    const auto a = run(one);
    const auto b = run(many);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out, run({"ppp-sim", "--trials", "600", "--sweep", "n:2,3", "--seed", "6"}).out);
}

TEST(Cli, PppSimWritesArtifacts) {
    const std::string stem = ::testing::TempDir() + "mimohop_ppp";
    const auto r = run({"ppp-sim", "--trials", "50", "--n", "2", "--out", stem + ".csv"});
    EXPECT_EQ(r.code, 0) << r.err;
    for (const char* suffix : {".csv", ".csv.points.csv", ".csv.route_a.csv", ".csv.route_b.csv"}) {
        std::ifstream f(stem + suffix);
        EXPECT_TRUE(f.good()) << suffix;
        std::remove((stem + suffix).c_str());
    }
}

TEST(Cli, McValidateAutoRateUsesPilotMean) {
    const auto r = run({"mc-validate", "--trials", "20000", "--mc_rate", "auto", "--sweep", "snr:5"});
    EXPECT_EQ(r.code, 0) << r.err;
    const auto lines = data_lines(r.out);
    ASSERT_EQ(lines.size(), 2u);
    EXPECT_EQ(lines[0], "snr,status,nt,nr,rate,p_empirical,std_error,p_gaussian,abs_diff,mi_mean,trials");
}

TEST(Cli, ListPresets) {
    const auto r = run({"list-presets"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("fig-energy-ppp,ppp-sim,"), std::string::npos);
}
