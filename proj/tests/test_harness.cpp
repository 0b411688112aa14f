#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <unistd.h>

#include "cbandit/harness.hpp"

using namespace cbandit;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("cbandit_test_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::ifstream in(p);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.n = 5;
    c.l = 2;
    c.k = 1;
    c.m = 2;
    c.T = 300;
    c.reps = 4;
    c.base_seed = 123;
    c.algorithms = {Policy::emp_known_plus, Policy::alg2, Policy::standard_ucb};
    return c;
}

}  // namespace

TEST(Config, Defaults) {
    ExperimentConfig c;
    EXPECT_DOUBLE_EQ(c.resolved_edge_prob(), 0.25);
    EXPECT_DOUBLE_EQ(c.beta, 0.7);
    EXPECT_EQ(c.reward_kind, RewardKind::bernoulli);
    EXPECT_DOUBLE_EQ(c.raps_epsilon, 0.05);
    c.reps = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Config, JsonRoundTrip) {
    auto c = small_config();
    c.edge_prob = 0.4;
    c.raps_probe_count = 50;
    c.sharing = SharingScope::none;
    EXPECT_EQ(config_from_json(config_to_json(c)), c);
    EXPECT_THROW(config_from_json(nlohmann::json{{"bogus", 1}}), std::invalid_argument);
    EXPECT_THROW(config_from_json(nlohmann::json{{"algorithms", {"nope"}}}), std::invalid_argument);
}

TEST(Seeds, DependOnRepAndPolicy) {
    const auto c = small_config();
    EXPECT_EQ(instance_seed(c, 0, Policy::alg1), instance_seed(c, 0, Policy::alg2));
    EXPECT_NE(instance_seed(c, 0, Policy::alg1), instance_seed(c, 1, Policy::alg1));
    EXPECT_NE(run_seed(c, 0, Policy::alg1), run_seed(c, 0, Policy::alg2));
    auto u = c;
    u.paired_instances = false;
    EXPECT_NE(instance_seed(u, 0, Policy::alg1), instance_seed(u, 0, Policy::alg2));
}

TEST(Experiment, SingleRepHasZeroStd) {
    auto c = small_config();
    c.reps = 1;
    const auto res = run_experiment(c);
    for (const auto& a : res.summary.algorithms) {
        ASSERT_EQ(a.std_cumulative.size(), c.T);
        for (double s : a.std_cumulative) EXPECT_EQ(s, 0.0);
    }
}

TEST(Experiment, MeanWithinRunRange) {
    const auto res = run_experiment(small_config());
    for (std::size_t a = 0; a < res.algorithms.size(); ++a) {
        double lo = 1e300, hi = -1e300;
        for (const auto& tr : res.traces[a]) {
            lo = std::min(lo, tr->final_regret());
            hi = std::max(hi, tr->final_regret());
        }
        EXPECT_GE(res.summary.algorithms[a].final_mean, lo - 1e-12);
        EXPECT_LE(res.summary.algorithms[a].final_mean, hi + 1e-12);
        EXPECT_GE(res.summary.algorithms[a].final_std, 0.0);
    }
}

TEST(Experiment, RowCounts) {
    auto c = small_config();
    c.T = 3;
    c.reps = 2;
    c.algorithms = {Policy::standard_ucb};
    const auto dir = scratch("rows");
    write_experiment(run_experiment(c), dir.string());
    const auto traces = read_csv(dir / "traces.csv");
    ASSERT_EQ(traces.size(), 7u);
    EXPECT_EQ(traces[0], (std::vector<std::string>{"algorithm", "rep", "t", "instantaneous_regret", "cumulative_regret"}));
    const auto summary = read_csv(dir / "summary.csv");
    ASSERT_EQ(summary.size(), 4u);
    EXPECT_EQ(summary[0], (std::vector<std::string>{"algorithm", "t", "mean_cum_regret", "std_cum_regret"}));
    fs::remove_all(dir);
}

TEST(Experiment, SidecarRoundTrips) {
    auto c = small_config();
    c.reps = 1;
    c.T = 20;
    const auto dir = scratch("sidecar");
    write_experiment(run_experiment(c), dir.string());
    EXPECT_EQ(load_config((dir / "config.json").string()), c);
    const auto j = nlohmann::json::parse(slurp(dir / "config.json"));
    EXPECT_EQ(j.at("version"), kVersion);
    EXPECT_FALSE(j.at("partial").get<bool>());
    fs::remove_all(dir);
}

TEST(Experiment, RerunIsByteIdentical) {
    const auto c = small_config();
    const auto d1 = scratch("det1"), d2 = scratch("det2");
    write_experiment(run_experiment(c), d1.string());
    write_experiment(run_experiment(c), d2.string());
    EXPECT_EQ(slurp(d1 / "traces.csv"), slurp(d2 / "traces.csv"));
    EXPECT_EQ(slurp(d1 / "summary.csv"), slurp(d2 / "summary.csv"));
    fs::remove_all(d1);
    fs::remove_all(d2);
}

TEST(Experiment, WorkersDoNotChangeResults) {
    auto c = small_config();
    const auto seq = run_experiment(c);
    c.workers = 3;
    const auto par = run_experiment(c);
    for (std::size_t a = 0; a < seq.algorithms.size(); ++a) {
        for (std::size_t r = 0; r < seq.traces[a].size(); ++r) {
            EXPECT_EQ(seq.traces[a][r]->cumulative, par.traces[a][r]->cumulative);
        }
    }
}

TEST(Experiment, SummaryMatchesTracesCsv) {
    const auto c = small_config();
    const auto dir = scratch("agg");
    write_experiment(run_experiment(c), dir.string());
    std::map<std::pair<std::string, std::string>, std::vector<double>> by_round;
    const auto traces = read_csv(dir / "traces.csv");
    for (std::size_t i = 1; i < traces.size(); ++i) by_round[{traces[i][0], traces[i][2]}].push_back(std::stod(traces[i][4]));
    const auto summary = read_csv(dir / "summary.csv");
    ASSERT_EQ(summary.size(), 1 + by_round.size());
    for (std::size_t i = 1; i < summary.size(); ++i) {
        const auto& v = by_round.at({summary[i][0], summary[i][1]});
        double mean = 0;
        for (double x : v) mean += x;
        mean /= static_cast<double>(v.size());
        double ss = 0;
        for (double x : v) ss += (x - mean) * (x - mean);
        EXPECT_NEAR(std::stod(summary[i][2]), mean, 1e-9);
        EXPECT_NEAR(std::stod(summary[i][3]), std::sqrt(ss / static_cast<double>(v.size())), 1e-9);
    }
    fs::remove_all(dir);
}

TEST(Experiment, FailuresAreRecordedAsPartial) {
    auto c = small_config();
    c.instance_file = "/nonexistent/instance.json";
    const auto res = run_experiment(c);
    EXPECT_TRUE(res.summary.partial);
    EXPECT_EQ(res.errors.size(), static_cast<std::size_t>(c.reps * 3));
    EXPECT_NE(res.errors[0].find("/nonexistent/instance.json"), std::string::npos);
}

TEST(Experiment, RapsSkippedForLargeK) {
    auto c = small_config();
    c.k = 2;
    c.algorithms = {Policy::raps, Policy::alg1};
    c.reps = 1;
    auto res = run_experiment(c);
    EXPECT_EQ(res.algorithms, (std::vector<Policy>{Policy::alg1}));
    EXPECT_EQ(res.notes.size(), 1u);
    c.force_raps = true;
    res = run_experiment(c);
    EXPECT_EQ(res.algorithms.size(), 2u);
}

TEST(Experiment, InstanceFileIsUsed) {
    const auto dir = scratch("inst");
    Rng rng(5);
    GeneratorParams gp;
    gp.n = 5;
    gp.cardinality = 2;
    const auto inst = generate_random_instance(gp, rng);
    save_instance(inst, (dir / "i.json").string());
    auto c = small_config();
    c.instance_file = (dir / "i.json").string();
    c.reps = 2;
    c.algorithms = {Policy::standard_ucb};
    const auto res = run_experiment(c);
    EXPECT_TRUE(res.errors.empty());
    EXPECT_DOUBLE_EQ(res.traces[0][0]->optimal_mean, optimal_mean_reward(inst, c.m));
    fs::remove_all(dir);
}

TEST(Sweep, OneRowPerValueAndAlgorithm) {
    auto c = small_config();
    c.reps = 2;
    c.T = 100;
    const auto rows = run_sweep(c, SweepParam::m, {1, 2, 3});
    ASSERT_EQ(rows.size(), 9u);
    EXPECT_EQ(rows[0].vary, "m");
    EXPECT_EQ(rows[8].value, 3u);
    EXPECT_THROW(parse_sweep_param("l"), std::invalid_argument);
}

TEST(Output, FormatDouble) {
    EXPECT_EQ(format_double(0.5), "0.5");
    EXPECT_EQ(format_double(0.0), "0");
    EXPECT_EQ(std::stod(format_double(0.1 + 0.2)), 0.1 + 0.2);
}

TEST(Output, UnwritablePathNamesThePath) {
    auto c = small_config();
    c.reps = 1;
    c.T = 5;
    const auto res = run_experiment(c);
    try {
        write_traces_csv(res, "/proc/cbandit_no_such/traces.csv");
        FAIL();
    } catch (const std::runtime_error& e) {
        EXPECT_NE(std::string(e.what()).find("/proc/cbandit_no_such"), std::string::npos);
    }
}
