// Acceptance checks. One PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cbandit/cbandit.hpp"

using namespace cbandit;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

int failures = 0;

void check(const std::string& name, const std::function<Verdict()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!v.pass) ++failures;
    std::printf("%s %s: %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Ranks in A_m whose exact mean equals mu* up to 1e-12.
std::set<std::uint64_t> optimal_ranks(const Instance& inst, int m) {
    const double best = brute_force_optimal(inst, m).best_size_m;
    std::set<std::uint64_t> out;
    const auto size = action_space_size(inst.n(), m, inst.cardinality());
    for (std::uint64_t r = 0; r < size; ++r) {
        if (std::abs(exact_mean_reward(inst, unrank_action(r, inst.n(), m, inst.cardinality())) - best) <= 1e-12) out.insert(r);
    }
    return out;
}

bool unique_table_max(const Instance& inst) {
    const auto& means = inst.reward().means;
    const double mx = inst.max_reward_mean();
    return std::count(means.begin(), means.end(), mx) == 1;
}

Verdict max_size_suffices() {
    Rng rng(101);
    int instances = 0, comparisons = 0;
    double worst = 0.0;
    while (instances < 100) {
        GeneratorParams gp;
        gp.n = 2 + static_cast<int>(uniform_index(rng, 4));
        gp.cardinality = 2;
        gp.k = 1 + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(gp.n)));
        gp.edge_prob = 0.4;
        const auto inst = generate_random_instance(gp, rng);
        for (int m = 1; m <= gp.n; ++m) {
            const auto opt = brute_force_optimal(inst, m);
            worst = std::max(worst, std::abs(opt.best_overall - opt.best_size_m));
            ++comparisons;
        }
        ++instances;
    }
    return {worst <= 1e-12, fmt("%d instances, %d (instance, m) pairs, max |max_A - max_A_m| = %.3g", instances, comparisons, worst)};
}

Verdict census() {
    Rng rng(202);
    int checked = 0, mismatches = 0;
    while (checked < 50) {
        GeneratorParams gp;
        gp.n = 4 + static_cast<int>(uniform_index(rng, 3));
        gp.cardinality = 2 + static_cast<int>(uniform_index(rng, 2));
        gp.k = 1 + static_cast<int>(uniform_index(rng, 2));
        const auto inst = generate_random_instance(gp, rng);
        if (!unique_table_max(inst)) continue;
        const int m = gp.k + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(gp.n - gp.k + 1)));
        const auto count = optimal_ranks(inst, m).size();
        const std::uint64_t expect = checked_pow(static_cast<std::uint64_t>(gp.cardinality), static_cast<std::uint64_t>(m - gp.k)) *
                                     binomial(static_cast<std::uint64_t>(gp.n - gp.k), static_cast<std::uint64_t>(m - gp.k));
        const auto alpha = bounds::alpha_k(gp.n, gp.cardinality, gp.k, m);
        const auto total = action_space_size(gp.n, m, gp.cardinality);
        if (count != expect || count * alpha.den != total * alpha.num) ++mismatches;
        ++checked;
    }
    return {mismatches == 0, fmt("%d unique-optimum instances, %d count mismatches", checked, mismatches)};
}

Verdict subset_miss_rate() {
    const std::uint64_t T = 10'000;
    const int n = 8, l = 3, k = 1, m = 3;
    Rng gen(303);
    GeneratorParams gp;
    std::optional<Instance> inst;
    do {
        inst.emplace(generate_random_instance(gp, gen));
    } while (!unique_table_max(*inst));
    const auto opt = optimal_ranks(*inst, m);
    const double alpha = bounds::alpha_k(n, l, k, m).value();
    const auto draws = static_cast<std::uint64_t>(std::ceil(std::log(std::sqrt(static_cast<double>(T))) / alpha));
    const auto population = action_space_size(n, m, l);
    if (std::abs(static_cast<double>(opt.size()) / static_cast<double>(population) - alpha) > 1e-12) {
        return {false, "optimal fraction differs from alpha_k"};
    }
    const int trials = 10'000;
    int misses = 0;
    Rng rng(304);
    for (int i = 0; i < trials; ++i) {
        const auto ranks = sample_without_replacement(rng, population, draws);
        bool hit = false;
        for (auto r : ranks) hit = hit || opt.count(r) > 0;
        misses += hit ? 0 : 1;
    }
    const double freq = static_cast<double>(misses) / trials;
    const double sd = std::sqrt(freq * (1 - freq) / trials);
    const double limit = 1.0 / std::sqrt(static_cast<double>(T)) + 3 * sd;
    return {freq <= limit, fmt("%llu draws of %llu arms, miss frequency %.4f <= %.4f", (unsigned long long)draws,
                               (unsigned long long)population, freq, limit)};
}

Verdict schedule() {
    const auto s = compute_schedule(10'000, 8, 3, 3);
    const bool exact = s.phases == 6 && s.q == std::vector<std::uint64_t>{128, 64, 32, 16, 8, 4} &&
                       s.lengths == std::vector<std::uint64_t>{2048, 4096, 8192, 16384, 32768, 65536};
    Rng rng(404);
    int short_of_T = 0;
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t T = 4 + uniform_index(rng, 100'000'000);
        const int n = 1 + static_cast<int>(uniform_index(rng, 30));
        const int m = 1 + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n)));
        const int l = 1 + static_cast<int>(uniform_index(rng, 6));
        if (compute_schedule(T, n, m, l).total_length() < T) ++short_of_T;
    }
    return {exact && short_of_T == 0, fmt("example %s, %d of 1000 random tuples with sum(dT) < T", exact ? "exact" : "WRONG", short_of_T)};
}

Verdict identification() {
    const int n = 6, k = 2, runs = 200;
    const std::uint64_t size = action_space_size(n, k, 2);
    const std::uint64_t T = 50 * size;
    const std::uint64_t subsets = binomial(n, k);
    int wrong = 0;
    for (int r = 0; r < runs; ++r) {
        Rng rng(derive_seed(7, static_cast<std::uint64_t>(r), "identify"));
        const auto p = unrank_subset(uniform_index(rng, subsets), n, k);
        if (identify_parents_unif(build_tradeoff_instance(n, k, p), k, T, rng) != p) ++wrong;
    }
    return {wrong == 0, fmt("T = %llu, %d misidentified of %d runs", (unsigned long long)T, wrong, runs)};
}

ExperimentConfig headline_config() {
    ExperimentConfig c;
    c.n = 8;
    c.l = 3;
    c.k = 1;
    c.m = 3;
    c.T = 10'000;
    c.reps = 100;
    c.base_seed = 7;
    c.algorithms = {Policy::emp_known_plus, Policy::emp_unknown_plus, Policy::standard_ucb, Policy::alg1, Policy::alg2};
    return c;
}

double final_mean(const ExperimentResult& r, const std::string& algo) {
    const auto* a = r.summary.find(algo);
    if (!a || a->runs == 0) throw std::runtime_error("no completed runs for " + algo);
    return a->final_mean;
}

Verdict headline(const ExperimentResult& r) {
    const double ucb = final_mean(r, "ucb");
    const double ek = final_mean(r, "empknown+");
    const double eu = final_mean(r, "empunknown+");
    return {!r.summary.partial && ek <= ucb / 10 && eu <= ucb / 10,
            fmt("reps %d: ucb %.1f, empknown+ %.1f (x%.1f), empunknown+ %.1f (x%.1f)", r.config.reps, ucb, ek, ucb / ek, eu, ucb / eu)};
}

Verdict alg1_vs_alg2(const ExperimentResult& r) {
    const double a1 = final_mean(r, "alg1");
    const double a2 = final_mean(r, "alg2");
    const double ek = final_mean(r, "empknown+");
    const double eu = final_mean(r, "empunknown+");
    return {std::abs(a2 - a1) <= 0.5 * a1,
            fmt("alg1 %.1f, alg2 %.1f, |diff|/alg1 = %.2f (empknown+ %.1f, empunknown+ %.1f)", a1, a2, std::abs(a2 - a1) / a1, ek, eu)};
}

Verdict sublinear() {
    Rng gen(505);
    const auto inst = generate_random_instance(GeneratorParams{}, gen);
    double r1 = 0.0, r4 = 0.0;
    const int reps = 100;
    for (int rep = 0; rep < reps; ++rep) {
        Rng a(derive_seed(505, static_cast<std::uint64_t>(rep), "T"));
        Rng b(derive_seed(505, static_cast<std::uint64_t>(rep), "4T"));
        r1 += run_alg1_known_k(inst, 1, 3, 10'000, a).final_regret();
        r4 += run_alg1_known_k(inst, 1, 3, 40'000, b).final_regret();
    }
    r1 /= reps;
    r4 /= reps;
    return {r4 / r1 <= 3.0, fmt("R(1e4) = %.2f, R(4e4) = %.2f, ratio %.3f", r1, r4, r4 / r1)};
}

Verdict monotone_in_k() {
    ExperimentConfig c;
    c.n = 10;
    c.l = 2;
    c.m = 8;
    c.T = 30'000;
    c.reps = 30;
    c.base_seed = 7;
    c.algorithms = {Policy::alg1, Policy::alg2, Policy::standard_ucb};
    c.k = 1;
    const auto lo = run_experiment(c);
    c.k = 8;
    const auto hi = run_experiment(c);
    bool ok = !lo.summary.partial && !hi.summary.partial;
    std::string detail;
    for (const char* a : {"alg1", "alg2", "ucb"}) {
        const double x = final_mean(lo, a), y = final_mean(hi, a);
        ok = ok && x < y;
        detail += fmt("%s k=1 %.1f vs k=8 %.1f; ", a, x, y);
    }
    return {ok, detail.substr(0, detail.size() - 2)};
}

Verdict oracle_mc() {
    Rng rng(606);
    const int pairs = 20;
    const int N = 100'000;
    int bad = 0;
    double worst_z = 0.0;
    for (int i = 0; i < pairs; ++i) {
        GeneratorParams gp;
        gp.n = 4 + static_cast<int>(uniform_index(rng, 5));
        gp.cardinality = 2 + static_cast<int>(uniform_index(rng, 2));
        gp.k = 1 + static_cast<int>(uniform_index(rng, 3));
        gp.edge_prob = 0.35;
        gp.reward_kind = i % 2 ? RewardKind::gaussian : RewardKind::bernoulli;
        const auto inst = generate_random_instance(gp, rng);
        const int size = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(gp.n)));
        const auto a = unrank_action(uniform_index(rng, action_space_size(gp.n, size, gp.cardinality)), gp.n, size, gp.cardinality);
        const double mu = exact_mean_reward(inst, a);
        double s = 0.0, ss = 0.0;
        for (int t = 0; t < N; ++t) {
            const double y = sample(inst, a, rng).y;
            s += y;
            ss += y * y;
        }
        const double mean = s / N;
        const double se = std::sqrt(std::max(0.0, ss / N - mean * mean) / N);
        const double diff = std::abs(mean - mu);
        if (se == 0.0 ? diff > 1e-12 : diff > 4 * se) ++bad;
        if (se > 0) worst_z = std::max(worst_z, diff / se);
    }
    return {bad == 0, fmt("%d pairs, %d outside 4 standard errors, max z = %.2f", pairs, bad, worst_z)};
}

Verdict determinism() {
    const auto base = fs::temp_directory_path() / ("cbandit_accept_" + std::to_string(::getpid()));
    fs::remove_all(base);
    std::vector<std::string> outs;
    for (const char* sub : {"a", "b"}) {
        const auto dir = (base / sub).string();
        const std::vector<std::string> args{"cbandit", "run", "--n", "8", "--l", "3", "--k", "1", "--m", "3", "--T", "2000",
                                            "--reps", "3", "--algos", "empknown+,empunknown+,raps,ucb,alg1,alg2",
                                            "--seed", "7", "--out", dir};
        std::vector<const char*> argv;
        for (const auto& s : args) argv.push_back(s.c_str());
        std::ostringstream out, err;
        if (cli_main(static_cast<int>(argv.size()), argv.data(), out, err) != 0) return {false, "run failed: " + err.str()};
        outs.push_back(slurp(fs::path(dir) / "traces.csv"));
    }
    fs::remove_all(base);
    const bool same = outs[0] == outs[1] && !outs[0].empty();
    return {same, fmt("two runs, traces.csv %zu bytes, %s", outs[0].size(), same ? "byte-identical" : "DIFFERENT")};
}

}  // namespace

int main() {
    check("max-size-action-suffices", max_size_suffices);
    check("optimal-arm-census", census);
    check("random-subset-miss-rate", subset_miss_rate);
    check("schedule-arithmetic", schedule);
    check("parent-identification", identification);

    std::optional<ExperimentResult> head;
    check("headline-experiment", [&] {
        head.emplace(run_experiment(headline_config()));
        return headline(*head);
    });
    check("alg1-vs-alg2-k1", [&] {
        if (!head) return Verdict{false, "headline experiment did not run"};
        return alg1_vs_alg2(*head);
    });
    check("sublinearity", sublinear);
    check("monotone-in-k", monotone_in_k);
    check("oracle-monte-carlo", oracle_mc);
    check("determinism", determinism);

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
