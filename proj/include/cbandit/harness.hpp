#pragma once

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "cbandit/algorithms.hpp"
#include "cbandit/random.hpp"
#include "cbandit/scm.hpp"
#include "cbandit/scm_io.hpp"

namespace cbandit {

inline constexpr const char* kVersion = "cbandit 1.0.0";

struct ExperimentConfig {
    int n = 8;
    int l = 3;
    int k = 1;
    int m = 3;
    std::uint64_t T = 10'000;
    int reps = 100;
    std::uint64_t base_seed = 7;
    std::vector<Policy> algorithms{Policy::emp_known_plus, Policy::emp_unknown_plus, Policy::raps, Policy::standard_ucb};

    std::optional<double> edge_prob;  // defaults to 2/n
    double beta = 0.7;
    RewardKind reward_kind = RewardKind::bernoulli;
    /// When set, every rep runs on this instance instead of a fresh random one.
    std::string instance_file;

    double raps_epsilon = 0.05;
    std::optional<std::uint64_t> raps_probe_count;
    bool force_raps = false;

    double ucb_constant = kDefaultUcbConstant;
    SharingScope sharing = SharingScope::chosen_subset;
    bool standard_ucb_full_action_set = false;
    bool record_actions = false;
    bool paired_instances = true;
    int workers = 1;

    std::string output_dir;

    double resolved_edge_prob() const { return edge_prob.value_or(2.0 / n); }

    void validate() const {
        if (n < 1) throw std::invalid_argument("config: n must be >= 1");
        if (l < 1) throw std::invalid_argument("config: l must be >= 1");
        if (k < 1 || k > n) throw std::invalid_argument("config: need 1 <= k <= n");
        if (m < 1 || m > n) throw std::invalid_argument("config: need 1 <= m <= n");
        if (T < 1) throw std::invalid_argument("config: T must be >= 1");
        if (reps < 1) throw std::invalid_argument("config: reps must be >= 1");
        if (algorithms.empty()) throw std::invalid_argument("config: no algorithms requested");
        if (workers < 1) throw std::invalid_argument("config: workers must be >= 1");
        const double p = resolved_edge_prob();
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("config: edge_prob must lie in [0, 1]");
        if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("config: beta must lie in [0, 1]");
        if (!(raps_epsilon > 0.0)) throw std::invalid_argument("config: raps_epsilon must be > 0");
    }

    PolicyOptions policy_options() const {
        PolicyOptions o;
        o.ucb_constant = ucb_constant;
        o.record_actions = record_actions;
        o.standard_ucb_full_action_set = standard_ucb_full_action_set;
        o.sharing = sharing;
        o.raps_epsilon = raps_epsilon;
        o.raps_probe_count = raps_probe_count;
        return o;
    }

    GeneratorParams generator() const { return {n, l, k, resolved_edge_prob(), beta, reward_kind}; }

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

inline nlohmann::json config_to_json(const ExperimentConfig& c) {
    nlohmann::json algos = nlohmann::json::array();
    for (auto p : c.algorithms) algos.push_back(to_string(p));
    nlohmann::json j{
        {"n", c.n},
        {"l", c.l},
        {"k", c.k},
        {"m", c.m},
        {"T", c.T},
        {"reps", c.reps},
        {"base_seed", c.base_seed},
        {"algorithms", algos},
        {"edge_prob", c.edge_prob ? nlohmann::json(*c.edge_prob) : nlohmann::json(nullptr)},
        {"beta", c.beta},
        {"reward_kind", to_string(c.reward_kind)},
        {"instance_file", c.instance_file},
        {"raps_epsilon", c.raps_epsilon},
        {"raps_probe_count", c.raps_probe_count ? nlohmann::json(*c.raps_probe_count) : nlohmann::json(nullptr)},
        {"force_raps", c.force_raps},
        {"ucb_constant", c.ucb_constant},
        {"sharing", c.sharing == SharingScope::none ? "none" : "subset"},
        {"standard_ucb_full_action_set", c.standard_ucb_full_action_set},
        {"record_actions", c.record_actions},
        {"paired_instances", c.paired_instances},
        {"workers", c.workers},
        {"output_dir", c.output_dir},
    };
    return j;
}

/// Missing keys keep their defaults; unknown keys are rejected.
inline ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        const auto& v = it.value();
        if (key == "n") c.n = v.get<int>();
        else if (key == "l") c.l = v.get<int>();
        else if (key == "k") c.k = v.get<int>();
        else if (key == "m") c.m = v.get<int>();
        else if (key == "T") c.T = v.get<std::uint64_t>();
        else if (key == "reps") c.reps = v.get<int>();
        else if (key == "base_seed") c.base_seed = v.get<std::uint64_t>();
        else if (key == "algorithms") {
            c.algorithms.clear();
            for (const auto& a : v) c.algorithms.push_back(parse_policy(a.get<std::string>()));
        } else if (key == "edge_prob") {
            c.edge_prob = v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
        } else if (key == "beta") c.beta = v.get<double>();
        else if (key == "reward_kind") c.reward_kind = parse_reward_kind(v.get<std::string>());
        else if (key == "instance_file") c.instance_file = v.get<std::string>();
        else if (key == "raps_epsilon") c.raps_epsilon = v.get<double>();
        else if (key == "raps_probe_count") {
            c.raps_probe_count = v.is_null() ? std::nullopt : std::optional<std::uint64_t>(v.get<std::uint64_t>());
        } else if (key == "force_raps") c.force_raps = v.get<bool>();
        else if (key == "ucb_constant") c.ucb_constant = v.get<double>();
        else if (key == "sharing") {
            const auto s = v.get<std::string>();
            if (s == "none") c.sharing = SharingScope::none;
            else if (s == "subset") c.sharing = SharingScope::chosen_subset;
            else throw std::invalid_argument("config: sharing must be 'subset' or 'none'");
        } else if (key == "standard_ucb_full_action_set") c.standard_ucb_full_action_set = v.get<bool>();
        else if (key == "record_actions") c.record_actions = v.get<bool>();
        else if (key == "paired_instances") c.paired_instances = v.get<bool>();
        else if (key == "workers") c.workers = v.get<int>();
        else if (key == "output_dir") c.output_dir = v.get<std::string>();
        else throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    return c;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config '" + path + "'");
    try {
        const auto j = nlohmann::json::parse(in);
        // Sidecars wrap the config next to the version string.
        return config_from_json(j.contains("config") ? j.at("config") : j);
    } catch (const std::exception& e) {
        throw std::runtime_error("config '" + path + "': " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Running
// ---------------------------------------------------------------------------

struct AlgorithmSummary {
    std::string algorithm;
    std::size_t runs = 0;                  // reps that completed
    std::vector<double> mean_cumulative;   // per round
    std::vector<double> std_cumulative;    // population std across reps
    double final_mean = 0.0;
    double final_std = 0.0;
};

struct SummaryStats {
    std::vector<AlgorithmSummary> algorithms;
    bool partial = false;

    const AlgorithmSummary* find(const std::string& name) const {
        for (const auto& a : algorithms) {
            if (a.algorithm == name) return &a;
        }
        return nullptr;
    }
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<Policy> algorithms;                          // after skips
    std::vector<std::vector<std::optional<RegretTrace>>> traces;  // [algorithm][rep]
    std::vector<std::string> errors;
    std::vector<std::string> notes;
    SummaryStats summary;
};

inline std::uint64_t instance_seed(const ExperimentConfig& c, int rep, Policy p) {
    if (c.paired_instances) return derive_seed(c.base_seed, static_cast<std::uint64_t>(rep), "inst");
    return derive_seed(c.base_seed, static_cast<std::uint64_t>(rep), "inst", to_string(p).c_str());
}

inline std::uint64_t run_seed(const ExperimentConfig& c, int rep, Policy p) {
    return derive_seed(c.base_seed, static_cast<std::uint64_t>(rep), to_string(p).c_str(), "run");
}

inline Instance instance_for_rep(const ExperimentConfig& c, int rep, Policy p) {
    if (!c.instance_file.empty()) return load_instance(c.instance_file);
    Rng rng(instance_seed(c, rep, p));
    return generate_random_instance(c.generator(), rng);
}

inline SummaryStats summarize(const std::vector<Policy>& algos,
                              const std::vector<std::vector<std::optional<RegretTrace>>>& traces, std::uint64_t T) {
    SummaryStats s;
    for (std::size_t a = 0; a < algos.size(); ++a) {
        AlgorithmSummary out;
        out.algorithm = to_string(algos[a]);
        std::vector<const RegretTrace*> ok;
        for (const auto& t : traces[a]) {
            if (t) ok.push_back(&*t);
            else s.partial = true;
        }
        out.runs = ok.size();
        if (!ok.empty()) {
            out.mean_cumulative.assign(T, 0.0);
            out.std_cumulative.assign(T, 0.0);
            const double cnt = static_cast<double>(ok.size());
            for (std::uint64_t t = 0; t < T; ++t) {
                double sum = 0.0;
                for (const auto* tr : ok) sum += tr->cumulative[t];
                const double mean = sum / cnt;
                double ss = 0.0;
                for (const auto* tr : ok) ss += (tr->cumulative[t] - mean) * (tr->cumulative[t] - mean);
                out.mean_cumulative[t] = mean;
                out.std_cumulative[t] = std::sqrt(ss / cnt);
            }
            out.final_mean = out.mean_cumulative.back();
            out.final_std = out.std_cumulative.back();
        }
        s.algorithms.push_back(std::move(out));
    }
    return s;
}

/// Runs every requested policy for every rep. Seeds derive from (base_seed,
/// rep, policy), so the worker count never changes the output.
inline ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    ExperimentResult res;
    res.config = config;
    for (auto p : config.algorithms) {
        if (p == Policy::raps && config.k > 1 && !config.force_raps) {
            res.notes.push_back("raps skipped: k > 1 (pass --force-raps to run it)");
            continue;
        }
        res.algorithms.push_back(p);
    }
    const auto A = res.algorithms.size();
    res.traces.assign(A, std::vector<std::optional<RegretTrace>>(static_cast<std::size_t>(config.reps)));
    std::vector<std::vector<std::string>> errors(static_cast<std::size_t>(config.reps));
    const PolicyOptions opts = config.policy_options();

    std::atomic<int> next{0};
    auto worker = [&] {
        for (int rep = next++; rep < config.reps; rep = next++) {
            std::optional<Instance> shared;
            for (std::size_t a = 0; a < A; ++a) {
                const Policy p = res.algorithms[a];
                try {
                    if (!shared) shared.emplace(instance_for_rep(config, rep, p));
                    Rng rng(run_seed(config, rep, p));
                    res.traces[a][static_cast<std::size_t>(rep)] = run_policy(p, *shared, config.k, config.m, config.T, rng, opts);
                } catch (const std::exception& e) {
                    errors[static_cast<std::size_t>(rep)].push_back("rep " + std::to_string(rep) + " " + to_string(p) + ": " + e.what());
                }
                if (!config.paired_instances) shared.reset();
            }
        }
    };
    const int nthreads = std::min(config.workers, config.reps);
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    }
    for (auto& e : errors) res.errors.insert(res.errors.end(), e.begin(), e.end());
    res.summary = summarize(res.algorithms, res.traces, config.T);
    return res;
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

/// Shortest round-trip decimal form, independent of the global locale.
inline std::string format_double(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

namespace detail {
inline std::ofstream open_for_write(const std::string& path) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(parent, ec);
        if (ec) throw std::runtime_error("cannot create directory '" + parent.string() + "': " + ec.message());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    return out;
}

inline void finish_write(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}
}  // namespace detail

/// algorithm,rep,t,instantaneous_regret,cumulative_regret (t is 1-based).
inline void write_traces_csv(const ExperimentResult& res, const std::string& path) {
    auto out = detail::open_for_write(path);
    out << "algorithm,rep,t,instantaneous_regret,cumulative_regret\n";
    for (std::size_t a = 0; a < res.algorithms.size(); ++a) {
        const auto name = to_string(res.algorithms[a]);
        for (std::size_t rep = 0; rep < res.traces[a].size(); ++rep) {
            const auto& tr = res.traces[a][rep];
            if (!tr) continue;
            for (std::size_t t = 0; t < tr->size(); ++t) {
                out << name << ',' << rep << ',' << (t + 1) << ',' << format_double(tr->instantaneous[t]) << ','
                    << format_double(tr->cumulative[t]) << '\n';
            }
        }
    }
    detail::finish_write(out, path);
}

/// algorithm,t,mean_cum_regret,std_cum_regret
inline void write_summary_csv(const SummaryStats& stats, const std::string& path) {
    auto out = detail::open_for_write(path);
    out << "algorithm,t,mean_cum_regret,std_cum_regret\n";
    for (const auto& a : stats.algorithms) {
        for (std::size_t t = 0; t < a.mean_cumulative.size(); ++t) {
            out << a.algorithm << ',' << (t + 1) << ',' << format_double(a.mean_cumulative[t]) << ','
                << format_double(a.std_cumulative[t]) << '\n';
        }
    }
    detail::finish_write(out, path);
}

inline void write_config_sidecar(const ExperimentResult& res, const std::string& path) {
    auto out = detail::open_for_write(path);
    nlohmann::json j{{"version", kVersion},
                     {"config", config_to_json(res.config)},
                     {"partial", res.summary.partial},
                     {"errors", res.errors},
                     {"notes", res.notes}};
    out << j.dump(2) << '\n';
    detail::finish_write(out, path);
}

/// traces.csv, summary.csv and config.json under `dir`.
inline void write_experiment(const ExperimentResult& res, const std::string& dir) {
    const std::filesystem::path d(dir);
    write_traces_csv(res, (d / "traces.csv").string());
    write_summary_csv(res.summary, (d / "summary.csv").string());
    write_config_sidecar(res, (d / "config.json").string());
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

enum class SweepParam { n, k, m, T };

inline SweepParam parse_sweep_param(const std::string& s) {
    if (s == "n") return SweepParam::n;
    if (s == "k") return SweepParam::k;
    if (s == "m") return SweepParam::m;
    if (s == "T") return SweepParam::T;
    throw std::invalid_argument("sweep: --vary must be one of n, k, m, T");
}

inline std::string to_string(SweepParam p) {
    switch (p) {
        case SweepParam::n: return "n";
        case SweepParam::k: return "k";
        case SweepParam::m: return "m";
        case SweepParam::T: return "T";
    }
    return "?";
}

struct SweepRow {
    std::string vary;
    std::uint64_t value = 0;
    std::string algorithm;
    double mean_final = 0.0;
    double std_final = 0.0;
    std::size_t runs = 0;
};

inline ExperimentConfig with_param(ExperimentConfig c, SweepParam p, std::uint64_t v) {
    switch (p) {
        case SweepParam::n: c.n = static_cast<int>(v); break;
        case SweepParam::k: c.k = static_cast<int>(v); break;
        case SweepParam::m: c.m = static_cast<int>(v); break;
        case SweepParam::T: c.T = v; break;
    }
    return c;
}

inline std::vector<SweepRow> run_sweep(const ExperimentConfig& base, SweepParam param,
                                       const std::vector<std::uint64_t>& values) {
    std::vector<SweepRow> rows;
    for (auto v : values) {
        const auto res = run_experiment(with_param(base, param, v));
        for (const auto& a : res.summary.algorithms) {
            rows.push_back({to_string(param), v, a.algorithm, a.final_mean, a.final_std, a.runs});
        }
    }
    return rows;
}

/// vary,value,algorithm,mean_final_regret,std_final_regret,runs
inline void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    auto out = detail::open_for_write(path);
    out << "vary,value,algorithm,mean_final_regret,std_final_regret,runs\n";
    for (const auto& r : rows) {
        out << r.vary << ',' << r.value << ',' << r.algorithm << ',' << format_double(r.mean_final) << ','
            << format_double(r.std_final) << ',' << r.runs << '\n';
    }
    detail::finish_write(out, path);
}

}  // namespace cbandit
