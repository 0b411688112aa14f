#pragma once

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cbandit/bounds.hpp"
#include "cbandit/harness.hpp"

namespace cbandit {

namespace cli_detail {

inline std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

inline std::vector<std::uint64_t> parse_values(const std::string& s) {
    std::vector<std::uint64_t> out;
    for (const auto& item : split_csv(s)) {
        std::size_t pos = 0;
        const auto v = std::stoull(item, &pos);
        if (pos != item.size()) throw std::invalid_argument("not an integer: '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty value list");
    return out;
}

/// Flags shared by `run` and `sweep`. Only flags given on the command line
/// override values loaded from --config.
struct ExperimentFlags {
    std::string config_path;
    int n = 8, l = 3, k = 1, m = 3, reps = 100, workers = 1;
    std::uint64_t T = 10'000, seed = 7, raps_probes = 0;
    std::string algos = "empknown+,empunknown+,raps,ucb";
    double edge_prob = 0.0, beta = 0.7, raps_eps = 0.05, ucb_c = kDefaultUcbConstant;
    std::string reward = "bernoulli", sharing = "subset", out, instance;
    bool record_actions = false, unpaired = false, force_raps = false, full_action_set = false;

    std::vector<std::pair<std::string, CLI::Option*>> opts;

    void attach(CLI::App* app) {
        auto add = [&](const std::string& name, auto& target, const std::string& help) {
            opts.emplace_back(name, app->add_option(name, target, help));
        };
        auto flag = [&](const std::string& name, bool& target, const std::string& help) {
            opts.emplace_back(name, app->add_flag(name, target, help));
        };
        add("--config", config_path, "experiment config JSON (flags given explicitly override it)");
        add("--n", n, "number of variables");
        add("--l", l, "values per variable");
        add("--k", k, "number of reward parents");
        add("--m", m, "intervention size");
        add("--T", T, "horizon");
        add("--reps", reps, "repetitions");
        add("--algos", algos, "comma list of: empknown+, empunknown+, raps, ucb, alg1, alg2");
        add("--seed", seed, "base seed");
        add("--out", out, "output directory");
        add("--edge-prob", edge_prob, "Erdos-Renyi edge probability (default 2/n)");
        add("--beta", beta, "parent-effect parameter");
        add("--reward", reward, "bernoulli | gaussian");
        add("--instance", instance, "run every rep on this instance JSON");
        add("--raps-eps", raps_eps, "RAPS detection threshold");
        add("--raps-probes", raps_probes, "RAPS interventions per value (default ceil(ln 10 / eps^2))");
        add("--ucb-c", ucb_c, "UCB exploration constant c in sqrt(c ln t / N)");
        add("--sharing", sharing, "EmpKnownUCB+ sample sharing: subset | none");
        add("--workers", workers, "parallel repetitions");
        flag("--record-actions", record_actions, "keep played actions in memory");
        flag("--unpaired", unpaired, "draw a separate instance per algorithm");
        flag("--force-raps", force_raps, "run RAPS even when k > 1");
        flag("--full-action-set", full_action_set, "standard UCB over all actions of size <= m");
    }

    bool given(const std::string& name) const {
        for (const auto& [n_, o] : opts) {
            if (n_ == name) return o->count() > 0;
        }
        return false;
    }

    ExperimentConfig resolve() const {
        ExperimentConfig c = config_path.empty() ? ExperimentConfig{} : load_config(config_path);
        const bool base = config_path.empty();
        auto use = [&](const std::string& name) { return base || given(name); };
        if (use("--n")) c.n = n;
        if (use("--l")) c.l = l;
        if (use("--k")) c.k = k;
        if (use("--m")) c.m = m;
        if (use("--T")) c.T = T;
        if (use("--reps")) c.reps = reps;
        if (use("--seed")) c.base_seed = seed;
        if (use("--algos")) {
            c.algorithms.clear();
            for (const auto& a : split_csv(algos)) c.algorithms.push_back(parse_policy(a));
        }
        if (given("--edge-prob")) c.edge_prob = edge_prob;
        if (use("--beta")) c.beta = beta;
        if (use("--reward")) c.reward_kind = parse_reward_kind(reward);
        if (given("--instance")) c.instance_file = instance;
        if (use("--raps-eps")) c.raps_epsilon = raps_eps;
        if (given("--raps-probes")) c.raps_probe_count = raps_probes;
        if (use("--ucb-c")) c.ucb_constant = ucb_c;
        if (use("--sharing")) {
            if (sharing == "subset") c.sharing = SharingScope::chosen_subset;
            else if (sharing == "none") c.sharing = SharingScope::none;
            else throw std::invalid_argument("--sharing must be 'subset' or 'none'");
        }
        if (use("--workers")) c.workers = workers;
        if (given("--record-actions")) c.record_actions = record_actions;
        if (given("--unpaired")) c.paired_instances = !unpaired;
        if (given("--force-raps")) c.force_raps = force_raps;
        if (given("--full-action-set")) c.standard_ucb_full_action_set = full_action_set;
        if (given("--out")) c.output_dir = out;
        return c;
    }
};

inline void print_finals(std::ostream& os, const ExperimentResult& res) {
    os << std::left << std::setw(14) << "algorithm" << std::right << std::setw(8) << "runs" << std::setw(16)
       << "final_mean" << std::setw(16) << "final_std" << '\n';
    for (const auto& a : res.summary.algorithms) {
        os << std::left << std::setw(14) << a.algorithm << std::right << std::setw(8) << a.runs << std::setw(16)
           << std::fixed << std::setprecision(3) << a.final_mean << std::setw(16) << a.final_std << '\n';
    }
    os.unsetf(std::ios::floatfield);
    for (const auto& n : res.notes) os << "note: " << n << '\n';
    for (const auto& e : res.errors) os << "error: " << e << '\n';
}

}  // namespace cli_detail

/// Entry point of the `cbandit` tool. Returns 0 on success, 2 on usage
/// errors and 1 on runtime failures.
inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    using namespace cli_detail;
    CLI::App app{"Causal bandit simulations, bound tables and parent-identification studies", "cbandit"};
    app.require_subcommand(1);

    ExperimentFlags run_flags;
    auto* run = app.add_subcommand("run", "run an experiment and write traces/summary CSVs");
    run_flags.attach(run);

    ExperimentFlags sweep_flags;
    std::string vary, values;
    auto* sweep = app.add_subcommand("sweep", "final-regret table over a grid of one parameter");
    sweep_flags.attach(sweep);
    sweep->add_option("--vary", vary, "n | k | m | T")->required();
    sweep->add_option("--values", values, "comma list of values")->required();

    std::string bn = "8", bl = "3", bk = "1", bm = "3", bT = "10000", bcsv;
    auto* bnd = app.add_subcommand("bounds", "table of rate-only bound evaluators");
    bnd->add_option("--n", bn, "comma list");
    bnd->add_option("--l", bl, "comma list");
    bnd->add_option("--k", bk, "comma list");
    bnd->add_option("--m", bm, "comma list");
    bnd->add_option("--T", bT, "comma list");
    bnd->add_option("--csv", bcsv, "also write the table as CSV");

    int in_n = 6, in_k = 2, id_runs = 200;
    std::uint64_t id_T = 0, id_seed = 7;
    std::string id_csv;
    auto* ident = app.add_subcommand("identify", "uniform-sampling parent identification on trade-off instances");
    ident->add_option("--n", in_n, "number of variables");
    ident->add_option("--k", in_k, "number of reward parents (= intervention size)");
    ident->add_option("--T", id_T, "horizon (default 50 * |A_k|)");
    ident->add_option("--runs", id_runs, "independent runs");
    ident->add_option("--seed", id_seed, "base seed");
    ident->add_option("--csv", id_csv, "per-run CSV output");

    GeneratorParams gen;
    std::uint64_t gen_seed = 7;
    double gen_edge = -1.0;
    std::string gen_reward = "bernoulli", gen_out;
    auto* inst = app.add_subcommand("instance", "generate a random instance and write it as JSON");
    inst->add_option("--n", gen.n, "number of variables");
    inst->add_option("--l", gen.cardinality, "values per variable");
    inst->add_option("--k", gen.k, "number of reward parents");
    inst->add_option("--edge-prob", gen_edge, "edge probability (default 2/n)");
    inst->add_option("--beta", gen.beta, "parent-effect parameter");
    inst->add_option("--reward", gen_reward, "bernoulli | gaussian");
    inst->add_option("--seed", gen_seed, "seed");
    inst->add_option("--out", gen_out, "output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (run->parsed()) {
            const auto cfg = run_flags.resolve();
            const auto res = run_experiment(cfg);
            print_finals(out, res);
            if (!cfg.output_dir.empty()) {
                write_experiment(res, cfg.output_dir);
                out << "wrote " << cfg.output_dir << "/{traces.csv,summary.csv,config.json}\n";
            }
            return 0;
        }
        if (sweep->parsed()) {
            const auto cfg = sweep_flags.resolve();
            const auto param = parse_sweep_param(vary);
            const auto rows = run_sweep(cfg, param, parse_values(values));
            out << std::left << std::setw(6) << vary << std::setw(10) << "value" << std::setw(14) << "algorithm"
                << std::right << std::setw(16) << "mean_final" << std::setw(16) << "std_final" << '\n';
            for (const auto& r : rows) {
                out << std::left << std::setw(6) << r.vary << std::setw(10) << r.value << std::setw(14) << r.algorithm
                    << std::right << std::fixed << std::setprecision(3) << std::setw(16) << r.mean_final
                    << std::setw(16) << r.std_final << '\n';
            }
            out.unsetf(std::ios::floatfield);
            if (!cfg.output_dir.empty()) {
                const auto path = (std::filesystem::path(cfg.output_dir) / "sweep.csv").string();
                write_sweep_csv(rows, path);
                out << "wrote " << path << '\n';
            }
            return 0;
        }
        if (bnd->parsed()) {
            std::vector<bounds::BoundReport> reports;
            for (auto n : parse_values(bn))
                for (auto l : parse_values(bl))
                    for (auto k : parse_values(bk))
                        for (auto m : parse_values(bm))
                            for (auto T : parse_values(bT)) {
                                if (l < 2 || k > n || m < 1 || m > n || T < 1) continue;
                                reports.push_back(bounds::make_report(static_cast<int>(n), static_cast<int>(l),
                                                                      static_cast<int>(k), static_cast<int>(m), T));
                            }
            out << "# " << bounds::kRateCaveat << '\n';
            out << std::setw(4) << "n" << std::setw(4) << "l" << std::setw(4) << "k" << std::setw(4) << "m"
                << std::setw(10) << "T" << std::setw(7) << "regime" << std::setw(14) << "lb_known_k" << std::setw(14)
                << "ub_alg1" << std::setw(14) << "ub_alg2" << std::setw(12) << "alpha_k" << std::setw(12) << "N_k"
                << '\n';
            for (const auto& r : reports) {
                out << std::setw(4) << r.n << std::setw(4) << r.l << std::setw(4) << r.k << std::setw(4) << r.m
                    << std::setw(10) << r.T << std::setw(7) << r.regime << std::setprecision(6) << std::setw(14)
                    << r.lower << std::setw(14) << r.upper_alg1 << std::setw(14) << r.upper_alg2 << std::setw(12)
                    << r.alpha << std::setw(12) << r.n_k << '\n';
            }
            if (!bcsv.empty()) {
                auto f = detail::open_for_write(bcsv);
                f << "n,l,k,m,T,regime,lb_known_k,ub_alg1,ub_alg2,alpha_k,N_k,caveat\n";
                for (const auto& r : reports) {
                    f << r.n << ',' << r.l << ',' << r.k << ',' << r.m << ',' << r.T << ',' << r.regime << ','
                      << format_double(r.lower) << ',' << format_double(r.upper_alg1) << ','
                      << format_double(r.upper_alg2) << ',' << format_double(r.alpha) << ','
                      << format_double(r.n_k) << ',' << r.caveat << '\n';
                }
                detail::finish_write(f, bcsv);
            }
            return 0;
        }
        if (ident->parsed()) {
            const std::uint64_t size = action_space_size(in_n, in_k, 2);
            const std::uint64_t T = id_T ? id_T : 50 * size;
            const std::uint64_t subsets = binomial(static_cast<std::uint64_t>(in_n), static_cast<std::uint64_t>(in_k));
            int wrong = 0;
            std::ofstream csv;
            if (!id_csv.empty()) {
                csv = detail::open_for_write(id_csv);
                csv << "run,true_parents,estimated_parents,correct\n";
            }
            auto join = [](const std::vector<NodeIndex>& v) {
                std::string s;
                for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
                return s;
            };
            for (int r = 0; r < id_runs; ++r) {
                Rng rng(derive_seed(id_seed, static_cast<std::uint64_t>(r), "identify"));
                const auto p = unrank_subset(uniform_index(rng, subsets), in_n, in_k);
                const auto est = identify_parents_unif(build_tradeoff_instance(in_n, in_k, p), in_k, T, rng);
                const bool ok = est == p;
                wrong += ok ? 0 : 1;
                if (csv.is_open()) csv << r << ',' << join(p) << ',' << join(est) << ',' << (ok ? 1 : 0) << '\n';
            }
            if (csv.is_open()) detail::finish_write(csv, id_csv);
            out << "n=" << in_n << " k=" << in_k << " T=" << T << " |A_k|=" << size << " runs=" << id_runs
                << " misidentified=" << wrong << " rate=" << static_cast<double>(wrong) / id_runs << '\n';
            return 0;
        }
        if (inst->parsed()) {
            gen.edge_prob = gen_edge < 0.0 ? 2.0 / gen.n : gen_edge;
            gen.reward_kind = parse_reward_kind(gen_reward);
            Rng rng(gen_seed);
            save_instance(generate_random_instance(gen, rng), gen_out);
            out << "wrote " << gen_out << '\n';
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace cbandit
