#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "cbandit/bandit_core.hpp"
#include "cbandit/combinatorics.hpp"
#include "cbandit/scm.hpp"

namespace cbandit {

// ---------------------------------------------------------------------------
// Regret accounting
// ---------------------------------------------------------------------------

struct RegretTrace {
    double optimal_mean = 0.0;
    std::vector<double> instantaneous;  // mu* - mu_{a_t}, clamped at 0
    std::vector<double> cumulative;
    std::vector<Action> actions;  // filled only when requested

    std::size_t size() const { return instantaneous.size(); }
    double final_regret() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
};

class RegretRecorder {
public:
    RegretRecorder(std::uint64_t horizon, double optimal_mean, bool record_actions) : record_actions_(record_actions) {
        trace_.optimal_mean = optimal_mean;
        trace_.instantaneous.reserve(horizon);
        trace_.cumulative.reserve(horizon);
    }

    void push(const Action& played, double mean) {
        const double gap = std::max(0.0, trace_.optimal_mean - mean);
        trace_.instantaneous.push_back(gap);
        trace_.cumulative.push_back(trace_.cumulative.empty() ? gap : trace_.cumulative.back() + gap);
        if (record_actions_) trace_.actions.push_back(played);
    }

    std::uint64_t rounds() const { return trace_.instantaneous.size(); }
    RegretTrace finish() && { return std::move(trace_); }

private:
    bool record_actions_;
    RegretTrace trace_;
};

/// Memoized exact means keyed by (action size, rank).
class MeanOracle {
public:
    MeanOracle(const Instance& inst, std::uint64_t budget = kDefaultEnumerationBudget) : inst_(&inst), budget_(budget) {}

    double operator()(const Action& a) {
        auto& cache = by_size_[a.size()];
        const std::uint64_t key = rank_action(a, inst_->n(), inst_->cardinality());
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        const double mu = exact_mean_reward(*inst_, a, budget_);
        cache.emplace(key, mu);
        return mu;
    }

private:
    const Instance* inst_;
    std::uint64_t budget_;
    std::map<std::size_t, std::unordered_map<std::uint64_t, double>> by_size_;
};

// ---------------------------------------------------------------------------
// Options shared by the policies
// ---------------------------------------------------------------------------

enum class SharingScope { chosen_subset, none };

struct PolicyOptions {
    double ucb_constant = kDefaultUcbConstant;
    bool record_actions = false;
    /// Standard UCB over every action of size <= m instead of A_m only.
    bool standard_ucb_full_action_set = false;
    SharingScope sharing = SharingScope::chosen_subset;
    double raps_epsilon = 0.05;
    /// Per-value probe count for RAPS; defaults to ceil(ln(10) / eps^2).
    std::optional<std::uint64_t> raps_probe_count;
    std::uint64_t enumeration_budget = kDefaultEnumerationBudget;
    std::uint64_t action_budget = 1'000'000;
};

namespace detail {

inline void check_common(const Instance& inst, int m, std::uint64_t T) {
    if (m < 1 || m > inst.n()) throw std::invalid_argument("policy: need 1 <= m <= n");
    if (T < 1) throw std::invalid_argument("policy: horizon must be >= 1");
}

inline RegretTrace run_ucb_over(const Instance& inst, const std::vector<Action>& arms, int m, std::uint64_t T,
                                Rng& rng, const PolicyOptions& opts, bool share_matching) {
    MeanOracle oracle(inst, opts.enumeration_budget);
    RegretRecorder rec(T, optimal_mean_reward(inst, m, opts.action_budget), opts.record_actions);
    UcbState state(opts.ucb_constant);
    for (const auto& a : arms) state.add_arm(a);
    for (std::uint64_t t = 0; t < T; ++t) {
        auto step = ucb_step(state, inst, rng);
        rec.push(step.action, oracle(step.action));
        if (share_matching) {
            for (std::size_t j = 0; j < arms.size(); ++j) {
                if (j != step.arm && action_matches(arms[j], step.observation.x)) state.share(j, step.observation.y);
            }
        }
    }
    return std::move(rec).finish();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Standard UCB
// ---------------------------------------------------------------------------

inline std::vector<Action> enumerate_actions(int n, int m, int l) {
    const std::uint64_t size = action_space_size(n, m, l);
    std::vector<Action> out;
    out.reserve(size);
    for (std::uint64_t r = 0; r < size; ++r) out.push_back(unrank_action(r, n, m, l));
    return out;
}

inline RegretTrace run_standard_ucb(const Instance& inst, int m, std::uint64_t T, Rng& rng,
                                    const PolicyOptions& opts = {}) {
    detail::check_common(inst, m, T);
    const int n = inst.n();
    const int l = inst.cardinality();
    std::uint64_t count = 0;
    const int lo = opts.standard_ucb_full_action_set ? 0 : m;
    for (int i = lo; i <= m; ++i) count += action_space_size(n, i, l);
    if (count > opts.action_budget) {
        throw EnumerationBudgetExceeded("run_standard_ucb: " + std::to_string(count) + " arms exceed the action budget");
    }
    std::vector<Action> arms;
    arms.reserve(count);
    for (int i = lo; i <= m; ++i) {
        auto part = enumerate_actions(n, i, l);
        arms.insert(arms.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return detail::run_ucb_over(inst, arms, m, T, rng, opts, false);
}

// ---------------------------------------------------------------------------
// Known k: random subset of A_m, then UCB
// ---------------------------------------------------------------------------

/// n0 = min(ceil(l^k C(n,k)/C(m,k) ln sqrt(T)), l^m C(n,m)) for m >= k and
/// l^m C(n,m) otherwise; at least 1.
inline std::uint64_t alg1_subset_size(int n, int l, int k, int m, std::uint64_t T) {
    const std::uint64_t all = action_space_size(n, m, l);
    if (m < k) return all;
    const double ratio = std::pow(static_cast<double>(l), k) *
                         static_cast<double>(binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k))) /
                         static_cast<double>(binomial(static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(k)));
    const double want = std::ceil(ratio * 0.5 * std::log(static_cast<double>(T)));
    if (!(want < static_cast<double>(all))) return all;
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(want));
}

namespace detail {
inline RegretTrace run_known_k(const Instance& inst, int k, int m, std::uint64_t T, Rng& rng,
                               const PolicyOptions& opts, bool share) {
    check_common(inst, m, T);
    if (k < 1) throw std::invalid_argument("policy: need k >= 1");
    const int n = inst.n();
    const int l = inst.cardinality();
    const std::uint64_t n0 = alg1_subset_size(n, l, k, m, T);
    if (n0 > opts.action_budget) {
        throw EnumerationBudgetExceeded("known-k policy: " + std::to_string(n0) + " arms exceed the action budget");
    }
    const auto ranks = sample_without_replacement(rng, action_space_size(n, m, l), n0);
    std::vector<Action> arms;
    arms.reserve(ranks.size());
    for (auto r : ranks) arms.push_back(unrank_action(r, n, m, l));
    return run_ucb_over(inst, arms, m, T, rng, opts, share);
}
}  // namespace detail

inline RegretTrace run_alg1_known_k(const Instance& inst, int k, int m, std::uint64_t T, Rng& rng,
                                    const PolicyOptions& opts = {}) {
    return detail::run_known_k(inst, k, m, T, rng, opts, false);
}

/// Known-k policy where every chosen arm whose intervention agrees with the
/// observed x is also credited with y.
inline RegretTrace run_emp_known_plus(const Instance& inst, int k, int m, std::uint64_t T, Rng& rng,
                                      const PolicyOptions& opts = {}) {
    return detail::run_known_k(inst, k, m, T, rng, opts, opts.sharing != SharingScope::none);
}

// ---------------------------------------------------------------------------
// Unknown k: phased UCB with mixture arms
// ---------------------------------------------------------------------------

struct PhaseSchedule {
    int phases = 0;                      // i_f
    std::vector<std::uint64_t> q;        // arms drawn per phase
    std::vector<std::uint64_t> lengths;  // Delta T_i

    std::uint64_t total_length() const {
        std::uint64_t s = 0;
        for (auto d : lengths) s += d;
        return s;
    }
};

namespace detail {
/// Smallest r >= 0 with 4^r * den >= num, i.e. ceil(log2 sqrt(num / den)) clamped at 0.
inline int ceil_log4_ratio(unsigned __int128 num, unsigned __int128 den) {
    int r = 0;
    unsigned __int128 p = den;
    while (p < num) {
        p *= 4;
        ++r;
    }
    return r;
}
}  // namespace detail

inline PhaseSchedule compute_schedule(std::uint64_t T, int n, int m, int l) {
    if (T < 4) throw std::invalid_argument("compute_schedule: need T >= 4");
    if (m < 1 || m > n || l < 1) throw std::invalid_argument("compute_schedule: need 1 <= m <= n and l >= 1");
    const int r = detail::ceil_log4_ratio(T, 1);
    const auto ln = static_cast<std::uint64_t>(l) * static_cast<std::uint64_t>(n);
    const int phases = std::max(1, detail::ceil_log4_ratio(static_cast<unsigned __int128>(T) * static_cast<std::uint64_t>(m), ln));
    const std::uint64_t width = (ln + static_cast<std::uint64_t>(m) - 1) / static_cast<std::uint64_t>(m);
    PhaseSchedule s;
    s.phases = phases;
    for (int i = 1; i <= phases; ++i) {
        s.q.push_back(std::uint64_t{1} << (r - i + 1));
        s.lengths.push_back(checked_mul(width, std::uint64_t{1} << (r + i)));
    }
    return s;
}

namespace detail {

/// The q arms of A_m with the highest carried empirical mean; arms never
/// sampled count as mean 0; ties go to the lower rank.
inline std::vector<std::uint64_t> top_empirical_ranks(const std::unordered_map<std::uint64_t, ArmStats>& carried,
                                                      std::uint64_t q, std::uint64_t population) {
    struct Entry {
        double mean;
        std::uint64_t rank;
    };
    std::vector<Entry> seen;
    seen.reserve(carried.size());
    for (const auto& [rank, st] : carried) {
        if (st.pulls > 0) seen.push_back({st.mean(), rank});
    }
    std::sort(seen.begin(), seen.end(), [](const Entry& a, const Entry& b) {
        return a.mean != b.mean ? a.mean > b.mean : a.rank < b.rank;
    });
    q = std::min(q, population);
    std::vector<std::uint64_t> out;
    out.reserve(q);
    std::size_t si = 0;
    std::uint64_t unseen = 0;
    auto advance_unseen = [&] {
        while (unseen < population) {
            auto it = carried.find(unseen);
            if (it == carried.end() || it->second.pulls == 0) break;
            ++unseen;
        }
    };
    advance_unseen();
    while (out.size() < q) {
        const bool have_seen = si < seen.size();
        const bool have_unseen = unseen < population;
        bool take_seen = have_seen;
        if (have_seen && have_unseen) {
            const auto& e = seen[si];
            take_seen = e.mean > 0.0 || (e.mean == 0.0 && e.rank < unseen);
        }
        if (take_seen) {
            out.push_back(seen[si++].rank);
        } else if (have_unseen) {
            out.push_back(unseen++);
            advance_unseen();
        } else {
            break;
        }
    }
    return out;
}

inline RegretTrace run_phased(const Instance& inst, int m, std::uint64_t T, Rng& rng, const PolicyOptions& opts,
                              bool empirical) {
    check_common(inst, m, T);
    const int n = inst.n();
    const int l = inst.cardinality();
    const auto schedule = compute_schedule(std::max<std::uint64_t>(T, 4), n, m, l);
    const std::uint64_t population = action_space_size(n, m, l);

    MeanOracle oracle(inst, opts.enumeration_budget);
    RegretRecorder rec(T, optimal_mean_reward(inst, m, opts.action_budget), opts.record_actions);

    std::vector<std::shared_ptr<const MixtureArm>> mixtures;
    std::vector<ArmStats> mixture_stats;                    // carried (empirical variant)
    std::unordered_map<std::uint64_t, ArmStats> carried;  // by rank in A_m (empirical variant)

    for (int phase = 0; phase < schedule.phases && rec.rounds() < T; ++phase) {
        const std::uint64_t q = schedule.q[static_cast<std::size_t>(phase)];
        const std::uint64_t len = std::min(schedule.lengths[static_cast<std::size_t>(phase)], T - rec.rounds());

        std::vector<std::uint64_t> ranks;
        if (empirical && phase > 0) {
            ranks = top_empirical_ranks(carried, q, population);
        } else {
            ranks.reserve(q);
            for (std::uint64_t i = 0; i < q; ++i) ranks.push_back(uniform_index(rng, population));
        }

        UcbState state(opts.ucb_constant);
        std::vector<ArmStats> initial;
        for (auto r : ranks) {
            ArmStats init{};
            if (empirical) {
                auto it = carried.find(r);
                if (it != carried.end()) init = it->second;
            }
            initial.push_back(init);
            state.add_arm(unrank_action(r, n, m, l), init);
        }
        for (std::size_t j = 0; j < mixtures.size(); ++j) {
            state.add_mixture(mixtures[j], empirical ? mixture_stats[j] : ArmStats{});
        }
        // Plain phases restart the round counter; the empirical variant keeps
        // the global one since its statistics persist.
        if (empirical) state.set_t(rec.rounds());

        std::vector<Action> played;
        played.reserve(len);
        for (std::uint64_t s = 0; s < len; ++s) {
            auto step = ucb_step(state, inst, rng);
            rec.push(step.action, oracle(step.action));
            played.push_back(std::move(step.action));
        }

        if (empirical) {
            for (std::size_t i = 0; i < ranks.size(); ++i) {
                const auto& now = state.stats(i);
                auto& c = carried[ranks[i]];
                c.pulls += now.pulls - initial[i].pulls;
                c.reward_sum += now.reward_sum - initial[i].reward_sum;
            }
            for (std::size_t j = 0; j < mixtures.size(); ++j) mixture_stats[j] = state.stats(ranks.size() + j);
            mixture_stats.push_back(ArmStats{});
        }
        mixtures.push_back(std::make_shared<const MixtureArm>(make_mixture(std::move(played))));
    }
    return std::move(rec).finish();
}

}  // namespace detail

inline RegretTrace run_alg2_unknown_k(const Instance& inst, int m, std::uint64_t T, Rng& rng,
                                      const PolicyOptions& opts = {}) {
    return detail::run_phased(inst, m, T, rng, opts, false);
}

/// Phased policy that carries arm statistics across phases and, after the
/// first phase, picks the q_i arms with the highest empirical means.
inline RegretTrace run_emp_unknown_plus(const Instance& inst, int m, std::uint64_t T, Rng& rng,
                                        const PolicyOptions& opts = {}) {
    return detail::run_phased(inst, m, T, rng, opts, true);
}

// ---------------------------------------------------------------------------
// RAPS: sequential parent search on atomic interventions, then UCB
// ---------------------------------------------------------------------------

inline std::uint64_t raps_default_probe_count(double epsilon) {
    return static_cast<std::uint64_t>(std::ceil(std::log(10.0) / (epsilon * epsilon)));
}

struct RapsResult {
    RegretTrace trace;
    std::vector<NodeIndex> parents;  // identified set, sorted
    bool discovery_finished = false;  // false when the horizon ran out in the search phase
};

inline RapsResult run_raps_detailed(const Instance& inst, int m, std::uint64_t T, Rng& rng,
                                    const PolicyOptions& opts = {}) {
    detail::check_common(inst, m, T);
    const int n = inst.n();
    const int l = inst.cardinality();
    if (l < 2) throw std::invalid_argument("run_raps: need l >= 2");
    const double eps = opts.raps_epsilon;
    if (!(eps > 0.0)) throw std::invalid_argument("run_raps: epsilon must be > 0");
    const std::uint64_t probes = opts.raps_probe_count.value_or(raps_default_probe_count(eps));

    MeanOracle oracle(inst, opts.enumeration_budget);
    RegretRecorder rec(T, optimal_mean_reward(inst, m, opts.action_budget), opts.record_actions);
    std::vector<Observation> history;

    struct Probe {
        bool complete = false;
        bool moves_reward = false;
        std::vector<bool> descendant;
    };
    // Intervene on `node` with each value `probes` times and compare the
    // per-value marginals of every other variable and the reward mean.
    auto probe = [&](NodeIndex node) {
        Probe out;
        out.descendant.assign(static_cast<std::size_t>(n), false);
        std::vector<std::vector<double>> freq(static_cast<std::size_t>(l));  // [value][var * l + val]
        std::vector<double> reward_mean(static_cast<std::size_t>(l), 0.0);
        for (int v = 1; v <= l; ++v) {
            const Action a{{node}, {v}};
            const double mu = oracle(a);
            auto& f = freq[static_cast<std::size_t>(v - 1)];
            f.assign(static_cast<std::size_t>(n * l), 0.0);
            double ysum = 0.0;
            for (std::uint64_t i = 0; i < probes; ++i) {
                if (rec.rounds() >= T) return out;
                auto obs = sample(inst, a, rng);
                rec.push(a, mu);
                for (int u = 0; u < n; ++u) f[static_cast<std::size_t>(u * l + obs.x[static_cast<std::size_t>(u)] - 1)] += 1.0;
                ysum += obs.y;
                history.push_back(std::move(obs));
            }
            for (auto& c : f) c /= static_cast<double>(probes);
            reward_mean[static_cast<std::size_t>(v - 1)] = ysum / static_cast<double>(probes);
        }
        out.complete = true;
        const auto [lo, hi] = std::minmax_element(reward_mean.begin(), reward_mean.end());
        out.moves_reward = *hi - *lo > eps;
        for (int u = 0; u < n; ++u) {
            if (u == node) continue;
            for (int val = 0; val < l && !out.descendant[static_cast<std::size_t>(u)]; ++val) {
                double mn = 1.0, mx = 0.0;
                for (int v = 0; v < l; ++v) {
                    const double p = freq[static_cast<std::size_t>(v)][static_cast<std::size_t>(u * l + val)];
                    mn = std::min(mn, p);
                    mx = std::max(mx, p);
                }
                if (mx - mn > eps) out.descendant[static_cast<std::size_t>(u)] = true;
            }
        }
        return out;
    };

    // One search per parent: walk down from any ancestor of the reward through
    // its descendants until no descendant still moves the reward. A candidate
    // whose descendants include an already identified parent cannot be told
    // apart from a mediated effect with atomic interventions and is dropped.
    std::vector<NodeIndex> found;
    bool finished = false;
    while (static_cast<int>(found.size()) < m) {
        std::vector<NodeIndex> candidates;
        for (int v = 0; v < n; ++v) {
            if (std::find(found.begin(), found.end(), v) == found.end()) candidates.push_back(v);
        }
        std::shuffle(candidates.begin(), candidates.end(), rng);
        std::optional<NodeIndex> current;
        bool truncated = false;
        while (!candidates.empty()) {
            const NodeIndex j = candidates.front();
            candidates.erase(candidates.begin());
            const auto res = probe(j);
            if (!res.complete) {
                truncated = true;
                break;
            }
            if (!res.moves_reward) continue;
            const bool shadows_found = std::any_of(found.begin(), found.end(),
                                                   [&](NodeIndex f) { return res.descendant[static_cast<std::size_t>(f)]; });
            if (shadows_found) continue;
            current = j;
            std::erase_if(candidates, [&](NodeIndex c) { return !res.descendant[static_cast<std::size_t>(c)]; });
        }
        if (truncated) break;
        if (!current) {
            finished = true;
            break;
        }
        found.push_back(*current);
    }
    if (static_cast<int>(found.size()) >= m) finished = true;

    std::vector<NodeIndex> parents = found;
    std::sort(parents.begin(), parents.end());

    if (rec.rounds() < T) {
        const int p = static_cast<int>(parents.size());
        const std::uint64_t configs = checked_pow(static_cast<std::uint64_t>(l), static_cast<std::uint64_t>(p));
        UcbState state(opts.ucb_constant);
        std::vector<Action> arms;
        for (std::uint64_t c = 0; c < configs; ++c) {
            arms.push_back(Action{parents, unrank_config(c, static_cast<std::size_t>(p), l)});
            state.add_arm(arms.back());
        }
        for (const auto& obs : history) {
            for (std::size_t a = 0; a < arms.size(); ++a) {
                if (action_matches(arms[a], obs.x)) state.share(a, obs.y);
            }
        }
        state.set_t(rec.rounds());
        while (rec.rounds() < T) {
            auto step = ucb_step(state, inst, rng);
            rec.push(step.action, oracle(step.action));
        }
    }
    return RapsResult{std::move(rec).finish(), std::move(parents), finished};
}

inline RegretTrace run_raps(const Instance& inst, int m, std::uint64_t T, Rng& rng, const PolicyOptions& opts = {}) {
    return run_raps_detailed(inst, m, T, rng, opts).trace;
}

// ---------------------------------------------------------------------------
// Parent identification by uniform sampling over A_k
// ---------------------------------------------------------------------------

/// Plays every action of A_k floor(T / |A_k|) times (the remainder goes to the
/// lowest ranks), then returns the node set of the lowest-ranked action with
/// empirical mean above 1/2 that does not intervene on {0..k-1}, or {0..k-1}.
inline std::vector<NodeIndex> identify_parents_unif(const Instance& inst, int k, std::uint64_t T, Rng& rng) {
    const int n = inst.n();
    const int l = inst.cardinality();
    if (k < 1 || k > n) throw std::invalid_argument("identify_parents_unif: need 1 <= k <= n");
    const std::uint64_t size = action_space_size(n, k, l);
    if (T < size) {
        throw std::invalid_argument("identify_parents_unif: T = " + std::to_string(T) + " < |A_k| = " + std::to_string(size));
    }
    std::vector<NodeIndex> first_k(static_cast<std::size_t>(k));
    std::iota(first_k.begin(), first_k.end(), 0);
    const std::uint64_t base = T / size;
    const std::uint64_t extra = T % size;
    std::optional<std::vector<NodeIndex>> answer;
    for (std::uint64_t r = 0; r < size; ++r) {
        const Action a = unrank_action(r, n, k, l);
        const std::uint64_t pulls = base + (r < extra ? 1 : 0);
        double sum = 0.0;
        for (std::uint64_t i = 0; i < pulls; ++i) sum += sample(inst, a, rng).y;
        if (!answer && sum / static_cast<double>(pulls) > 0.5 && a.nodes != first_k) answer = a.nodes;
    }
    return answer.value_or(first_k);
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

enum class Policy { standard_ucb, alg1, alg2, emp_known_plus, emp_unknown_plus, raps };

inline const std::vector<std::pair<Policy, std::string>>& policy_names() {
    static const std::vector<std::pair<Policy, std::string>> names{
        {Policy::emp_known_plus, "empknown+"}, {Policy::emp_unknown_plus, "empunknown+"},
        {Policy::raps, "raps"},                {Policy::standard_ucb, "ucb"},
        {Policy::alg1, "alg1"},                {Policy::alg2, "alg2"},
    };
    return names;
}

inline std::string to_string(Policy p) {
    for (const auto& [pol, name] : policy_names()) {
        if (pol == p) return name;
    }
    return "?";
}

inline Policy parse_policy(const std::string& s) {
    for (const auto& [pol, name] : policy_names()) {
        if (name == s) return pol;
    }
    throw std::invalid_argument("unknown algorithm '" + s + "' (expected one of empknown+, empunknown+, raps, ucb, alg1, alg2)");
}

/// `k` is only consulted by the known-k policies.
inline RegretTrace run_policy(Policy p, const Instance& inst, int k, int m, std::uint64_t T, Rng& rng,
                              const PolicyOptions& opts = {}) {
    switch (p) {
        case Policy::standard_ucb: return run_standard_ucb(inst, m, T, rng, opts);
        case Policy::alg1: return run_alg1_known_k(inst, k, m, T, rng, opts);
        case Policy::alg2: return run_alg2_unknown_k(inst, m, T, rng, opts);
        case Policy::emp_known_plus: return run_emp_known_plus(inst, k, m, T, rng, opts);
        case Policy::emp_unknown_plus: return run_emp_unknown_plus(inst, m, T, rng, opts);
        case Policy::raps: return run_raps(inst, m, T, rng, opts);
    }
    throw std::logic_error("run_policy: unhandled policy");
}

}  // namespace cbandit
