#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cbandit/action.hpp"
#include "cbandit/combinatorics.hpp"
#include "cbandit/random.hpp"

namespace cbandit {

/// Raised when exact enumeration would exceed its state budget. Callers that
/// can tolerate noise should switch to Monte-Carlo estimation explicitly.
class EnumerationBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

/// Row index of a parent configuration: (values - 1) read as base-l digits,
/// most significant first, in sorted parent order.
template <typename Get>
std::uint64_t config_rank(std::size_t count, int l, Get&& value_at) {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < count; ++i) {
        r = r * static_cast<std::uint64_t>(l) + static_cast<std::uint64_t>(value_at(i) - 1);
    }
    return r;
}

inline std::vector<Value> unrank_config(std::uint64_t rank, std::size_t count, int l) {
    std::vector<Value> out(count, 1);
    for (std::size_t i = count; i-- > 0;) {
        out[i] = static_cast<Value>(rank % static_cast<std::uint64_t>(l)) + 1;
        rank /= static_cast<std::uint64_t>(l);
    }
    return out;
}

class CausalGraph {
public:
    CausalGraph() = default;

    /// Validates and sorts the parent lists and derives a topological order.
    explicit CausalGraph(std::vector<std::vector<NodeIndex>> parents) : parents_(std::move(parents)) {
        const int n = size();
        for (auto& ps : parents_) {
            std::sort(ps.begin(), ps.end());
            if (std::adjacent_find(ps.begin(), ps.end()) != ps.end()) {
                throw std::invalid_argument("CausalGraph: duplicate parent");
            }
            for (NodeIndex p : ps) {
                if (p < 0 || p >= n) throw std::invalid_argument("CausalGraph: parent index out of range");
            }
        }
        // Kahn's algorithm; ties resolved by lowest index for a canonical order.
        std::vector<int> indegree(static_cast<std::size_t>(n));
        std::vector<std::vector<NodeIndex>> children(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) {
            for (NodeIndex p : parents_[static_cast<std::size_t>(v)]) {
                children[static_cast<std::size_t>(p)].push_back(v);
                ++indegree[static_cast<std::size_t>(v)];
            }
        }
        std::set<NodeIndex> ready;
        for (int v = 0; v < n; ++v) {
            if (indegree[static_cast<std::size_t>(v)] == 0) ready.insert(v);
        }
        while (!ready.empty()) {
            const NodeIndex v = *ready.begin();
            ready.erase(ready.begin());
            order_.push_back(v);
            for (NodeIndex c : children[static_cast<std::size_t>(v)]) {
                if (--indegree[static_cast<std::size_t>(c)] == 0) ready.insert(c);
            }
        }
        if (static_cast<int>(order_.size()) != n) throw std::invalid_argument("CausalGraph: graph has a cycle");
    }

    static CausalGraph empty(int n) { return CausalGraph(std::vector<std::vector<NodeIndex>>(static_cast<std::size_t>(n))); }

    int size() const { return static_cast<int>(parents_.size()); }
    const std::vector<NodeIndex>& parents(NodeIndex v) const { return parents_[static_cast<std::size_t>(v)]; }
    const std::vector<std::vector<NodeIndex>>& parent_lists() const { return parents_; }
    const std::vector<NodeIndex>& topological_order() const { return order_; }

    std::size_t edge_count() const {
        std::size_t e = 0;
        for (const auto& ps : parents_) e += ps.size();
        return e;
    }

private:
    std::vector<std::vector<NodeIndex>> parents_;
    std::vector<NodeIndex> order_;
};

struct CategoricalCpt {
    NodeIndex node = 0;
    int cardinality = 0;
    /// One probability vector per parent configuration, indexed by config_rank.
    std::vector<std::vector<double>> rows;
};

enum class RewardKind { bernoulli, gaussian };

inline std::string to_string(RewardKind kind) { return kind == RewardKind::bernoulli ? "bernoulli" : "gaussian"; }

inline RewardKind parse_reward_kind(const std::string& s) {
    if (s == "bernoulli") return RewardKind::bernoulli;
    if (s == "gaussian") return RewardKind::gaussian;
    throw std::invalid_argument("unknown reward kind '" + s + "'");
}

struct RewardModel {
    RewardKind kind = RewardKind::bernoulli;
    std::vector<NodeIndex> parents;  // Pa_Y, sorted
    std::vector<double> means;       // indexed by config_rank over `parents`
};

struct Observation {
    std::vector<Value> x;
    double y = 0.0;
};

/// A discrete SCM with a reward node. Immutable once constructed.
class Instance {
public:
    Instance(CausalGraph graph, int cardinality, std::vector<CategoricalCpt> cpts, RewardModel reward)
        : graph_(std::move(graph)), cardinality_(cardinality), cpts_(std::move(cpts)), reward_(std::move(reward)) {
        validate();
    }

    int n() const { return graph_.size(); }
    int cardinality() const { return cardinality_; }
    int k() const { return static_cast<int>(reward_.parents.size()); }
    const CausalGraph& graph() const { return graph_; }
    const std::vector<CategoricalCpt>& cpts() const { return cpts_; }
    const CategoricalCpt& cpt(NodeIndex v) const { return cpts_[static_cast<std::size_t>(v)]; }
    const RewardModel& reward() const { return reward_; }

    double max_reward_mean() const { return *std::max_element(reward_.means.begin(), reward_.means.end()); }

    /// Whether every reward mean lies in [0, 1], the range the regret analysis assumes.
    bool reward_means_in_unit_interval() const {
        return std::all_of(reward_.means.begin(), reward_.means.end(),
                           [](double m) { return m >= 0.0 && m <= 1.0; });
    }

    void check_action(const Action& a) const {
        if (a.nodes.size() != a.values.size()) throw std::invalid_argument("action: nodes/values size mismatch");
        for (std::size_t i = 0; i < a.nodes.size(); ++i) {
            if (a.nodes[i] < 0 || a.nodes[i] >= n()) {
                throw std::invalid_argument("action: node " + std::to_string(a.nodes[i]) + " out of range");
            }
            if (i > 0 && a.nodes[i] <= a.nodes[i - 1]) throw std::invalid_argument("action: nodes not strictly sorted");
            if (a.values[i] < 1 || a.values[i] > cardinality_) {
                throw std::invalid_argument("action: value " + std::to_string(a.values[i]) + " outside [1, l]");
            }
        }
    }

private:
    void validate() const {
        const int nn = n();
        if (cardinality_ < 1) throw std::invalid_argument("Instance: cardinality must be >= 1");
        if (static_cast<int>(cpts_.size()) != nn) throw std::invalid_argument("Instance: need one CPT per node");
        for (int v = 0; v < nn; ++v) {
            const auto& cpt = cpts_[static_cast<std::size_t>(v)];
            if (cpt.node != v || cpt.cardinality != cardinality_) throw std::invalid_argument("Instance: CPT header mismatch");
            const std::uint64_t rows = checked_pow(static_cast<std::uint64_t>(cardinality_), graph_.parents(v).size());
            if (cpt.rows.size() != rows) throw std::invalid_argument("Instance: CPT row count mismatch at node " + std::to_string(v));
            for (const auto& row : cpt.rows) {
                if (static_cast<int>(row.size()) != cardinality_) throw std::invalid_argument("Instance: CPT row width mismatch");
                double sum = 0.0;
                for (double p : row) {
                    if (!(p >= 0.0)) throw std::invalid_argument("Instance: negative probability");
                    sum += p;
                }
                if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("Instance: CPT row does not sum to 1");
            }
        }
        const auto& pa = reward_.parents;
        for (std::size_t i = 0; i < pa.size(); ++i) {
            if (pa[i] < 0 || pa[i] >= nn || (i > 0 && pa[i] <= pa[i - 1])) {
                throw std::invalid_argument("Instance: reward parents must be sorted distinct indices in [0, n)");
            }
        }
        if (reward_.means.size() != checked_pow(static_cast<std::uint64_t>(cardinality_), pa.size())) {
            throw std::invalid_argument("Instance: reward mean table size mismatch");
        }
        if (reward_.kind == RewardKind::bernoulli) {
            for (double m : reward_.means) {
                if (!(m >= 0.0 && m <= 1.0)) throw std::invalid_argument("Instance: Bernoulli mean outside [0, 1]");
            }
        }
    }

    CausalGraph graph_;
    int cardinality_;
    std::vector<CategoricalCpt> cpts_;
    RewardModel reward_;
};

/// Draws from the post-interventional distribution: intervened variables are
/// fixed and their CPTs ignored; the rest are sampled in topological order.
inline Observation sample(const Instance& inst, const Action& action, Rng& rng) {
    inst.check_action(action);
    const int l = inst.cardinality();
    Observation obs;
    obs.x.assign(static_cast<std::size_t>(inst.n()), 0);
    for (std::size_t i = 0; i < action.nodes.size(); ++i) {
        obs.x[static_cast<std::size_t>(action.nodes[i])] = action.values[i];
    }
    std::vector<bool> fixed(static_cast<std::size_t>(inst.n()), false);
    for (NodeIndex v : action.nodes) fixed[static_cast<std::size_t>(v)] = true;

    for (NodeIndex v : inst.graph().topological_order()) {
        if (fixed[static_cast<std::size_t>(v)]) continue;
        const auto& pa = inst.graph().parents(v);
        const auto row = config_rank(pa.size(), l, [&](std::size_t i) { return obs.x[static_cast<std::size_t>(pa[i])]; });
        obs.x[static_cast<std::size_t>(v)] = sample_categorical(rng, inst.cpt(v).rows[row]) + 1;
    }

    const auto& rw = inst.reward();
    const auto cfg = config_rank(rw.parents.size(), l, [&](std::size_t i) { return obs.x[static_cast<std::size_t>(rw.parents[i])]; });
    const double mean = rw.means[cfg];
    if (rw.kind == RewardKind::bernoulli) {
        obs.y = uniform01(rng) < mean ? 1.0 : 0.0;
    } else {
        obs.y = mean + std::normal_distribution<double>(0.0, 1.0)(rng);
    }
    return obs;
}

/// E[Y | do(action)] by chain-rule enumeration over the non-intervened
/// ancestors of the reward parents in the mutilated graph.
inline double exact_mean_reward(const Instance& inst, const Action& action,
                                std::uint64_t budget = kDefaultEnumerationBudget) {
    inst.check_action(action);
    const int n = inst.n();
    const int l = inst.cardinality();
    std::vector<Value> x(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < action.nodes.size(); ++i) x[static_cast<std::size_t>(action.nodes[i])] = action.values[i];

    std::vector<bool> relevant(static_cast<std::size_t>(n), false);
    std::vector<NodeIndex> stack(inst.reward().parents.begin(), inst.reward().parents.end());
    while (!stack.empty()) {
        const NodeIndex v = stack.back();
        stack.pop_back();
        if (relevant[static_cast<std::size_t>(v)]) continue;
        relevant[static_cast<std::size_t>(v)] = true;
        if (x[static_cast<std::size_t>(v)] != 0) continue;  // intervened: incoming edges cut
        for (NodeIndex p : inst.graph().parents(v)) stack.push_back(p);
    }
    std::vector<NodeIndex> free_nodes;
    for (NodeIndex v : inst.graph().topological_order()) {
        if (relevant[static_cast<std::size_t>(v)] && x[static_cast<std::size_t>(v)] == 0) free_nodes.push_back(v);
    }
    double states = std::pow(static_cast<double>(l), static_cast<double>(free_nodes.size()));
    if (states > static_cast<double>(budget)) {
        throw EnumerationBudgetExceeded("exact_mean_reward: " + std::to_string(free_nodes.size()) +
                                        " free ancestors give l^" + std::to_string(free_nodes.size()) +
                                        " states, over the budget of " + std::to_string(budget) +
                                        "; use a Monte-Carlo estimate instead");
    }

    const auto& rw = inst.reward();
    double total = 0.0;
    auto recurse = [&](auto&& self, std::size_t depth, double prob) -> void {
        if (depth == free_nodes.size()) {
            const auto cfg = config_rank(rw.parents.size(), l, [&](std::size_t i) { return x[static_cast<std::size_t>(rw.parents[i])]; });
            total += prob * rw.means[cfg];
            return;
        }
        const NodeIndex v = free_nodes[depth];
        const auto& pa = inst.graph().parents(v);
        const auto row_idx = config_rank(pa.size(), l, [&](std::size_t i) { return x[static_cast<std::size_t>(pa[i])]; });
        const auto& row = inst.cpt(v).rows[row_idx];
        for (int val = 0; val < l; ++val) {
            const double p = row[static_cast<std::size_t>(val)];
            if (p == 0.0) continue;
            x[static_cast<std::size_t>(v)] = val + 1;
            self(self, depth + 1, prob * p);
        }
        x[static_cast<std::size_t>(v)] = 0;
    };
    recurse(recurse, 0, 1.0);
    return total;
}

struct OptimalMeans {
    double best_overall = 0.0;  // max over all actions of size <= m
    double best_size_m = 0.0;   // max over actions of size exactly m
};

/// Exhaustive maximum of the exact mean over every action of size <= m and
/// over those of size exactly m.
inline OptimalMeans brute_force_optimal(const Instance& inst, int m, std::uint64_t action_budget = 1'000'000,
                                        std::uint64_t enumeration_budget = kDefaultEnumerationBudget) {
    const int n = inst.n();
    const int l = inst.cardinality();
    if (m < 0 || m > n) throw std::invalid_argument("brute_force_optimal: need 0 <= m <= n");
    std::uint64_t count = 0;
    for (int i = 0; i <= m; ++i) count += action_space_size(n, i, l);
    if (count > action_budget) {
        throw EnumerationBudgetExceeded("brute_force_optimal: " + std::to_string(count) + " actions exceed budget " +
                                        std::to_string(action_budget));
    }
    OptimalMeans out{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (int i = 0; i <= m; ++i) {
        const std::uint64_t size = action_space_size(n, i, l);
        for (std::uint64_t r = 0; r < size; ++r) {
            const double mu = exact_mean_reward(inst, unrank_action(r, n, i, l), enumeration_budget);
            out.best_overall = std::max(out.best_overall, mu);
            if (i == m) out.best_size_m = std::max(out.best_size_m, mu);
        }
    }
    return out;
}

/// mu* over actions of size <= m. When the reward parents fit in m, setting
/// them to the best configuration attains the largest table entry, which no
/// action can exceed; otherwise fall back to exhaustive search over A_m.
inline double optimal_mean_reward(const Instance& inst, int m, std::uint64_t action_budget = 1'000'000) {
    if (inst.k() <= m) return inst.max_reward_mean();
    return brute_force_optimal(inst, m, action_budget).best_overall;
}

// ---------------------------------------------------------------------------
// Instance builders
// ---------------------------------------------------------------------------

struct GeneratorParams {
    int n = 8;
    int cardinality = 3;
    int k = 1;
    double edge_prob = 0.25;
    double beta = 0.7;
    RewardKind reward_kind = RewardKind::bernoulli;
};

/// Random instance: Erdos-Renyi DAG oriented along a random permutation,
/// Dirichlet-mixture CPTs with parent-effect beta, uniform reward parents and
/// uniform [0, 1] reward means.
inline Instance generate_random_instance(const GeneratorParams& gp, Rng& rng) {
    const int n = gp.n;
    const int l = gp.cardinality;
    if (n < 1) throw std::invalid_argument("generate_random_instance: n must be >= 1");
    if (l < 1) throw std::invalid_argument("generate_random_instance: cardinality must be >= 1");
    if (gp.k < 1 || gp.k > n) throw std::invalid_argument("generate_random_instance: need 1 <= k <= n");
    if (!(gp.beta >= 0.0 && gp.beta <= 1.0)) throw std::invalid_argument("generate_random_instance: need 0 <= beta <= 1");
    if (!(gp.edge_prob >= 0.0 && gp.edge_prob <= 1.0)) {
        throw std::invalid_argument("generate_random_instance: need 0 <= edge_prob <= 1");
    }

    std::vector<NodeIndex> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::vector<NodeIndex>> parents(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (uniform01(rng) < gp.edge_prob) parents[static_cast<std::size_t>(perm[static_cast<std::size_t>(b)])].push_back(perm[static_cast<std::size_t>(a)]);
        }
    }
    CausalGraph graph(std::move(parents));

    RewardModel reward;
    reward.kind = gp.reward_kind;
    reward.parents = unrank_subset(uniform_index(rng, binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(gp.k))), n, gp.k);

    std::vector<CategoricalCpt> cpts;
    cpts.reserve(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        CategoricalCpt cpt{v, l, {}};
        const auto base = sample_dirichlet_flat(rng, l);
        const std::uint64_t rows = checked_pow(static_cast<std::uint64_t>(l), graph.parents(v).size());
        cpt.rows.reserve(rows);
        for (std::uint64_t r = 0; r < rows; ++r) {
            const auto u = sample_dirichlet_flat(rng, l);
            std::vector<double> row(static_cast<std::size_t>(l));
            double sum = 0.0;
            for (std::size_t i = 0; i < row.size(); ++i) {
                row[i] = (1.0 - gp.beta) * base[i] + gp.beta * u[i];
                sum += row[i];
            }
            for (auto& p : row) p /= sum;  // keeps the row sum within 1e-12 of 1
            cpt.rows.push_back(std::move(row));
        }
        cpts.push_back(std::move(cpt));
    }

    const std::uint64_t configs = checked_pow(static_cast<std::uint64_t>(l), static_cast<std::uint64_t>(gp.k));
    reward.means.reserve(configs);
    for (std::uint64_t c = 0; c < configs; ++c) reward.means.push_back(uniform01(rng));

    return Instance(std::move(graph), l, std::move(cpts), std::move(reward));
}

/// Value of a binary variable in its default state and in its switched-on state.
inline constexpr Value kNeutralValue = 1;
inline constexpr Value kActiveValue = 2;

inline void check_parent_subset(const std::vector<NodeIndex>& p, int n, int k, const char* who) {
    if (static_cast<int>(p.size()) != k) throw std::invalid_argument(std::string(who) + ": |p| must equal k");
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0 || p[i] >= n || (i > 0 && p[i] <= p[i - 1])) {
            throw std::invalid_argument(std::string(who) + ": p must be a sorted subset of [0, n)");
        }
    }
}

/// Binary instance where nodes 0..k-1 are parentless and always neutral, every
/// other node is active iff all of 0..k-1 are active, and the Gaussian reward
/// has mean 1 iff every node in p is active.
inline Instance build_tradeoff_instance(int n, int k, const std::vector<NodeIndex>& p) {
    if (k < 1 || k > n) throw std::invalid_argument("build_tradeoff_instance: need 1 <= k <= n");
    check_parent_subset(p, n, k, "build_tradeoff_instance");
    constexpr int l = 2;
    std::vector<NodeIndex> roots(static_cast<std::size_t>(k));
    std::iota(roots.begin(), roots.end(), 0);
    std::vector<std::vector<NodeIndex>> parents(static_cast<std::size_t>(n));
    for (int j = k; j < n; ++j) parents[static_cast<std::size_t>(j)] = roots;
    CausalGraph graph(std::move(parents));

    const std::vector<double> neutral{1.0, 0.0};
    const std::vector<double> active{0.0, 1.0};
    const std::uint64_t all_active = checked_pow(2, static_cast<std::uint64_t>(k)) - 1;
    std::vector<CategoricalCpt> cpts;
    for (int v = 0; v < n; ++v) {
        CategoricalCpt cpt{v, l, {}};
        if (v < k) {
            cpt.rows.push_back(neutral);
        } else {
            for (std::uint64_t r = 0; r <= all_active; ++r) cpt.rows.push_back(r == all_active ? active : neutral);
        }
        cpts.push_back(std::move(cpt));
    }
    RewardModel reward{RewardKind::gaussian, p, std::vector<double>(all_active + 1, 0.0)};
    reward.means[all_active] = 1.0;
    return Instance(std::move(graph), l, std::move(cpts), std::move(reward));
}

namespace detail {
inline Instance point_mass_empty_graph(int n, int l, RewardModel reward) {
    std::vector<double> row(static_cast<std::size_t>(l), 0.0);
    row[0] = 1.0;
    std::vector<CategoricalCpt> cpts;
    for (int v = 0; v < n; ++v) cpts.push_back({v, l, {row}});
    return Instance(CausalGraph::empty(n), l, std::move(cpts), std::move(reward));
}
}  // namespace detail

/// Empty graph, every variable fixed at value 1, Gaussian reward with mean 0.
/// The reward parents are nodes 0..k-1 (they do not affect the reward).
inline Instance build_neutral_instance(int n, int l, int k) {
    if (k < 0 || k > n) throw std::invalid_argument("build_neutral_instance: need 0 <= k <= n");
    if (l < 1) throw std::invalid_argument("build_neutral_instance: l must be >= 1");
    std::vector<NodeIndex> pa(static_cast<std::size_t>(k));
    std::iota(pa.begin(), pa.end(), 0);
    RewardModel reward{RewardKind::gaussian, std::move(pa),
                       std::vector<double>(checked_pow(static_cast<std::uint64_t>(l), static_cast<std::uint64_t>(k)), 0.0)};
    return detail::point_mass_empty_graph(n, l, std::move(reward));
}

/// Neutral instance whose reward has mean delta exactly when X_p = s. Means
/// above 1 are accepted; reward_means_in_unit_interval() reports them.
inline Instance build_perturbed_instance(int n, int l, int k, const std::vector<NodeIndex>& p,
                                         const std::vector<Value>& s, double delta) {
    if (l < 1) throw std::invalid_argument("build_perturbed_instance: l must be >= 1");
    check_parent_subset(p, n, k, "build_perturbed_instance");
    if (s.size() != p.size()) throw std::invalid_argument("build_perturbed_instance: |s| must equal |p|");
    for (Value v : s) {
        if (v < 1 || v > l) throw std::invalid_argument("build_perturbed_instance: s outside [1, l]^k");
    }
    if (!(delta > 0.0)) throw std::invalid_argument("build_perturbed_instance: delta must be > 0");
    RewardModel reward{RewardKind::gaussian, p,
                       std::vector<double>(checked_pow(static_cast<std::uint64_t>(l), static_cast<std::uint64_t>(k)), 0.0)};
    reward.means[config_rank(s.size(), l, [&](std::size_t i) { return s[i]; })] = delta;
    return detail::point_mass_empty_graph(n, l, std::move(reward));
}

}  // namespace cbandit
