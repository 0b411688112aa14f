#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <stdexcept>
#include <variant>
#include <vector>

#include "cbandit/action.hpp"
#include "cbandit/random.hpp"
#include "cbandit/scm.hpp"

namespace cbandit {

inline constexpr double kDefaultUcbConstant = 2.0;

struct ArmStats {
    std::uint64_t pulls = 0;
    double reward_sum = 0.0;

    double mean() const { return reward_sum / static_cast<double>(pulls); }

    friend bool operator==(const ArmStats&, const ArmStats&) = default;
};

/// UCB1 index for 1-sub-Gaussian rewards: mean + sqrt(c ln t / pulls), or
/// +inf for an arm that has never been pulled.
inline double ucb_index(const ArmStats& stats, double t, double c = kDefaultUcbConstant) {
    if (stats.pulls == 0) return std::numeric_limits<double>::infinity();
    const double lt = std::log(std::max(t, 1.0));
    return stats.mean() + std::sqrt(c * lt / static_cast<double>(stats.pulls));
}

/// A randomized arm replaying a uniformly drawn action from a recorded multiset.
struct MixtureArm {
    std::vector<Action> constituents;

    const Action& resolve(Rng& rng) const { return constituents[uniform_index(rng, constituents.size())]; }
};

inline MixtureArm make_mixture(std::vector<Action> actions_played) {
    if (actions_played.empty()) throw std::invalid_argument("make_mixture: empty multiset");
    return MixtureArm{std::move(actions_played)};
}

/// Multiplicity-weighted average of the constituents' means under `mean_of`.
template <typename MeanFn>
double mixture_mean(const MixtureArm& mix, MeanFn&& mean_of) {
    double sum = 0.0;
    for (const auto& a : mix.constituents) sum += mean_of(a);
    return sum / static_cast<double>(mix.constituents.size());
}

struct Arm {
    std::variant<Action, std::shared_ptr<const MixtureArm>> kind;

    bool is_mixture() const { return kind.index() == 1; }
    const Action& action() const { return std::get<0>(kind); }
    const MixtureArm& mixture() const { return *std::get<1>(kind); }
};

/// Per-arm statistics plus the round counter driving the exploration bonus.
/// Arm ids are insertion indices; argmax ties go to the lowest id.
class UcbState {
public:
    explicit UcbState(double exploration = kDefaultUcbConstant) : c_(exploration) {}

    std::size_t add_arm(Action action, ArmStats initial = {}) { return push(Arm{std::move(action)}, initial); }

    std::size_t add_mixture(std::shared_ptr<const MixtureArm> mix, ArmStats initial = {}) {
        return push(Arm{std::move(mix)}, initial);
    }

    std::size_t size() const { return arms_.size(); }
    const Arm& arm(std::size_t id) const { return arms_[id]; }
    const ArmStats& stats(std::size_t id) const { return stats_[id]; }
    std::uint64_t t() const { return t_; }
    void set_t(std::uint64_t t) { t_ = t; }
    double exploration() const { return c_; }

    /// Arm with the largest index. Every arm is pulled once before any is
    /// pulled twice since unplayed arms have an infinite index.
    std::size_t select() {
        if (arms_.empty()) throw std::logic_error("UcbState::select: no arms");
        while (first_unpulled_ < stats_.size() && stats_[first_unpulled_].pulls > 0) ++first_unpulled_;
        if (first_unpulled_ < stats_.size()) return first_unpulled_;

        const double scale = std::sqrt(c_ * std::log(static_cast<double>(std::max<std::uint64_t>(t_, 1))));
        std::size_t best = 0;
        double best_index = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < arms_.size(); ++i) {
            const double idx = mean_[i] + scale * inv_sqrt_pulls_[i];
            if (idx > best_index) {
                best_index = idx;
                best = i;
            }
        }
        return best;
    }

    /// Reward from the arm played this round; advances t.
    void record(std::size_t id, double reward) {
        add_sample(id, reward);
        ++t_;
    }

    /// Reward observed on behalf of an arm that was not played; t unchanged.
    void share(std::size_t id, double reward) { add_sample(id, reward); }

private:
    std::size_t push(Arm arm, ArmStats initial) {
        arms_.push_back(std::move(arm));
        stats_.push_back(initial);
        mean_.push_back(0.0);
        inv_sqrt_pulls_.push_back(0.0);
        refresh(arms_.size() - 1);
        return arms_.size() - 1;
    }

    void add_sample(std::size_t id, double reward) {
        ++stats_[id].pulls;
        stats_[id].reward_sum += reward;
        refresh(id);
    }

    void refresh(std::size_t id) {
        const auto& s = stats_[id];
        if (s.pulls == 0) return;
        mean_[id] = s.mean();
        inv_sqrt_pulls_[id] = 1.0 / std::sqrt(static_cast<double>(s.pulls));
    }

    double c_;
    std::vector<Arm> arms_;
    std::vector<ArmStats> stats_;
    std::vector<double> mean_;
    std::vector<double> inv_sqrt_pulls_;
    std::uint64_t t_ = 0;
    std::size_t first_unpulled_ = 0;
};

struct StepResult {
    std::size_t arm = 0;
    Action action;  // the concrete action actually played
    Observation observation;
};

/// One UCB round: pick the arm, resolve a mixture to a constituent, sample the
/// instance and credit the reward to the chosen arm.
inline StepResult ucb_step(UcbState& state, const Instance& inst, Rng& rng) {
    StepResult out;
    out.arm = state.select();
    const Arm& arm = state.arm(out.arm);
    out.action = arm.is_mixture() ? arm.mixture().resolve(rng) : arm.action();
    out.observation = sample(inst, out.action, rng);
    state.record(out.arm, out.observation.y);
    return out;
}

}  // namespace cbandit
