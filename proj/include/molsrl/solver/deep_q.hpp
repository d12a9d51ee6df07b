#pragma once

#include <memory>

#include "molsrl/momdp/environment.hpp"
#include "molsrl/nn/qnetwork.hpp"
#include "molsrl/solver/epsilon.hpp"
#include "molsrl/solver/solver.hpp"

namespace molsrl::solver {

struct DeepQConfig {
    std::size_t total_episodes = 4000;
    EpsilonSchedule epsilon{1.0, 0.05, 2000};
    /// Episodes rolled out in lockstep per batch.
    std::size_t parallel_episodes = 32;
    std::size_t minibatch = 32;
    std::size_t replay_capacity = 10000;
    std::size_t target_sync_episodes = 100;
    double learning_rate = 1e-3;
    /// Global gradient-norm clip; 0 disables.
    double clip_norm = 0.0;
    /// Gradient steps per lockstep environment step.
    std::size_t updates_per_step = 1;
    /// Rollouts for the final value estimate; 0 picks 1 (deterministic) or 32.
    std::size_t eval_episodes = 0;
    /// Common factor applied to every reward component before it enters the
    /// replay buffer. Leaves the greedy policy for any w unchanged; returned
    /// values are always measured in unscaled units.
    double reward_scale = 1.0;
    /// Start fresh networks (and redrawn heads) with a zero output layer.
    bool zero_head = false;
};

/// Scalarised deep Q-learning: vector-valued Q-network, actions chosen by
/// w . Q, vector regression targets from a periodically synced target
/// network, experience replay.
class DeepQSolver final : public ScalarisedSolver {
public:
    DeepQSolver(const momdp::Environment& prototype, nn::ArchitectureTemplate arch, DeepQConfig config);

    std::string name() const override { return "deep-q"; }
    std::size_t objective_count() const override { return prototype_->objective_count(); }
    LearnedModel fresh_model(Rng& rng) const override;
    /// `start` must hold a QNetwork matching the template (a monostate start
    /// is replaced by a fresh model). Throws DivergenceError with the
    /// episode number on NaN.
    SolverResult solve(const ccs::WeightVector& w, LearnedModel start, Rng& rng) override;

    const DeepQConfig& config() const { return config_; }

private:
    std::unique_ptr<momdp::Environment> prototype_;
    nn::ArchitectureTemplate arch_;
    DeepQConfig config_;
};

}  // namespace molsrl::solver
