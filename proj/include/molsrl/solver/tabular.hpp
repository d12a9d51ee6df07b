#pragma once

#include <memory>

#include "molsrl/momdp/environment.hpp"
#include "molsrl/solver/epsilon.hpp"
#include "molsrl/solver/solver.hpp"

namespace molsrl::solver {

struct TabularConfig {
    std::size_t total_episodes = 6000;
    EpsilonSchedule epsilon{1.0, 0.05, 3000};
    double alpha = 0.1;
    /// Rollouts for the final value estimate; 0 picks 1 (deterministic) or 32.
    std::size_t eval_episodes = 0;
    /// Value every entry of a fresh table starts at, one per objective;
    /// empty means zero. An upper bound on returns makes exploration
    /// systematic.
    std::vector<double> initial_value;
};

/// Vector Q-learning over the environment's discrete state keys:
/// Q(s,a) += alpha (r + gamma Q(s', a*) - Q(s,a)) componentwise, with
/// a* = argmax_a' w . Q(s', a'). Exploration breaks greedy ties uniformly;
/// evaluation breaks them towards the lowest action id.
class TabularSolver final : public ScalarisedSolver {
public:
    TabularSolver(const momdp::Environment& prototype, TabularConfig config);

    std::string name() const override { return "tabular"; }
    std::size_t objective_count() const override { return prototype_->objective_count(); }
    LearnedModel fresh_model(Rng& rng) const override;
    SolverResult solve(const ccs::WeightVector& w, LearnedModel start, Rng& rng) override;

private:
    std::unique_ptr<momdp::Environment> prototype_;
    TabularConfig config_;
};

/// Runs the tabular solver with an explicit table; convenience for tests.
SolverResult tabular_scalarised_q(momdp::Environment& env, const ccs::WeightVector& w, QTable table,
                                  const TabularConfig& config, Rng& rng);

}  // namespace molsrl::solver
