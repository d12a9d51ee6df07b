#pragma once

#include <functional>

#include "molsrl/ccs/types.hpp"
#include "molsrl/momdp/environment.hpp"
#include "molsrl/nn/qnetwork.hpp"
#include "molsrl/solver/qtable.hpp"

namespace molsrl::solver {

using Policy = std::function<momdp::ActionId(const momdp::Environment&, const momdp::Observation&)>;

/// Mean discounted vector return of `policy` over `episodes` rollouts from
/// the start state (each capped by the environment horizon).
ccs::ValueVector evaluate_policy(momdp::Environment& env, const Policy& policy, std::size_t episodes, Rng& rng);

/// Greedy (epsilon = 0) evaluation of a Q-network under weight w.
ccs::ValueVector evaluate_policy(momdp::Environment& env, const nn::QNetwork& net, const ccs::WeightVector& w,
                                 std::size_t episodes, Rng& rng);
/// Greedy evaluation of a Q-table under weight w.
ccs::ValueVector evaluate_policy(momdp::Environment& env, const QTable& table, const ccs::WeightVector& w,
                                 std::size_t episodes, Rng& rng);

/// 1 rollout for deterministic environments, otherwise `stochastic`.
std::size_t default_eval_episodes(const momdp::Environment& env, std::size_t stochastic = 32);

}  // namespace molsrl::solver
