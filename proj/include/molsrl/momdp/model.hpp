#pragma once

#include <cstddef>
#include <vector>

#include "molsrl/momdp/environment.hpp"

namespace molsrl::momdp {

/// Explicit finite MOMDP with deterministic transitions. Terminal states
/// absorb with zero reward.
struct MOMDPModel {
    std::size_t state_count = 0;
    std::size_t action_count = 0;
    std::size_t objective_count = 0;
    double gamma = 0.97;
    std::size_t start = 0;
    /// Horizon cap applied when evaluating policies by rollout.
    int horizon = 200;

    std::vector<std::size_t> next;       // [s * A + a]
    std::vector<double> reward;          // [(s * A + a) * n + k]
    std::vector<bool> terminal;          // [s]

    std::size_t successor(std::size_t s, ActionId a) const { return next[s * action_count + a]; }
    double reward_at(std::size_t s, ActionId a, std::size_t k) const {
        return reward[(s * action_count + a) * objective_count + k];
    }
    RewardVector reward_vector(std::size_t s, ActionId a) const;

    /// Throws ConfigError when arrays are inconsistent or terminal states are
    /// not absorbing with zero reward.
    void validate() const;
};

}  // namespace molsrl::momdp
