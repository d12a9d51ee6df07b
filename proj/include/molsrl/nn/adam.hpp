#pragma once

#include <cstdint>
#include <vector>

#include "molsrl/nn/qnetwork.hpp"

namespace molsrl::nn {

/// Adam moments for one network. Created fresh per training run; cloning a
/// network never carries optimiser state over.
struct AdamState {
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    /// Global gradient-norm clip; 0 disables clipping.
    double clip_norm = 0.0;

    std::uint64_t step = 0;
    std::vector<std::vector<double>> first_moment;
    std::vector<std::vector<double>> second_moment;

    AdamState() = default;
    explicit AdamState(double lr) : learning_rate(lr) {}
};

/// Applies one Adam update using the gradients stored in `net`.
void adam_update(QNetwork& net, AdamState& state);

}  // namespace molsrl::nn
