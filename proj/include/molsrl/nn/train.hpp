#pragma once

#include <span>
#include <vector>

#include "molsrl/ccs/types.hpp"
#include "molsrl/nn/adam.hpp"
#include "molsrl/nn/qnetwork.hpp"

namespace molsrl::nn {

/// One experience tuple. Observations are stored as network features.
struct Transition {
    std::vector<double> observation;
    std::size_t action = 0;
    std::vector<double> reward;
    std::vector<double> next_observation;
    bool terminal = false;
};

/// Index of the row of `q` (|A| x n) maximising w . Q(a); ties go to the
/// lowest action id.
std::size_t greedy_action(const Matrix& q, const ccs::WeightVector& w);

/// Vector targets y = r + gamma * Q(s', a*; target) with
/// a* = argmax_a' w . Q(s', a'; target), or y = r when s' is terminal.
/// Returned as n x batch.
Matrix vector_targets(const QNetwork& target, std::span<const Transition* const> batch, const ccs::WeightVector& w,
                      double gamma);

/// One scalarised deep Q-learning step: mean squared componentwise error
/// between the vector targets and Q(s, a; net) over batch and objectives,
/// followed by one Adam update of `net`. Returns the pre-update loss.
/// Throws DivergenceError when the loss or updated parameters are not finite.
double train_step(QNetwork& net, const QNetwork& target, std::span<const Transition* const> batch,
                  const ccs::WeightVector& w, double gamma, AdamState& adam);

}  // namespace molsrl::nn
