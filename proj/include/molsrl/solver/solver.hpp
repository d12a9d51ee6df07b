#pragma once

#include <string>
#include <variant>
#include <vector>

#include "molsrl/ccs/types.hpp"
#include "molsrl/nn/qnetwork.hpp"
#include "molsrl/solver/qtable.hpp"

namespace molsrl::solver {

/// What a single-objective solve hands back for reuse. Exact planners keep
/// nothing.
using LearnedModel = std::variant<std::monostate, nn::QNetwork, QTable>;

struct CurvePoint {
    std::size_t episode = 0;
    double epsilon = 0.0;
    double loss = 0.0;
    double scalarised_return = 0.0;
};

struct SolverResult {
    /// Start-state value of the learnt policy, measured by rollout (or exact
    /// evaluation), never read off the model.
    ccs::ValueVector value;
    LearnedModel model;
    std::vector<CurvePoint> curve;
    std::size_t episodes = 0;
};

/// OLS-compliant single-objective solver: for a fixed weight, returns the
/// value vector of the policy it finds.
class ScalarisedSolver {
public:
    virtual ~ScalarisedSolver() = default;
    virtual std::string name() const = 0;
    virtual std::size_t objective_count() const = 0;
    /// Randomly initialised model for this solver.
    virtual LearnedModel fresh_model(Rng& rng) const = 0;
    virtual SolverResult solve(const ccs::WeightVector& w, LearnedModel start, Rng& rng) = 0;
};

/// Partial reuse: redraw a network's final layer. Tables and empty models
/// have no layers and are left as they are.
void reinit_last_layer(LearnedModel& model, Rng& rng);

}  // namespace molsrl::solver
