#pragma once

#include <vector>

#include "molsrl/ccs/types.hpp"
#include "molsrl/dol/dol.hpp"
#include "molsrl/momdp/model.hpp"
#include "molsrl/solver/solver.hpp"

namespace molsrl::planner {

/// state -> action, total over the model's states.
using DeterministicPolicy = std::vector<momdp::ActionId>;

/// Value iteration on the scalar reward w . r until the sup-norm change
/// drops below `tol`; returns the greedy policy with ties (within 1e-12)
/// going to the lowest action id.
DeterministicPolicy scalarised_value_iteration(const momdp::MOMDPModel& model, const ccs::WeightVector& w,
                                               double tol = 1e-10);

/// Discounted vector return of following `policy` from the start state for
/// at most model.horizon steps (stops at a terminal state).
ccs::ValueVector policy_eval_vector(const momdp::MOMDPModel& model, const DeterministicPolicy& policy);

/// Same quantity by iterating V(s) = r(s, pi(s)) + gamma V(s') to `tol`
/// (no horizon cap). Agrees with policy_eval_vector for policies that
/// terminate within the horizon.
ccs::ValueVector policy_eval_vector_iterative(const momdp::MOMDPModel& model, const DeterministicPolicy& policy,
                                              double tol = 1e-14);

/// Exact OLS-compliant solver: value iteration plus vector policy evaluation.
class ExactSolver final : public solver::ScalarisedSolver {
public:
    explicit ExactSolver(momdp::MOMDPModel model, double tol = 1e-10);

    std::string name() const override { return "exact"; }
    std::size_t objective_count() const override { return model_.objective_count; }
    solver::LearnedModel fresh_model(Rng&) const override { return {}; }
    solver::SolverResult solve(const ccs::WeightVector& w, solver::LearnedModel start, Rng& rng) override;

    std::size_t calls() const { return calls_; }
    const momdp::MOMDPModel& model() const { return model_; }

private:
    momdp::MOMDPModel model_;
    double tol_;
    std::size_t calls_ = 0;
};

/// The true CCS: the outer loop run with the exact solver and tau = 0.
dol::DolResult exact_ccs_run(const momdp::MOMDPModel& model, std::size_t max_iterations = 1000);
ccs::PartialCCS exact_ccs(const momdp::MOMDPModel& model);

struct MaxCCSError {
    double value = 0.0;
    ccs::WeightVector weight;
};

/// max over `grid_points` evenly spaced weights w1 in [0, 1] of
/// V*_true(w) - V*_learned(w), clamped below at zero. Ties in the maximum go
/// to the smallest w1. Two objectives only.
MaxCCSError max_ccs_error(const ccs::PartialCCS& truth, const ccs::PartialCCS& learned,
                          std::size_t grid_points = 10001);

/// Same maximum evaluated at the corner weights of both pruned sets, which is
/// exact for two objectives.
MaxCCSError max_ccs_error_corners(const ccs::PartialCCS& truth, const ccs::PartialCCS& learned);

}  // namespace molsrl::planner
