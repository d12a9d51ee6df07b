#include "molsrl/planner/planner.hpp"

#include <algorithm>
#include <cmath>

#include "molsrl/ccs/envelope.hpp"

namespace molsrl::planner {

namespace {

double scalar_reward(const momdp::MOMDPModel& m, std::size_t s, momdp::ActionId a, const ccs::WeightVector& w) {
    double r = 0.0;
    for (std::size_t k = 0; k < m.objective_count; ++k) r += w[k] * m.reward_at(s, a, k);
    return r;
}

}  // namespace

DeterministicPolicy scalarised_value_iteration(const momdp::MOMDPModel& model, const ccs::WeightVector& w,
                                               double tol) {
    if (w.size() != model.objective_count) throw DimensionError("value iteration: weight size mismatch");
    const std::size_t S = model.state_count;
    const std::size_t A = model.action_count;
    std::vector<double> v(S, 0.0);
    std::vector<double> next(S, 0.0);
    // gamma = 1 relies on proper policies; the cap keeps improper ones finite.
    const std::size_t max_sweeps = model.gamma < 1.0 ? 1000000 : static_cast<std::size_t>(model.horizon);
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        double delta = 0.0;
        for (std::size_t s = 0; s < S; ++s) {
            if (model.terminal[s]) {
                next[s] = 0.0;
                continue;
            }
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t a = 0; a < A; ++a)
                best = std::max(best, scalar_reward(model, s, a, w) + model.gamma * v[model.successor(s, a)]);
            next[s] = best;
            delta = std::max(delta, std::abs(best - v[s]));
        }
        v.swap(next);
        if (delta < tol) break;
    }

    DeterministicPolicy policy(S, 0);
    for (std::size_t s = 0; s < S; ++s) {
        std::vector<double> q(A);
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < A; ++a) {
            q[a] = scalar_reward(model, s, a, w) + model.gamma * v[model.successor(s, a)];
            best = std::max(best, q[a]);
        }
        for (std::size_t a = 0; a < A; ++a) {
            if (q[a] >= best - 1e-12) {
                policy[s] = a;
                break;
            }
        }
    }
    return policy;
}

ccs::ValueVector policy_eval_vector(const momdp::MOMDPModel& model, const DeterministicPolicy& policy) {
    if (policy.size() != model.state_count) throw DimensionError("policy evaluation: policy is not total");
    std::vector<double> total(model.objective_count, 0.0);
    std::size_t s = model.start;
    double discount = 1.0;
    for (int t = 0; t < model.horizon && !model.terminal[s]; ++t) {
        const auto a = policy[s];
        for (std::size_t k = 0; k < model.objective_count; ++k) total[k] += discount * model.reward_at(s, a, k);
        discount *= model.gamma;
        s = model.successor(s, a);
    }
    return ccs::ValueVector(std::move(total));
}

ccs::ValueVector policy_eval_vector_iterative(const momdp::MOMDPModel& model, const DeterministicPolicy& policy,
                                              double tol) {
    if (policy.size() != model.state_count) throw DimensionError("policy evaluation: policy is not total");
    const std::size_t S = model.state_count;
    const std::size_t n = model.objective_count;
    std::vector<double> v(S * n, 0.0);
    std::vector<double> next(S * n, 0.0);
    for (std::size_t sweep = 0; sweep < 1000000; ++sweep) {
        double delta = 0.0;
        for (std::size_t s = 0; s < S; ++s) {
            const auto a = policy[s];
            const auto sn = model.successor(s, a);
            for (std::size_t k = 0; k < n; ++k) {
                const double value = model.terminal[s] ? 0.0 : model.reward_at(s, a, k) + model.gamma * v[sn * n + k];
                delta = std::max(delta, std::abs(value - v[s * n + k]));
                next[s * n + k] = value;
            }
        }
        v.swap(next);
        if (delta < tol) break;
    }
    return ccs::ValueVector(std::vector<double>(v.begin() + static_cast<std::ptrdiff_t>(model.start * n),
                                                v.begin() + static_cast<std::ptrdiff_t>((model.start + 1) * n)));
}

ExactSolver::ExactSolver(momdp::MOMDPModel model, double tol) : model_(std::move(model)), tol_(tol) {
    model_.validate();
}

solver::SolverResult ExactSolver::solve(const ccs::WeightVector& w, solver::LearnedModel, Rng&) {
    ++calls_;
    solver::SolverResult result;
    result.value = policy_eval_vector(model_, scalarised_value_iteration(model_, w, tol_));
    return result;
}

dol::DolResult exact_ccs_run(const momdp::MOMDPModel& model, std::size_t max_iterations) {
    ExactSolver solver(model);
    dol::DolConfig config;
    config.tau = 0.0;
    config.max_iterations = max_iterations;
    config.reuse = dol::ReuseMode::None;
    Rng rng(0);
    return dol::run_dol(solver, config, rng);
}

ccs::PartialCCS exact_ccs(const momdp::MOMDPModel& model) { return exact_ccs_run(model).ccs; }

MaxCCSError max_ccs_error(const ccs::PartialCCS& truth, const ccs::PartialCCS& learned, std::size_t grid_points) {
    if (truth.empty() || learned.empty()) throw std::invalid_argument("max_ccs_error: empty set");
    if (grid_points < 2) throw std::invalid_argument("max_ccs_error: need at least 2 grid points");
    if (truth[0].size() != 2 || learned[0].size() != 2)
        throw DimensionError("max_ccs_error: two objectives only");
    MaxCCSError out{0.0, ccs::WeightVector::two(0.0)};
    double best = -1.0;
    for (std::size_t i = 0; i < grid_points; ++i) {
        const auto w = ccs::WeightVector::two(static_cast<double>(i) / static_cast<double>(grid_points - 1));
        const double gap = ccs::max_scalarised_value(truth, w).value - ccs::max_scalarised_value(learned, w).value;
        if (gap > best) {
            best = gap;
            out.weight = w;
        }
    }
    out.value = std::max(0.0, best);
    return out;
}

MaxCCSError max_ccs_error_corners(const ccs::PartialCCS& truth, const ccs::PartialCCS& learned) {
    if (truth.empty() || learned.empty()) throw std::invalid_argument("max_ccs_error: empty set");
    auto corners = ccs::corner_weights(ccs::prune(truth));
    const auto more = ccs::corner_weights(ccs::prune(learned));
    corners.insert(corners.end(), more.begin(), more.end());
    std::sort(corners.begin(), corners.end(),
              [](const ccs::WeightVector& a, const ccs::WeightVector& b) { return a[0] < b[0]; });
    MaxCCSError out{0.0, ccs::WeightVector::two(0.0)};
    double best = -1.0;
    for (const auto& w : corners) {
        const double gap = ccs::max_scalarised_value(truth, w).value - ccs::max_scalarised_value(learned, w).value;
        if (gap > best) {
            best = gap;
            out.weight = w;
        }
    }
    out.value = std::max(0.0, best);
    return out;
}

}  // namespace molsrl::planner
