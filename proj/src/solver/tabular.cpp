#include "molsrl/solver/tabular.hpp"

#include <algorithm>

#include "molsrl/solver/evaluate.hpp"

namespace molsrl::solver {

namespace {

std::size_t explore_greedy(const QTable& table, std::size_t state, const ccs::WeightVector& w, Rng& rng) {
    std::size_t ties[16];
    std::size_t count = 0;
    double best = 0.0;
    for (std::size_t a = 0; a < table.actions(); ++a) {
        const double v = table.scalarised(state, a, w);
        if (count == 0 || v > best) {
            best = v;
            count = 0;
        }
        if (v == best && count < 16) ties[count++] = a;
    }
    return ties[count == 1 ? 0 : uniform_index(rng, count)];
}

}  // namespace

SolverResult tabular_scalarised_q(momdp::Environment& env, const ccs::WeightVector& w, QTable table,
                                  const TabularConfig& config, Rng& rng) {
    const std::size_t n = env.objective_count();
    if (w.size() != n) throw DimensionError("tabular: weight size mismatch");
    if (table.states() != env.state_key_count() || table.actions() != env.action_count() || table.objectives() != n)
        throw DimensionError("tabular: table shape does not match the environment");
    const double gamma = env.discount();

    SolverResult result;
    for (std::size_t episode = 0; episode < config.total_episodes; ++episode) {
        const double eps = config.epsilon(episode);
        env.reset(rng);
        double ret = 0.0;
        double discount = 1.0;
        while (!env.done()) {
            const std::size_t s = env.state_key();
            const std::size_t a =
                uniform01(rng) < eps ? uniform_index(rng, env.action_count()) : explore_greedy(table, s, w, rng);
            const auto step = env.step(a);
            const std::size_t s_next = env.state_key();
            const std::size_t a_star = step.terminal ? 0 : table.greedy(s_next, w);
            auto q = table.at(s, a);
            for (std::size_t k = 0; k < n; ++k) {
                const double bootstrap = step.terminal ? 0.0 : gamma * table.at(s_next, a_star)[k];
                q[k] += config.alpha * (step.reward[k] + bootstrap - q[k]);
                ret += discount * w[k] * step.reward[k];
            }
            discount *= gamma;
        }
        result.curve.push_back({episode, eps, 0.0, ret});
    }
    const std::size_t eval = config.eval_episodes > 0 ? config.eval_episodes : default_eval_episodes(env);
    result.value = evaluate_policy(env, table, w, eval, rng);
    result.episodes = config.total_episodes;
    result.model = std::move(table);
    return result;
}

TabularSolver::TabularSolver(const momdp::Environment& prototype, TabularConfig config)
    : prototype_(prototype.clone()), config_(config) {
    if (config_.alpha < 0.0 || config_.alpha > 1.0) throw ConfigError("TabularSolver: alpha outside [0,1]");
    if (!config_.initial_value.empty() && config_.initial_value.size() != prototype_->objective_count())
        throw DimensionError("TabularSolver: initial value needs one entry per objective");
}

LearnedModel TabularSolver::fresh_model(Rng&) const {
    QTable table(prototype_->state_key_count(), prototype_->action_count(), prototype_->objective_count());
    if (!config_.initial_value.empty())
        for (std::size_t s = 0; s < table.states(); ++s)
            for (std::size_t a = 0; a < table.actions(); ++a)
                std::copy(config_.initial_value.begin(), config_.initial_value.end(), table.at(s, a).begin());
    return table;
}

SolverResult TabularSolver::solve(const ccs::WeightVector& w, LearnedModel start, Rng& rng) {
    if (std::holds_alternative<std::monostate>(start)) start = fresh_model(rng);
    auto* table = std::get_if<QTable>(&start);
    if (table == nullptr) throw ContractViolation("TabularSolver: start model is not a Q-table");
    auto env = prototype_->clone();
    return tabular_scalarised_q(*env, w, std::move(*table), config_, rng);
}

}  // namespace molsrl::solver
