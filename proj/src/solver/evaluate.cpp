#include "molsrl/solver/evaluate.hpp"

#include <cmath>
#include <vector>

#include "molsrl/nn/train.hpp"
#include "molsrl/solver/solver.hpp"

namespace molsrl::solver {

ccs::ValueVector evaluate_policy(momdp::Environment& env, const Policy& policy, std::size_t episodes, Rng& rng) {
    if (episodes == 0) throw ContractViolation("evaluate_policy: need at least one episode");
    std::vector<double> total(env.objective_count(), 0.0);
    for (std::size_t e = 0; e < episodes; ++e) {
        momdp::Observation obs = env.reset(rng);
        double discount = 1.0;
        while (!env.done()) {
            auto step = env.step(policy(env, obs));
            for (std::size_t k = 0; k < total.size(); ++k) total[k] += discount * step.reward[k];
            discount *= env.discount();
            obs = std::move(step.observation);
        }
    }
    for (double& t : total) t /= static_cast<double>(episodes);
    return ccs::ValueVector(std::move(total));
}

ccs::ValueVector evaluate_policy(momdp::Environment& env, const nn::QNetwork& net, const ccs::WeightVector& w,
                                 std::size_t episodes, Rng& rng) {
    std::vector<double> features(net.input_size());
    return evaluate_policy(
        env,
        [&](const momdp::Environment& e, const momdp::Observation& obs) {
            e.network_input(obs, features);
            return nn::greedy_action(net.q_matrix(features), w);
        },
        episodes, rng);
}

ccs::ValueVector evaluate_policy(momdp::Environment& env, const QTable& table, const ccs::WeightVector& w,
                                 std::size_t episodes, Rng& rng) {
    return evaluate_policy(
        env, [&](const momdp::Environment& e, const momdp::Observation&) { return table.greedy(e.state_key(), w); },
        episodes, rng);
}

std::size_t default_eval_episodes(const momdp::Environment& env, std::size_t stochastic) {
    return env.deterministic() ? 1 : stochastic;
}

void reinit_last_layer(LearnedModel& model, Rng& rng) {
    if (auto* net = std::get_if<nn::QNetwork>(&model)) net->reinit_last_layer(rng);
}

}  // namespace molsrl::solver
