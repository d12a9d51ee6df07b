#include "molsrl/solver/deep_q.hpp"

#include <string>

#include "molsrl/nn/train.hpp"
#include "molsrl/solver/evaluate.hpp"
#include "molsrl/solver/replay_buffer.hpp"

namespace molsrl::solver {

DeepQSolver::DeepQSolver(const momdp::Environment& prototype, nn::ArchitectureTemplate arch, DeepQConfig config)
    : prototype_(prototype.clone()), arch_(std::move(arch)), config_(config) {
    if (arch_.input.size() != prototype_->observation_shape().size())
        throw ConfigError("DeepQSolver: template input does not match the environment observation");
    if (config_.parallel_episodes == 0 || config_.minibatch == 0 || config_.total_episodes == 0)
        throw ConfigError("DeepQSolver: episode counts and batch sizes must be positive");
    if (config_.target_sync_episodes == 0) throw ConfigError("DeepQSolver: target sync period must be positive");
    if (!(config_.reward_scale > 0.0)) throw ConfigError("DeepQSolver: reward scale must be positive");
}

LearnedModel DeepQSolver::fresh_model(Rng& rng) const {
    nn::QNetwork net(arch_, prototype_->action_count(), prototype_->objective_count(), rng());
    if (config_.zero_head) net.zero_last_layer();
    return net;
}

SolverResult DeepQSolver::solve(const ccs::WeightVector& w, LearnedModel start, Rng& rng) {
    if (std::holds_alternative<std::monostate>(start)) start = fresh_model(rng);
    auto* online_ptr = std::get_if<nn::QNetwork>(&start);
    if (online_ptr == nullptr) throw ContractViolation("DeepQSolver: start model is not a Q-network");
    nn::QNetwork online = std::move(*online_ptr);
    if (online.input_size() != arch_.input.size() || online.actions() != prototype_->action_count() ||
        online.objectives() != prototype_->objective_count())
        throw DimensionError("DeepQSolver: start model does not match the environment");
    if (w.size() != prototype_->objective_count()) throw DimensionError("DeepQSolver: weight size mismatch");

    nn::QNetwork target = online;
    nn::AdamState adam(config_.learning_rate);
    adam.clip_norm = config_.clip_norm;
    ReplayBuffer buffer(config_.replay_capacity);

    const std::size_t width = online.input_size();
    const std::size_t n = w.size();
    const double gamma = prototype_->discount();

    std::vector<std::unique_ptr<momdp::Environment>> envs;
    for (std::size_t i = 0; i < config_.parallel_episodes; ++i) envs.push_back(prototype_->clone());

    SolverResult result;
    std::size_t done_episodes = 0;
    std::size_t next_sync = config_.target_sync_episodes;
    while (done_episodes < config_.total_episodes) {
        const std::size_t count = std::min(config_.parallel_episodes, config_.total_episodes - done_episodes);
        std::vector<std::vector<double>> features(count, std::vector<double>(width));
        std::vector<double> returns(count, 0.0);
        std::vector<double> discounts(count, 1.0);
        std::vector<double> eps(count);
        std::vector<std::size_t> active;
        for (std::size_t i = 0; i < count; ++i) {
            const auto obs = envs[i]->reset(rng);
            envs[i]->network_input(obs, features[i]);
            eps[i] = config_.epsilon(done_episodes + i);
            active.push_back(i);
        }

        double loss_sum = 0.0;
        std::size_t loss_count = 0;
        nn::Matrix inputs;
        while (!active.empty()) {
            inputs.resize(static_cast<Eigen::Index>(width), static_cast<Eigen::Index>(active.size()));
            for (std::size_t j = 0; j < active.size(); ++j)
                inputs.col(static_cast<Eigen::Index>(j)) =
                    Eigen::Map<const nn::Vector>(features[active[j]].data(), static_cast<Eigen::Index>(width));
            const nn::Matrix q = online.forward(inputs);

            std::vector<std::size_t> still_active;
            for (std::size_t j = 0; j < active.size(); ++j) {
                const std::size_t i = active[j];
                std::size_t action;
                if (uniform01(rng) < eps[i]) {
                    action = uniform_index(rng, online.actions());
                } else {
                    action = 0;
                    double best = 0.0;
                    for (std::size_t a = 0; a < online.actions(); ++a) {
                        double s = 0.0;
                        for (std::size_t k = 0; k < n; ++k)
                            s += w[k] * q(static_cast<Eigen::Index>(a * n + k), static_cast<Eigen::Index>(j));
                        if (a == 0 || s > best) {
                            best = s;
                            action = a;
                        }
                    }
                }
                auto step = envs[i]->step(action);
                nn::Transition t;
                t.observation = features[i];
                t.action = action;
                t.reward = step.reward;
                for (auto& r : t.reward) r *= config_.reward_scale;
                envs[i]->network_input(step.observation, features[i]);
                t.next_observation = features[i];
                t.terminal = step.terminal;
                double r = 0.0;
                for (std::size_t k = 0; k < n; ++k) r += w[k] * step.reward[k];
                returns[i] += discounts[i] * r;
                discounts[i] *= gamma;
                buffer.push(std::move(t));
                if (!step.done) still_active.push_back(i);
            }
            active = std::move(still_active);

            for (std::size_t u = 0; u < config_.updates_per_step; ++u) {
                if (buffer.size() < config_.minibatch) break;
                const auto batch = buffer.sample(config_.minibatch, rng);
                try {
                    loss_sum += nn::train_step(online, target, batch, w, gamma, adam);
                } catch (const DivergenceError& e) {
                    throw DivergenceError(std::string(e.what()) + " at episode " + std::to_string(done_episodes));
                }
                ++loss_count;
            }
        }

        const double mean_loss = loss_count > 0 ? loss_sum / static_cast<double>(loss_count) : 0.0;
        for (std::size_t i = 0; i < count; ++i)
            result.curve.push_back({done_episodes + i, eps[i], mean_loss, returns[i]});
        done_episodes += count;
        if (done_episodes >= next_sync) {
            target.copy_from(online);
            while (next_sync <= done_episodes) next_sync += config_.target_sync_episodes;
        }
    }

    auto eval_env = prototype_->clone();
    const std::size_t eval = config_.eval_episodes > 0 ? config_.eval_episodes : default_eval_episodes(*eval_env);
    result.value = evaluate_policy(*eval_env, online, w, eval, rng);
    result.episodes = done_episodes;
    result.model = std::move(online);
    return result;
}

}  // namespace molsrl::solver
