#pragma once

// Environment view of an explicit MOMDPModel, for tiny hand-built problems.
// Observations are one-hot state indicators.

#include <memory>

#include "molsrl/momdp/environment.hpp"
#include "molsrl/momdp/model.hpp"

namespace testenv {

using namespace molsrl;

class ModelEnv final : public momdp::Environment {
public:
    explicit ModelEnv(momdp::MOMDPModel model) : model_(std::move(model)) { model_.validate(); }

    std::unique_ptr<momdp::Environment> clone() const override { return std::make_unique<ModelEnv>(*this); }
    std::string name() const override { return "model"; }
    std::size_t objective_count() const override { return model_.objective_count; }
    std::size_t action_count() const override { return model_.action_count; }
    momdp::ObservationShape observation_shape() const override {
        return momdp::ObservationShape::raw(model_.state_count);
    }
    double discount() const override { return model_.gamma; }
    int horizon() const override { return model_.horizon; }
    bool deterministic() const override { return true; }

    momdp::Observation reset(Rng&) override {
        state_ = model_.start;
        steps_ = 0;
        done_ = false;
        return observe();
    }

    momdp::StepResult step(momdp::ActionId a) override {
        if (done_ || a >= model_.action_count) throw ContractViolation("model env: bad step");
        momdp::StepResult r;
        r.reward = model_.reward_vector(state_, a);
        state_ = model_.successor(state_, a);
        ++steps_;
        r.terminal = model_.terminal[state_];
        r.done = r.terminal || steps_ >= model_.horizon;
        done_ = r.done;
        r.observation = observe();
        return r;
    }

    bool done() const override { return done_; }
    int steps() const override { return steps_; }
    std::size_t state_key() const override { return state_; }
    std::size_t state_key_count() const override { return model_.state_count; }

private:
    momdp::Observation observe() const {
        momdp::Observation o{observation_shape(), std::vector<double>(model_.state_count, 0.0)};
        o.data[state_] = 1.0;
        return o;
    }

    momdp::MOMDPModel model_;
    std::size_t state_ = 0;
    int steps_ = 0;
    bool done_ = false;
};

/// Builds a model from (state, action) -> (next, reward) rows. The last state
/// is the absorbing terminal.
struct ModelBuilder {
    momdp::MOMDPModel m;

    ModelBuilder(std::size_t states, std::size_t actions, double gamma) {
        m.state_count = states;
        m.action_count = actions;
        m.objective_count = 2;
        m.gamma = gamma;
        m.next.assign(states * actions, states - 1);
        m.reward.assign(states * actions * 2, 0.0);
        m.terminal.assign(states, false);
        m.terminal[states - 1] = true;
    }

    ModelBuilder& edge(std::size_t s, std::size_t a, std::size_t next, double r1, double r2) {
        m.next[s * m.action_count + a] = next;
        m.reward[(s * m.action_count + a) * 2] = r1;
        m.reward[(s * m.action_count + a) * 2 + 1] = r2;
        return *this;
    }
};

/// One decision state: action 0 pays (1, 0), action 1 pays (0, 1).
inline momdp::MOMDPModel bandit(double gamma = 0.0) {
    return ModelBuilder(2, 2, gamma).edge(0, 0, 1, 1.0, 0.0).edge(0, 1, 1, 0.0, 1.0).m;
}

/// s0 -a0-> s1 paying (0, -1), s0 -a1-> end paying (0.2, 0);
/// s1 -a0-> end paying (1, -1), s1 -a1-> end paying (0, 0).
inline momdp::MOMDPModel two_step_chain(double gamma = 0.97) {
    return ModelBuilder(3, 2, gamma)
        .edge(0, 0, 1, 0.0, -1.0)
        .edge(0, 1, 2, 0.2, 0.0)
        .edge(1, 0, 2, 1.0, -1.0)
        .edge(1, 1, 2, 0.0, 0.0)
        .m;
}

}  // namespace testenv
