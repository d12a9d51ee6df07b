#pragma once

#include "molsrl/momdp/environment.hpp"

namespace molsrl::momdp {

struct MountainCarConfig {
    int horizon = 200;
    double gamma = 0.97;
    /// Fuel cost per unit of force; 0 selects 1/horizon.
    double fuel_coefficient = 0.0;
    double start_position = -0.5;
    /// Uniform start position in [-0.6, -0.4] instead of the fixed start.
    bool random_start = false;
    /// Grid resolution per dimension used by tabular learners.
    std::size_t bins = 40;

    double fuel() const { return fuel_coefficient != 0.0 ? fuel_coefficient : 1.0 / horizon; }
};

/// Two-objective mountain car: objective 0 is time (-1/H per step, 0 on the
/// step that reaches the goal), objective 1 is fuel (-c * |force|).
/// Actions: 0 push left, 1 neutral, 2 push right.
class MountainCar final : public Environment {
public:
    static constexpr double kMinPosition = -1.2;
    static constexpr double kMaxPosition = 0.6;
    static constexpr double kMaxSpeed = 0.07;
    static constexpr double kGoalPosition = 0.5;
    static constexpr double kForce = 0.001;
    static constexpr double kGravity = 0.0025;

    explicit MountainCar(MountainCarConfig config = {});

    std::unique_ptr<Environment> clone() const override;
    std::string name() const override { return "mc"; }
    std::size_t objective_count() const override { return 2; }
    std::size_t action_count() const override { return 3; }
    ObservationShape observation_shape() const override { return ObservationShape::raw(2); }
    double discount() const override { return config_.gamma; }
    int horizon() const override { return config_.horizon; }
    bool deterministic() const override { return !config_.random_start; }

    Observation reset(Rng& rng) override;
    StepResult step(ActionId action) override;
    bool done() const override { return done_; }
    int steps() const override { return steps_; }

    /// Maps position and velocity to roughly [-1, 1].
    void network_input(const Observation& obs, std::span<double> out) const override;

    std::size_t state_key() const override;
    std::size_t state_key_count() const override { return config_.bins * config_.bins; }

    double position() const { return position_; }
    double velocity() const { return velocity_; }
    void set_state(double position, double velocity);
    const MountainCarConfig& config() const { return config_; }

private:
    Observation observe() const;

    MountainCarConfig config_;
    double position_ = -0.5;
    double velocity_ = 0.0;
    int steps_ = 0;
    bool done_ = false;
};

}  // namespace molsrl::momdp
