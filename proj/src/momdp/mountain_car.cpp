#include "molsrl/momdp/mountain_car.hpp"

#include <algorithm>
#include <cmath>

namespace molsrl::momdp {

MountainCar::MountainCar(MountainCarConfig config) : config_(config) {
    if (config_.horizon < 1) throw ConfigError("MC: horizon must be >= 1");
    if (config_.gamma < 0.0 || config_.gamma > 1.0) throw ConfigError("MC: gamma outside [0,1]");
    if (config_.bins < 1) throw ConfigError("MC: bins must be >= 1");
    if (config_.start_position < kMinPosition || config_.start_position >= kGoalPosition)
        throw ConfigError("MC: start position outside the track");
    position_ = config_.start_position;
}

std::unique_ptr<Environment> MountainCar::clone() const { return std::make_unique<MountainCar>(*this); }

Observation MountainCar::reset(Rng& rng) {
    position_ = config_.random_start ? -0.6 + 0.2 * uniform01(rng) : config_.start_position;
    velocity_ = 0.0;
    steps_ = 0;
    done_ = false;
    return observe();
}

StepResult MountainCar::step(ActionId action) {
    if (done_) throw ContractViolation("MC: step called on a finished episode");
    if (action >= action_count()) throw ContractViolation("MC: action out of range");
    const double force = static_cast<double>(action) - 1.0;
    velocity_ += force * kForce - kGravity * std::cos(3.0 * position_);
    velocity_ = std::clamp(velocity_, -kMaxSpeed, kMaxSpeed);
    position_ = std::clamp(position_ + velocity_, kMinPosition, kMaxPosition);
    if (position_ == kMinPosition && velocity_ < 0.0) velocity_ = 0.0;
    ++steps_;

    const bool goal = position_ >= kGoalPosition;
    StepResult result;
    result.reward = {goal ? 0.0 : -1.0 / config_.horizon, -config_.fuel() * std::abs(force)};
    result.terminal = goal;
    done_ = goal || steps_ >= config_.horizon;
    result.done = done_;
    result.observation = observe();
    return result;
}

void MountainCar::network_input(const Observation& obs, std::span<double> out) const {
    if (obs.data.size() != 2 || out.size() != 2) throw DimensionError("MC: network_input expects 2 features");
    out[0] = (obs.data[0] + 0.3) / 0.9;
    out[1] = obs.data[1] / kMaxSpeed;
}

std::size_t MountainCar::state_key() const {
    const auto bins = static_cast<double>(config_.bins);
    auto bucket = [&](double v, double lo, double hi) {
        const double f = std::floor((v - lo) / (hi - lo) * bins);
        return static_cast<std::size_t>(std::clamp(f, 0.0, bins - 1.0));
    };
    return bucket(position_, kMinPosition, kMaxPosition) * config_.bins +
           bucket(velocity_, -kMaxSpeed, kMaxSpeed);
}

void MountainCar::set_state(double position, double velocity) {
    position_ = std::clamp(position, kMinPosition, kMaxPosition);
    velocity_ = std::clamp(velocity, -kMaxSpeed, kMaxSpeed);
    steps_ = 0;
    done_ = false;
}

Observation MountainCar::observe() const { return Observation{ObservationShape::raw(2), {position_, velocity_}}; }

}  // namespace molsrl::momdp
