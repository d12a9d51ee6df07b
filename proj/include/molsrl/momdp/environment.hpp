#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "molsrl/common.hpp"

namespace molsrl::momdp {

using ActionId = std::size_t;

/// Per-objective immediate reward, in normalised units.
using RewardVector = std::vector<double>;

enum class ObservationKind { Raw, Image };

struct ObservationShape {
    ObservationKind kind = ObservationKind::Raw;
    std::size_t channels = 1;
    std::size_t rows = 1;
    std::size_t cols = 1;

    static ObservationShape raw(std::size_t dim) { return {ObservationKind::Raw, dim, 1, 1}; }
    static ObservationShape image(std::size_t c, std::size_t h, std::size_t w) {
        return {ObservationKind::Image, c, h, w};
    }
    std::size_t size() const { return channels * rows * cols; }
    bool operator==(const ObservationShape&) const = default;
};

/// Raw feature vector or a channels x rows x cols image, stored channel-major.
struct Observation {
    ObservationShape shape;
    std::vector<double> data;

    double at(std::size_t c, std::size_t r, std::size_t col) const {
        return data[(c * shape.rows + r) * shape.cols + col];
    }
    bool operator==(const Observation&) const = default;
};

struct StepResult {
    Observation observation;
    RewardVector reward;
    /// Episode over: terminal state reached or horizon cap hit.
    bool done = false;
    /// A genuine terminal state (treasure, goal); false for horizon cut-offs.
    bool terminal = false;
};

/// Episodic multi-objective environment. Instances are not shared between
/// threads; use clone() to obtain independent copies for batched rollouts.
class Environment {
public:
    virtual ~Environment() = default;

    virtual std::unique_ptr<Environment> clone() const = 0;
    virtual std::string name() const = 0;

    virtual std::size_t objective_count() const = 0;
    virtual std::size_t action_count() const = 0;
    virtual ObservationShape observation_shape() const = 0;
    virtual double discount() const = 0;
    virtual int horizon() const = 0;
    virtual bool deterministic() const = 0;

    virtual Observation reset(Rng& rng) = 0;
    /// Throws ContractViolation when the episode has already finished or the
    /// action is out of range.
    virtual StepResult step(ActionId action) = 0;
    virtual bool done() const = 0;
    virtual int steps() const = 0;

    /// Features fed to a Q-network. Defaults to the observation itself.
    virtual void network_input(const Observation& obs, std::span<double> out) const;

    /// Discrete key of the current state for tabular learners.
    virtual std::size_t state_key() const = 0;
    virtual std::size_t state_key_count() const = 0;
};

}  // namespace molsrl::momdp
