#pragma once

#include <vector>

#include "molsrl/nn/train.hpp"

namespace molsrl::solver {

using nn::Transition;

/// Fixed-capacity ring buffer with uniform sampling (with replacement).
class ReplayBuffer {
public:
    explicit ReplayBuffer(std::size_t capacity);

    void push(Transition t);
    std::size_t size() const { return items_.size(); }
    std::size_t capacity() const { return capacity_; }
    const Transition& operator[](std::size_t i) const { return items_[i]; }

    /// Throws ContractViolation when fewer than `count` items are stored.
    std::vector<const Transition*> sample(std::size_t count, Rng& rng) const;

private:
    std::size_t capacity_;
    std::size_t next_ = 0;
    std::vector<Transition> items_;
};

}  // namespace molsrl::solver
