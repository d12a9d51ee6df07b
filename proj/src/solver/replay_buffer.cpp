#include "molsrl/solver/replay_buffer.hpp"

namespace molsrl::solver {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) throw ConfigError("ReplayBuffer: capacity must be positive");
    items_.reserve(capacity_);
}

void ReplayBuffer::push(Transition t) {
    if (items_.size() < capacity_) {
        items_.push_back(std::move(t));
    } else {
        items_[next_] = std::move(t);
    }
    next_ = (next_ + 1) % capacity_;
}

std::vector<const Transition*> ReplayBuffer::sample(std::size_t count, Rng& rng) const {
    if (items_.size() < count) throw ContractViolation("ReplayBuffer: not enough transitions to sample");
    std::vector<const Transition*> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(&items_[uniform_index(rng, items_.size())]);
    return out;
}

}  // namespace molsrl::solver
