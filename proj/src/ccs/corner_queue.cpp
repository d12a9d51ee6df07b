#include "molsrl/ccs/corner_queue.hpp"

#include <algorithm>
#include <cmath>

namespace molsrl::ccs {

namespace {

bool pops_before(const CornerWeightQueue::Entry& a, const CornerWeightQueue::Entry& b) {
    if (a.priority != b.priority) return a.priority > b.priority;
    return a.sequence < b.sequence;
}

}  // namespace

bool CornerWeightQueue::push(WeightVector w, double priority) {
    if (std::isnan(priority)) throw std::invalid_argument("CornerWeightQueue: NaN priority");
    if (contains(w)) return false;
    entries_.push_back({std::move(w), priority, next_sequence_++});
    return true;
}

CornerWeightQueue::Entry CornerWeightQueue::pop() {
    if (entries_.empty()) throw ContractViolation("CornerWeightQueue: pop on empty queue");
    auto best = std::min_element(entries_.begin(), entries_.end(), pops_before);
    Entry out = std::move(*best);
    entries_.erase(best);
    return out;
}

bool CornerWeightQueue::remove(const WeightVector& w) {
    auto it = std::find_if(entries_.begin(), entries_.end(), [&](const Entry& e) { return e.weight.near(w); });
    if (it == entries_.end()) return false;
    entries_.erase(it);
    return true;
}

bool CornerWeightQueue::contains(const WeightVector& w) const {
    return std::any_of(entries_.begin(), entries_.end(), [&](const Entry& e) { return e.weight.near(w); });
}

std::vector<CornerWeightQueue::Entry> CornerWeightQueue::snapshot() const {
    auto out = entries_;
    std::sort(out.begin(), out.end(), pops_before);
    return out;
}

}  // namespace molsrl::ccs
