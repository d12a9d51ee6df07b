#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "molsrl/ccs/types.hpp"

namespace molsrl::ccs {

/// Max-priority queue of corner weights. Equal priorities pop in insertion
/// order; weights within kGeomEps of a queued weight are rejected.
class CornerWeightQueue {
public:
    struct Entry {
        WeightVector weight;
        double priority = 0.0;
        std::uint64_t sequence = 0;
    };

    /// Returns false (and leaves the queue unchanged) for a duplicate weight.
    /// Throws std::invalid_argument for a NaN priority.
    bool push(WeightVector w, double priority);
    Entry pop();
    /// Removes the queued weight near w, if any. Returns whether one was removed.
    bool remove(const WeightVector& w);
    bool contains(const WeightVector& w) const;

    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    /// Snapshot in pop order.
    std::vector<Entry> snapshot() const;

private:
    std::vector<Entry> entries_;
    std::uint64_t next_sequence_ = 0;
};

}  // namespace molsrl::ccs
