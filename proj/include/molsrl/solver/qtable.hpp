#pragma once

#include <span>
#include <vector>

#include "molsrl/ccs/types.hpp"

namespace molsrl::solver {

/// Dense (state key, action) -> value vector table; unseen entries are zero.
class QTable {
public:
    QTable() = default;
    QTable(std::size_t states, std::size_t actions, std::size_t objectives);

    std::size_t states() const { return states_; }
    std::size_t actions() const { return actions_; }
    std::size_t objectives() const { return objectives_; }

    std::span<double> at(std::size_t state, std::size_t action);
    std::span<const double> at(std::size_t state, std::size_t action) const;
    double scalarised(std::size_t state, std::size_t action, const ccs::WeightVector& w) const;
    /// argmax_a w . Q(s, a); ties go to the lowest action id.
    std::size_t greedy(std::size_t state, const ccs::WeightVector& w) const;

    const std::vector<double>& data() const { return data_; }
    bool operator==(const QTable&) const = default;

private:
    std::size_t states_ = 0;
    std::size_t actions_ = 0;
    std::size_t objectives_ = 0;
    std::vector<double> data_;
};

}  // namespace molsrl::solver
