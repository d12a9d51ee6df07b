#include "molsrl/solver/qtable.hpp"

namespace molsrl::solver {

QTable::QTable(std::size_t states, std::size_t actions, std::size_t objectives)
    : states_(states), actions_(actions), objectives_(objectives), data_(states * actions * objectives, 0.0) {}

std::span<double> QTable::at(std::size_t state, std::size_t action) {
    if (state >= states_ || action >= actions_) throw ContractViolation("QTable: index out of range");
    return {data_.data() + (state * actions_ + action) * objectives_, objectives_};
}

std::span<const double> QTable::at(std::size_t state, std::size_t action) const {
    if (state >= states_ || action >= actions_) throw ContractViolation("QTable: index out of range");
    return {data_.data() + (state * actions_ + action) * objectives_, objectives_};
}

double QTable::scalarised(std::size_t state, std::size_t action, const ccs::WeightVector& w) const {
    const auto q = at(state, action);
    double s = 0.0;
    for (std::size_t k = 0; k < objectives_; ++k) s += w[k] * q[k];
    return s;
}

std::size_t QTable::greedy(std::size_t state, const ccs::WeightVector& w) const {
    std::size_t best = 0;
    double best_value = scalarised(state, 0, w);
    for (std::size_t a = 1; a < actions_; ++a) {
        const double v = scalarised(state, a, w);
        if (v > best_value) {
            best = a;
            best_value = v;
        }
    }
    return best;
}

}  // namespace molsrl::solver
