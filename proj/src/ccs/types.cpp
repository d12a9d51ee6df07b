#include "molsrl/ccs/types.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace molsrl::ccs {

WeightVector::WeightVector(std::vector<double> components) : c_(std::move(components)) {
    if (c_.size() < 2) throw DimensionError("WeightVector: need at least 2 objectives");
    double sum = 0.0;
    for (double x : c_) {
        if (!std::isfinite(x) || x < 0.0) throw std::invalid_argument("WeightVector: negative or non-finite component");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("WeightVector: components must sum to 1");
}

WeightVector WeightVector::two(double w1) {
    if (w1 < 0.0 || w1 > 1.0) throw std::invalid_argument("WeightVector::two: w1 outside [0,1]");
    return WeightVector({w1, 1.0 - w1});
}

WeightVector WeightVector::extremum(std::size_t n, std::size_t i) {
    if (i >= n) throw DimensionError("WeightVector::extremum: index out of range");
    std::vector<double> c(n, 0.0);
    c[i] = 1.0;
    return WeightVector(std::move(c));
}

bool WeightVector::near(const WeightVector& other, double eps) const {
    if (size() != other.size()) return false;
    for (std::size_t i = 0; i < size(); ++i)
        if (std::abs(c_[i] - other.c_[i]) > eps) return false;
    return true;
}

double WeightVector::distance(const WeightVector& other) const {
    if (size() != other.size()) throw DimensionError("WeightVector::distance: size mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < size(); ++i) d += (c_[i] - other.c_[i]) * (c_[i] - other.c_[i]);
    return std::sqrt(d);
}

double scalarise(const ValueVector& v, const WeightVector& w) {
    if (v.size() != w.size())
        throw DimensionError("scalarise: value has " + std::to_string(v.size()) + " components, weight has " +
                             std::to_string(w.size()));
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * w[i];
    return s;
}

bool ExploredWeights::contains(const WeightVector& w) const {
    for (const auto& e : entries_)
        if (e.weight.near(w)) return true;
    return false;
}

void ExploredWeights::raise(std::size_t i, double value) {
    if (value > entries_.at(i).value) entries_[i].value = value;
}

}  // namespace molsrl::ccs
