#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "molsrl/common.hpp"

namespace molsrl::ccs {

/// A point on the (n-1)-simplex: non-negative components summing to one.
class WeightVector {
public:
    WeightVector() = default;
    /// Throws DimensionError for fewer than 2 components and
    /// std::invalid_argument when the simplex invariant is violated.
    explicit WeightVector(std::vector<double> components);
    /// (w1, 1 - w1) for two objectives.
    static WeightVector two(double w1);
    /// The i-th vertex of the n-simplex.
    static WeightVector extremum(std::size_t n, std::size_t i);

    std::size_t size() const { return c_.size(); }
    double operator[](std::size_t i) const { return c_[i]; }
    std::span<const double> components() const { return c_; }

    /// Componentwise equality within kGeomEps.
    bool near(const WeightVector& other, double eps = kGeomEps) const;
    double distance(const WeightVector& other) const;
    bool operator==(const WeightVector&) const = default;

private:
    std::vector<double> c_;
};

/// Expected discounted return of one policy, optionally tagged with the
/// weight it was learnt for and the iteration that produced it.
struct ValueVector {
    std::vector<double> components;
    std::optional<WeightVector> provenance;
    int iteration = -1;

    ValueVector() = default;
    ValueVector(std::initializer_list<double> values) : components(values) {}
    explicit ValueVector(std::vector<double> values, std::optional<WeightVector> w = std::nullopt, int it = -1)
        : components(std::move(values)), provenance(std::move(w)), iteration(it) {}

    std::size_t size() const { return components.size(); }
    double operator[](std::size_t i) const { return components[i]; }
    /// Component equality only; provenance is metadata.
    bool same_point(const ValueVector& other) const { return components == other.components; }
};

/// w . V; throws DimensionError on length mismatch.
double scalarise(const ValueVector& v, const WeightVector& w);

/// Set of value vectors kept in pruned form by the envelope routines.
class PartialCCS {
public:
    PartialCCS() = default;
    explicit PartialCCS(std::vector<ValueVector> vectors) : vectors_(std::move(vectors)) {}

    bool empty() const { return vectors_.empty(); }
    std::size_t size() const { return vectors_.size(); }
    const std::vector<ValueVector>& vectors() const { return vectors_; }
    auto begin() const { return vectors_.begin(); }
    auto end() const { return vectors_.end(); }
    const ValueVector& operator[](std::size_t i) const { return vectors_[i]; }

private:
    std::vector<ValueVector> vectors_;
};

struct ExploredWeight {
    WeightVector weight;
    double value = 0.0;
};

/// Weights already handed to the single-objective solver, with the best
/// scalarised value known at each. Append-only within one run.
class ExploredWeights {
public:
    void add(WeightVector w, double value) { entries_.push_back({std::move(w), value}); }
    bool contains(const WeightVector& w) const;
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const std::vector<ExploredWeight>& entries() const { return entries_; }
    /// Raises the recorded value at an explored weight (never lowers it).
    void raise(std::size_t i, double value);

private:
    std::vector<ExploredWeight> entries_;
};

}  // namespace molsrl::ccs
