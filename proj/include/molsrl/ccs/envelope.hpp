#pragma once

#include <limits>
#include <span>
#include <vector>

#include "molsrl/ccs/corner_queue.hpp"
#include "molsrl/ccs/types.hpp"

// Upper-envelope geometry of V*_S(w) = max_{V in S} w . V.
//
// The envelope routines are closed-form for two objectives: with w = (t, 1-t)
// every vector is the line b + t (a - b) over t in [0, 1], and the envelope is
// walked left to right by repeatedly jumping to the steepest line with the
// earliest crossing. Anything with n != 2 raises DimensionError.

namespace molsrl::ccs {

struct ScalarisedMax {
    double value = -std::numeric_limits<double>::infinity();
    ValueVector vector;
};

/// Best scalarised value over S at w. Ties go to the lexicographically
/// largest components. Throws std::invalid_argument when S is empty.
ScalarisedMax max_scalarised_value(std::span<const ValueVector> s, const WeightVector& w);
inline ScalarisedMax max_scalarised_value(const PartialCCS& s, const WeightVector& w) {
    return max_scalarised_value(s.vectors(), w);
}

/// A maximal interval [from, to] of w1 on which one vector is optimal.
struct Facet {
    std::size_t index = 0;  // into the input span
    double from = 0.0;
    double to = 1.0;
};

/// Facets of the upper envelope ordered by w1. Vectors that are optimal only
/// on a zero-length interval (mixtures through a corner, weak domination at
/// an extremum, duplicates) get no facet.
std::vector<Facet> upper_envelope(std::span<const ValueVector> vectors);

/// Keeps exactly the vectors with a facet, ordered by increasing first
/// component. Idempotent and independent of input order up to which of a set
/// of exact duplicates is kept (the earliest).
PartialCCS prune(std::span<const ValueVector> vectors);
inline PartialCCS prune(const PartialCCS& s) { return prune(s.vectors()); }

/// Interior corner weights of a pruned S plus both simplex extrema, ordered
/// by w1 (so (0,1) first and (1,0) last).
std::vector<WeightVector> corner_weights(const PartialCCS& s);

/// Corners bounding v's facet in `s_with_v` (already pruned and containing
/// v). When v's facet reaches no interior corner, i.e. v is optimal
/// everywhere, the two extrema are returned instead. Empty when v has no
/// facet.
std::vector<WeightVector> new_corner_weights(const PartialCCS& s_with_v, const ValueVector& v);

/// Queued weights at which v strictly beats the old envelope (by more than
/// kGeomEps). With an empty S every queued weight is obsolete.
std::vector<WeightVector> obsolete_corners(const CornerWeightQueue& queue, const ValueVector& v,
                                           const PartialCCS& s_old);

/// Optimistic improvement at w: max w . u subject to w_i . u <= value_i for
/// every explored (w_i, value_i), minus V*_S(w). For two objectives the
/// optimum is the lower convex envelope of the explored (w1, value) points,
/// evaluated at w1. Returns +inf when w is not bracketed by explored weights
/// (or S is empty); never negative.
double estimate_improvement(const WeightVector& w, const ExploredWeights& explored, const PartialCCS& s);

}  // namespace molsrl::ccs
