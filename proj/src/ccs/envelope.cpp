#include "molsrl/ccs/envelope.hpp"

#include <algorithm>
#include <cmath>

namespace molsrl::ccs {

namespace {

void require_two(std::span<const ValueVector> vectors, const char* what) {
    for (const auto& v : vectors)
        if (v.size() != 2)
            throw DimensionError(std::string(what) + ": only two objectives are supported");
}

// Line form over t = w1: value(t) = intercept + t * slope.
double intercept(const ValueVector& v) { return v[1]; }
double slope(const ValueVector& v) { return v[0] - v[1]; }

// Two crossings closer than this are the same corner.
constexpr double kCrossingEps = 1e-12;

}  // namespace

ScalarisedMax max_scalarised_value(std::span<const ValueVector> s, const WeightVector& w) {
    if (s.empty()) throw std::invalid_argument("max_scalarised_value: empty set");
    ScalarisedMax best;
    bool first = true;
    for (const auto& v : s) {
        const double value = scalarise(v, w);
        if (first || value > best.value ||
            (value == best.value && std::lexicographical_compare(best.vector.components.begin(),
                                                                 best.vector.components.end(),
                                                                 v.components.begin(), v.components.end()))) {
            best.value = value;
            best.vector = v;
            first = false;
        }
    }
    return best;
}

std::vector<Facet> upper_envelope(std::span<const ValueVector> vectors) {
    require_two(vectors, "upper_envelope");
    std::vector<Facet> facets;
    if (vectors.empty()) return facets;

    // Optimal at t = 0: largest intercept, then steepest.
    std::size_t cur = 0;
    for (std::size_t i = 1; i < vectors.size(); ++i) {
        const double bi = intercept(vectors[i]);
        const double bc = intercept(vectors[cur]);
        if (bi > bc || (bi == bc && slope(vectors[i]) > slope(vectors[cur]))) cur = i;
    }

    double t = 0.0;
    while (true) {
        std::size_t next = vectors.size();
        double next_t = 1.0;
        const double mc = slope(vectors[cur]);
        const double bc = intercept(vectors[cur]);
        for (std::size_t j = 0; j < vectors.size(); ++j) {
            const double mj = slope(vectors[j]);
            if (!(mj > mc)) continue;
            const double tx = std::max(t, (bc - intercept(vectors[j])) / (mj - mc));
            if (next == vectors.size() || tx < next_t - kCrossingEps ||
                (std::abs(tx - next_t) <= kCrossingEps && mj > slope(vectors[next]))) {
                next = j;
                next_t = tx;
            }
        }
        if (next == vectors.size() || next_t >= 1.0 - kCrossingEps) {
            facets.push_back({cur, t, 1.0});
            break;
        }
        // A zero-length interval means cur only touches the envelope at a corner.
        if (next_t > t + kCrossingEps) facets.push_back({cur, t, next_t});
        cur = next;
        t = next_t;
    }
    // Fix up: the facet list must tile [0, 1] contiguously.
    for (std::size_t i = 1; i < facets.size(); ++i) facets[i].from = facets[i - 1].to;
    if (!facets.empty()) facets.front().from = 0.0;
    return facets;
}

PartialCCS prune(std::span<const ValueVector> vectors) {
    const auto facets = upper_envelope(vectors);
    std::vector<ValueVector> kept;
    kept.reserve(facets.size());
    for (const auto& f : facets) kept.push_back(vectors[f.index]);
    return PartialCCS(std::move(kept));
}

std::vector<WeightVector> corner_weights(const PartialCCS& s) {
    require_two(s.vectors(), "corner_weights");
    std::vector<WeightVector> out;
    out.push_back(WeightVector::two(0.0));
    const auto facets = upper_envelope(s.vectors());
    for (std::size_t i = 1; i < facets.size(); ++i) out.push_back(WeightVector::two(facets[i].from));
    out.push_back(WeightVector::two(1.0));
    return out;
}

std::vector<WeightVector> new_corner_weights(const PartialCCS& s_with_v, const ValueVector& v) {
    require_two(s_with_v.vectors(), "new_corner_weights");
    const auto facets = upper_envelope(s_with_v.vectors());
    for (const auto& f : facets) {
        if (!s_with_v[f.index].same_point(v)) continue;
        std::vector<WeightVector> out;
        if (f.from > 0.0) out.push_back(WeightVector::two(f.from));
        if (f.to < 1.0) out.push_back(WeightVector::two(f.to));
        if (out.empty()) {
            out.push_back(WeightVector::two(1.0));
            out.push_back(WeightVector::two(0.0));
        }
        return out;
    }
    return {};
}

std::vector<WeightVector> obsolete_corners(const CornerWeightQueue& queue, const ValueVector& v,
                                           const PartialCCS& s_old) {
    std::vector<WeightVector> out;
    for (const auto& entry : queue.snapshot()) {
        if (s_old.empty() ||
            scalarise(v, entry.weight) > max_scalarised_value(s_old, entry.weight).value + kGeomEps)
            out.push_back(entry.weight);
    }
    return out;
}

double estimate_improvement(const WeightVector& w, const ExploredWeights& explored, const PartialCCS& s) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (w.size() != 2) throw DimensionError("estimate_improvement: only two objectives are supported");
    if (explored.empty() || s.empty()) return inf;

    const double t = w[0];
    double optimistic = inf;
    const auto& e = explored.entries();
    for (std::size_t i = 0; i < e.size(); ++i) {
        const double ti = e[i].weight[0];
        if (std::abs(ti - t) <= kGeomEps) optimistic = std::min(optimistic, e[i].value);
        for (std::size_t j = 0; j < e.size(); ++j) {
            const double tj = e[j].weight[0];
            if (!(ti < t && t < tj)) continue;
            const double lambda = (t - ti) / (tj - ti);
            optimistic = std::min(optimistic, (1.0 - lambda) * e[i].value + lambda * e[j].value);
        }
    }
    if (optimistic == inf) return inf;
    return std::max(0.0, optimistic - max_scalarised_value(s, w).value);
}

}  // namespace molsrl::ccs
