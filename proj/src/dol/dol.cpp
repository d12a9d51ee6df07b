#include "molsrl/dol/dol.hpp"

#include <chrono>
#include <limits>

#include "molsrl/ccs/envelope.hpp"

namespace molsrl::dol {

std::string to_string(ReuseMode mode) {
    switch (mode) {
        case ReuseMode::None: return "none";
        case ReuseMode::Full: return "full";
        case ReuseMode::Partial: return "partial";
    }
    return "none";
}

ReuseMode parse_reuse_mode(const std::string& text) {
    if (text == "none") return ReuseMode::None;
    if (text == "full") return ReuseMode::Full;
    if (text == "partial") return ReuseMode::Partial;
    throw ConfigError("unknown reuse mode '" + text + "' (expected none, full or partial)");
}

void ModelStore::put(ccs::WeightVector w, solver::LearnedModel model) {
    for (auto& e : entries_) {
        if (e.weight.near(w)) {
            e.model = std::move(model);
            return;
        }
    }
    entries_.push_back({std::move(w), std::move(model)});
}

solver::LearnedModel copy_nearest_model(const ccs::WeightVector& w, const ModelStore& models) {
    if (models.empty()) throw ContractViolation("copy_nearest_model: empty model store");
    const ModelStore::Entry* best = nullptr;
    double best_distance = std::numeric_limits<double>::infinity();
    for (const auto& e : models.entries()) {
        const double d = e.weight.distance(w);
        if (d < best_distance) {
            best = &e;
            best_distance = d;
        }
    }
    return best->model;
}

solver::LearnedModel prepare_model(const ccs::WeightVector& w, ReuseMode reuse, const ModelStore& models,
                                   const solver::ScalarisedSolver& solver, Rng& rng) {
    if (reuse == ReuseMode::None || models.empty()) return solver.fresh_model(rng);
    auto model = copy_nearest_model(w, models);
    if (reuse == ReuseMode::Partial) solver::reinit_last_layer(model, rng);
    return model;
}

bool improves_upon(const ccs::ValueVector& v, const ccs::PartialCCS& s) {
    if (s.empty()) return true;
    for (const auto& w : ccs::corner_weights(s)) {
        if (ccs::scalarise(v, w) > ccs::max_scalarised_value(s, w).value + kGeomEps) return true;
    }
    return false;
}

DolResult run_dol(solver::ScalarisedSolver& solver, const DolConfig& config, Rng& rng,
                  const IterationCallback& on_iteration) {
    if (config.tau < 0.0) throw ConfigError("DOL: tau must be non-negative");
    if (config.max_iterations < 1) throw ConfigError("DOL: max_iterations must be at least 1");
    const std::size_t n = solver.objective_count();
    if (n != 2) throw DimensionError("DOL: corner-weight enumeration supports two objectives only");

    DolResult result;
    ccs::CornerWeightQueue queue;
    for (std::size_t i = 0; i < n; ++i)
        queue.push(ccs::WeightVector::extremum(n, i), std::numeric_limits<double>::infinity());

    std::size_t it = 0;
    while (!queue.empty() && it < config.max_iterations) {
        const auto start = std::chrono::steady_clock::now();
        const auto entry = queue.pop();
        const ccs::WeightVector& w = entry.weight;

        solver::LearnedModel model = prepare_model(w, config.reuse, result.models, solver, rng);
        solver::SolverResult solved;
        try {
            solved = solver.solve(w, std::move(model), rng);
        } catch (const DivergenceError& e) {
            throw DivergenceError("DOL iteration " + std::to_string(it) + ": " + e.what());
        } catch (const std::runtime_error& e) {
            throw std::runtime_error("DOL iteration " + std::to_string(it) + ": " + e.what());
        }
        ++result.solver_calls;
        ccs::ValueVector v = solved.value;
        v.provenance = w;
        v.iteration = static_cast<int>(it);
        if (v.size() != n) throw DimensionError("DOL: solver returned a value of the wrong size");

        result.explored.add(w, ccs::scalarise(v, w));
        const bool accepted = improves_upon(v, result.ccs);
        if (accepted) {
            for (const auto& obsolete : ccs::obsolete_corners(queue, v, result.ccs)) queue.remove(obsolete);
            queue.remove(w);

            std::vector<ccs::ValueVector> merged = result.ccs.vectors();
            merged.push_back(v);
            result.ccs = ccs::prune(merged);
            const auto new_corners = ccs::new_corner_weights(result.ccs, v);
            result.models.put(w, std::move(solved.model));

            // Explored values track the best known scalarised value, so the
            // optimistic bound stays above the envelope.
            for (std::size_t i = 0; i < result.explored.size(); ++i) {
                const auto& e = result.explored.entries()[i];
                result.explored.raise(i, ccs::max_scalarised_value(result.ccs, e.weight).value);
            }
            for (const auto& corner : new_corners) {
                if (result.explored.contains(corner)) continue;
                const double improvement = ccs::estimate_improvement(corner, result.explored, result.ccs);
                if (improvement > config.tau) queue.push(corner, improvement);
            }
        }

        IterationRecord record;
        record.iteration = it;
        record.weight = w;
        record.priority = entry.priority;
        record.value = v;
        record.accepted = accepted;
        record.queue = queue.snapshot();
        record.ccs = result.ccs;
        record.episodes = solved.episodes;
        record.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        record.curve = std::move(solved.curve);
        if (on_iteration) on_iteration(record);
        result.log.push_back(std::move(record));
        ++it;
    }
    result.queue_exhausted = queue.empty();
    return result;
}

}  // namespace molsrl::dol
