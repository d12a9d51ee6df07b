#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "molsrl/ccs/corner_queue.hpp"
#include "molsrl/ccs/types.hpp"
#include "molsrl/solver/solver.hpp"

namespace molsrl::dol {

/// How the next iteration's model is initialised: fresh (DOL), verbatim copy
/// of the nearest stored model (DOL-FR), or that copy with a redrawn final
/// layer (DOL-PR).
enum class ReuseMode { None, Full, Partial };

std::string to_string(ReuseMode mode);
/// Accepts none/full/partial. Throws ConfigError otherwise.
ReuseMode parse_reuse_mode(const std::string& text);

/// Models of accepted vectors, keyed by the weight they were learnt for.
class ModelStore {
public:
    struct Entry {
        ccs::WeightVector weight;
        solver::LearnedModel model;
    };

    /// Replaces an existing entry for a weight within kGeomEps.
    void put(ccs::WeightVector w, solver::LearnedModel model);
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const std::vector<Entry>& entries() const { return entries_; }

private:
    std::vector<Entry> entries_;
};

/// Deep copy of the model whose key is nearest to w in Euclidean distance;
/// ties go to the earliest insertion. Throws ContractViolation on an empty
/// store.
solver::LearnedModel copy_nearest_model(const ccs::WeightVector& w, const ModelStore& models);

/// Fresh model for reuse None or an empty store; otherwise the nearest copy,
/// with its last layer reinitialised under Partial.
solver::LearnedModel prepare_model(const ccs::WeightVector& w, ReuseMode reuse, const ModelStore& models,
                                   const solver::ScalarisedSolver& solver, Rng& rng);

/// Whether V rises above the envelope of S (by more than kGeomEps) at some
/// weight. Checked at the corner weights of S, which suffices for two
/// objectives. Always true for an empty S.
bool improves_upon(const ccs::ValueVector& v, const ccs::PartialCCS& s);

struct DolConfig {
    double tau = 0.0;
    std::size_t max_iterations = 30;
    ReuseMode reuse = ReuseMode::None;
};

struct IterationRecord {
    std::size_t iteration = 0;
    ccs::WeightVector weight;
    double priority = 0.0;
    ccs::ValueVector value;
    bool accepted = false;
    std::vector<ccs::CornerWeightQueue::Entry> queue;  // after the iteration
    ccs::PartialCCS ccs;                                // after the iteration
    std::size_t episodes = 0;
    double seconds = 0.0;
    std::vector<solver::CurvePoint> curve;
};

struct DolResult {
    ccs::PartialCCS ccs;
    ModelStore models;
    ccs::ExploredWeights explored;
    std::vector<IterationRecord> log;
    std::size_t solver_calls = 0;
    bool queue_exhausted = false;
};

using IterationCallback = std::function<void(const IterationRecord&)>;

/// Outer optimistic-linear-support loop over corner weights. The queue starts
/// with the simplex extrema at infinite priority; each iteration pops the
/// highest-priority weight, prepares a model per the reuse mode, calls the
/// solver, and on improvement drops obsolete corners and dominated vectors,
/// stores the model and enqueues new corners whose optimistic improvement
/// exceeds tau. Stops when the queue empties or max_iterations is reached.
/// Solver exceptions are rethrown with the iteration number attached.
DolResult run_dol(solver::ScalarisedSolver& solver, const DolConfig& config, Rng& rng,
                  const IterationCallback& on_iteration = {});

}  // namespace molsrl::dol
