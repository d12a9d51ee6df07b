#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "molsrl/dol/dol.hpp"
#include "molsrl/solver/qtable.hpp"

namespace molsrl::dol {

/// Stable file-name stem for a weight: 16 hex digits of a hash over the
/// shortest round-trip decimal forms of its components.
std::string weight_hash(const ccs::WeightVector& w);

/// One row per iteration: iteration, w1..wn, priority, v1..vn, accepted,
/// ccs_size, queue_size, episodes. Wall-clock times are kept out so the file
/// is reproducible byte for byte.
void write_iterations_csv(std::ostream& out, const std::vector<IterationRecord>& log, std::size_t objectives);

// Table layout: 8-byte magic "MOLSQTAB", three little-endian uint64 sizes
// (states, actions, objectives), then the values as little-endian doubles.
void save_table(std::ostream& out, const solver::QTable& table);
/// Throws ConfigError on a bad magic or truncated payload.
solver::QTable load_table(std::istream& in);

/// Writes iterations.csv, ccs.csv, timing.txt and models/<hash>.bin into
/// `dir`, creating it if needed. Networks and tables use their own binary
/// formats; models without parameters are skipped.
void write_run_directory(const std::filesystem::path& dir, const DolResult& result, std::size_t objectives,
                         const std::string& source);

}  // namespace molsrl::dol
