#pragma once

#include <iosfwd>
#include <string>

#include "molsrl/ccs/types.hpp"

namespace molsrl::ccs {

/// Writes one row per vector: v1..vn, w1..wn (provenance, empty when
/// unknown), iteration, source.
void write_ccs_csv(std::ostream& out, const PartialCCS& s, const std::string& source);
/// Reads the format written by write_ccs_csv. Throws ConfigError on
/// malformed input.
PartialCCS read_ccs_csv(std::istream& in);

/// Shortest round-trip decimal form of a double.
std::string format_double(double x);

}  // namespace molsrl::ccs
