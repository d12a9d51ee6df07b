#pragma once

#include <filesystem>
#include <iosfwd>

#include "molsrl/nn/qnetwork.hpp"

namespace molsrl::nn {

// Layout: 8-byte magic "MOLSQNET", little-endian uint64 header length, a JSON
// header (architecture, shapes, seed, parameter count), then every parameter
// as a little-endian IEEE-754 double in flat_parameters() order.

void save_network(std::ostream& out, const QNetwork& net);
/// Throws ConfigError for a bad magic, header or truncated payload.
QNetwork load_network(std::istream& in);

void save_network(const std::filesystem::path& path, const QNetwork& net);
QNetwork load_network(const std::filesystem::path& path);

}  // namespace molsrl::nn
