#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace molsrl {

/// Tolerance used for weight equality, corner deduplication and
/// "strictly improves" tests throughout the CCS geometry.
inline constexpr double kGeomEps = 1e-9;

/// Raised for malformed configuration, maps or CLI arguments.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Vector length or tensor shape disagreement.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A caller broke an operation's precondition (e.g. stepping a finished episode).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Non-finite loss or parameters during training.
class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Rng = std::mt19937_64;

/// SplitMix64 finaliser; used to derive independent streams from a master seed.
std::uint64_t splitmix64(std::uint64_t x);

/// Counter-based stream split: the stream for (seed, stream) never depends on
/// how many other streams were drawn.
Rng derive_rng(std::uint64_t seed, std::uint64_t stream);

/// Uniform double in [0, 1) with a fixed, library-independent mapping.
double uniform01(Rng& rng);

/// Uniform integer in [0, n).
std::size_t uniform_index(Rng& rng, std::size_t n);

}  // namespace molsrl
