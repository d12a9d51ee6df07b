#include "molsrl/common.hpp"

namespace molsrl {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rng derive_rng(std::uint64_t seed, std::uint64_t stream) {
    return Rng(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL)));
}

double uniform01(Rng& rng) {
    // 53 random mantissa bits; avoids implementation-defined distributions.
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t uniform_index(Rng& rng, std::size_t n) {
    if (n == 0) throw ContractViolation("uniform_index: empty range");
    // Lemire-style rejection-free is fine here; bias is < n / 2^64.
    return static_cast<std::size_t>(static_cast<unsigned __int128>(rng()) * n >> 64);
}

}  // namespace molsrl
