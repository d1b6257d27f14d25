#pragma once

#include <cstdint>

#include "bachelier/normal.hpp"

namespace bachelier::sim {

namespace detail {

// SplitMix64 finalizer (Stafford mix 13).
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace detail

/// Counter-based uniform stream keyed by (seed, path index).
///
/// The k-th output is mix64 applied to key + k * gamma (a SplitMix64
/// sequence), so a path's variates depend only on (seed, path, k) and never
/// on which thread generated them. Normals come from the inverse CDF.
class PathRng {
public:
    PathRng(std::uint64_t seed, std::uint64_t path_index)
        : state_(detail::mix64(detail::mix64(seed) ^
                               (path_index * 0xA24BAED4963EE407ULL + 0x9FB21C651E98DF25ULL))) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in the open interval (0,1); never returns an endpoint.
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
    }

    /// Standard normal via inverse CDF of the uniform stream.
    double next_normal() { return norm_ppf(next_uniform()); }

private:
    std::uint64_t state_;
};

} // namespace bachelier::sim
