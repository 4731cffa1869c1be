#pragma once

#include <cstdint>
#include <random>

namespace lifeloop {

/// Engine used everywhere a run needs randomness. mt19937_64 output is fully
/// specified by the standard, so seeded sequences are identical across platforms.
using Rng = std::mt19937_64;

/// Derives an independent engine for a named purpose from a run seed, so that
/// e.g. acceptance draws never shift the schedule generator's sequence.
Rng make_rng(std::uint64_t seed, std::uint64_t stream);

/// Uniform double in [0, 1) built from the top 53 bits. The standard
/// distributions are implementation-defined, which would break replay.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

/// Uniform integer in [lo, hi].
inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(uniform01(rng) * static_cast<double>(span));
}

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

}  // namespace lifeloop
