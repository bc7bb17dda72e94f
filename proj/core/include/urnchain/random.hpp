#pragma once

#include <cstdint>
#include <random>

namespace urnchain {

/// All stochastic operations take an explicit seeded engine; identical seeds
/// produce identical draw sequences. std::mt19937_64 is fully specified by
/// the standard, so seeded runs are reproducible across platforms.
using Rng = std::mt19937_64;

/// Uniform double in [0,1) from the top 53 bits of the engine. The std
/// distributions are implementation-defined, which would break byte-stable
/// golden files; this mapping is pinned.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Standard normal via the Marsaglia polar method.
double sample_normal(Rng& rng);

/// Gamma(shape, 1) via Marsaglia-Tsang squeeze, boosted for shape < 1.
double sample_gamma(double shape, Rng& rng);

/// Beta(a, b) as a ratio of two gamma variates.
double sample_beta(double a, double b, Rng& rng);

/// splitmix64 mix of a base seed with a stream index. Used to derive
/// independent per-block engines whose assignment is part of the seed
/// contract, so serial and parallel runs agree exactly.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace urnchain
