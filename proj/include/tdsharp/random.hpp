#pragma once

#include <cstdint>
#include <random>

#include "tdsharp/field.hpp"

namespace tdsharp {

/// Seeded engine used everywhere randomness is needed. Distributions are
/// implemented here so output does not depend on the standard library.
using Rng = std::mt19937_64;

/// Uniform integer in [0, bound) by rejection sampling.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

/// Uniform element of a finite field; small integers in [-3, 3] for Q-based fields.
Scalar random_scalar(const Field& field, Rng& rng);

}  // namespace tdsharp
