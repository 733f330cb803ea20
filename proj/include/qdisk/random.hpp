#pragma once

#include <cstdint>
#include <random>

#include "qdisk/element.hpp"

namespace qdisk {

using Rng = std::mt19937_64;

/// Independent standard complex normal samples (real and imaginary N(0, 1/2)).
cplx random_complex(Rng& rng);

/// Random coefficients on modes [mode_lo, mode_hi] for k <= support; every
/// mode has a declared zero tail from support + 1, so the element is exact.
ToeplitzElement random_compact_element(Rng& rng, int k_max, int mode_lo, int mode_hi, int support);

/// Random coefficients for k < tail_start, then a random constant tail per
/// mode (declared), so boundary values are exact.
ToeplitzElement random_tail_element(Rng& rng, int k_max, int mode_lo, int mode_hi, int tail_start);

/// Random trigonometric polynomial with modes in [-degree, degree].
BoundaryFunction random_boundary(Rng& rng, int degree);

}  // namespace qdisk
