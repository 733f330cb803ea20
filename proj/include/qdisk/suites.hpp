#pragma once

#include <cstdint>

#include "qdisk/report.hpp"
#include "qdisk/weights.hpp"

namespace qdisk {

struct SuiteParams {
  int trials = 100;
  std::uint64_t seed = 42;
  int k_max = 512;
  int mode_lo = -6;
  int mode_hi = 6;
  double tol = 1e-10;
};

/// Random compact b (support k <= K/2): relative residuals ||DQb - b||_A and
/// ||Dbar Qbar b - b||_A over ||b||_A against tol, plus the norm bound of Q.
/// The worst instance is serialised under observed.worst_instance.
Report parametrix_suite(const WeightPair& w, const SuiteParams& p);

/// Random pairs with declared tails from K/2: the integration-by-parts residual
/// against tol, with the limit-form residual reported alongside. Also runs the
/// finite Abel identity on random sequences.
Report ibp_suite(const WeightPair& w, const SuiteParams& p);

/// Trace-form (a, a)_A against norm_fourier(a)^2 for random compact elements
/// with support k <= K - spread; relative error against tol.
Report norm_consistency_suite(const WeightPair& w, const SuiteParams& p);

}  // namespace qdisk
