#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qdisk/hilbert.hpp"
#include "qdisk/ncops.hpp"
#include "qdisk/parametrix.hpp"
#include "qdisk/random.hpp"

using namespace qdisk;

TEST_CASE("B products against direct multiplication") {
  const auto w = WeightPair::quantum_disk(0.3, 2.0);
  const BProducts P(w, 600);
  for (int n : {0, 1, 5, 12})
    for (long k : {0L, 7L, 300L}) {
      double p = 1.0;
      for (int j = 0; j < n; ++j) p *= w.B(k + j);
      CHECK(P(n, k) == doctest::Approx(p).epsilon(1e-14));
    }
}

TEST_CASE("Q is a right inverse of D, checked on the dense commutator") {
  Rng rng(21);
  const auto w = WeightPair::quantum_disk(1.0, 2.0);
  const int K = 96;
  for (int t = 0; t < 4; ++t) {
    const auto b = random_compact_element(rng, K, -4, 4, K / 2);
    const auto c = apply_Q(b, w);
    const auto Dc = oracle::commutator_D(c, w, K + 1);
    double err = 0.0, mag = 1.0;
    for (int r = 0; r < K - 8; ++r)
      for (int col = 0; col < K - 8; ++col) {
        err = std::max(err, std::abs(Dc(r, col) - b.entry(r, col)));
        mag = std::max(mag, std::abs(Dc(r, col)));
      }
    CHECK(err / mag < 1e-12);
    // Normalisation: the g-side of Qb has vanishing boundary values.
    for (int m = std::max(0, c.mode_min()); m <= c.mode_max(); ++m) CHECK(std::abs(c.coeff(m, K)) < 1e-14);
  }
}

TEST_CASE("Qbar is a right inverse of Dbar") {
  Rng rng(22);
  const auto w = WeightPair::quantum_disk(0.7, 2.0);
  const int K = 96;
  const auto b = random_compact_element(rng, K, -4, 4, K / 2);
  const auto c = apply_Qbar(b, w);
  const auto Dc = oracle::commutator_Dbar(c, w, K + 1);
  double err = 0.0;
  for (int r = 0; r < K - 8; ++r)
    for (int col = 0; col < K - 8; ++col) err = std::max(err, std::abs(Dc(r, col) - b.entry(r, col)));
  CHECK(err < 1e-12 * std::max(1.0, b.max_abs()));

  const auto via = apply_Qbar_via_Q(b, w);
  double diff = 0.0;
  for (int r = 0; r < K; ++r)
    for (int col = 0; col < K; ++col) diff = std::max(diff, std::abs(via.entry(r, col) - c.entry(r, col)));
  CHECK(diff < 1e-13 * std::max(1.0, c.max_abs()));
}

TEST_CASE("norm bound and tail bound on compact data") {
  Rng rng(23);
  const auto w = WeightPair::quantum_disk(1.0, 2.0);
  const auto b = random_compact_element(rng, 256, -6, 6, 128);
  const auto r = norm_bound_check(b, w);
  CHECK(r.pass);
  CHECK(r.observed["ratio"].get<double>() <= r.expected["constant"].get<double>());
  CHECK(parametrix_tail_bound(b, w) == 0.0);
}

TEST_CASE("boundary decomposition recovers kernel coefficients") {
  Rng rng(24);
  const auto w = WeightPair::quantum_disk(1.0, 2.0);
  const int K = 256;
  const auto b = random_compact_element(rng, K, 0, 3, K / 2);
  const std::vector<cplx> coeffs{{0.5, -1.0}, {0.0, 0.0}, {2.0, 0.25}};
  auto a = apply_Q(b, w);
  for (int n = 0; n < 3; ++n) a += coeffs[static_cast<std::size_t>(n)] * power_UB(w, n, K);
  const auto d = boundary_value_decomposition(a, w);
  for (int n = 0; n < 3; ++n) CHECK(std::abs(d.kernel_coeffs[static_cast<std::size_t>(n)] - coeffs[static_cast<std::size_t>(n)]) < 1e-10);
  // The boundary value on mode n is the kernel coefficient itself.
  CHECK(std::abs(d.boundary[2] - coeffs[2]) < 1e-10);
  CHECK(d.variation < 1e-10);
}
