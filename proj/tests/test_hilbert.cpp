#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qdisk/hilbert.hpp"
#include "qdisk/random.hpp"

using namespace qdisk;

TEST_CASE("inner product equals the weighted trace") {
  Rng rng(11);
  const auto w = WeightPair::quantum_disk(0.7, 2.0);
  for (int t = 0; t < 5; ++t) {
    const auto a = random_compact_element(rng, 60, -4, 4, 60);
    const auto b = random_compact_element(rng, 60, -4, 4, 60);
    const auto want = oracle::trace_inner(a, b, w, 61);
    CHECK(std::abs(inner_product(a, b, w) - want) < 1e-13 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("norm of U in closed form") {
  // U has coefficient 1 on mode 1; with mu = 1, scale = 2 the sum telescopes.
  const auto w = WeightPair::quantum_disk(1.0, 2.0);
  for (int K : {10, 100, 1000}) {
    const auto u = ToeplitzElement::constant_mode(K, 1, 1.0);
    CHECK(norm_fourier(u, w) == doctest::Approx(std::sqrt(0.25 - 0.5 / (K + 3))).epsilon(1e-14));
  }
}

TEST_CASE("trace and Fourier norms agree on compact elements") {
  Rng rng(12);
  const auto w = WeightPair::quantum_disk(0.3, 2.0);
  const auto a = random_compact_element(rng, 128, -6, 6, 120);
  const double nf = norm_fourier(a, w);
  CHECK(std::real(inner_product(a, a, w)) == doctest::Approx(nf * nf).epsilon(1e-13));
}

TEST_CASE("Abel summation with the corrected sign") {
  Rng rng(13);
  std::vector<cplx> x(20), y(20);
  for (auto& v : x) v = random_complex(rng);
  for (auto& v : y) v = random_complex(rng);
  const auto r = abel_identity_check(x, y, 18);
  CHECK(r.pass);
  CHECK(r.observed["printed_sign_scaled_residual"].get<double>() > 1e-3);
  CHECK_THROWS_AS(abel_identity_check(x, y, 19), std::invalid_argument);
}

TEST_CASE("Abel trace form with declared tails") {
  Rng rng(14);
  const auto f = random_tail_element(rng, 64, 0, 0, 20);
  const auto g = random_tail_element(rng, 64, 0, 0, 30);
  CHECK(abel_trace_check(f, g).pass);
}

TEST_CASE("integration by parts on random tail pairs") {
  Rng rng(15);
  const auto w = WeightPair::quantum_disk(1.0, 2.0);
  for (int t = 0; t < 5; ++t) {
    const auto a = random_tail_element(rng, 256, -4, 4, 128);
    const auto b = random_tail_element(rng, 256, -4, 4, 128);
    const auto r = integration_by_parts(a, b, w);
    CHECK(r.residual < 1e-10);
    CHECK(std::abs(r.lhs - r.rhs - r.truncation_boundary) < 1e-10 * r.scale);
  }
}

TEST_CASE("limit boundary term on the basic pairs") {
  // D(1) = 0 and (1, Dbar U) = sum_k (B(k) - B(k-1)) = B(K) -> 1.
  const auto w = WeightPair::quantum_disk(1.0, 2.0);
  double prev = 1.0;
  for (int K : {128, 512, 2048}) {
    const auto one = ToeplitzElement::identity(K);
    const auto u = ToeplitzElement::constant_mode(K, 1, 1.0);
    const auto r = integration_by_parts(one, u, w);
    CHECK(std::abs(r.lhs) < 1e-14);
    CHECK(std::abs(r.rhs - w.B(K)) < 1e-12);
    CHECK(std::abs(r.limit_boundary - 1.0) < 1e-14);
    CHECK(r.limit_residual == doctest::Approx(1.0 - w.B(K)).epsilon(1e-9));
    CHECK(r.limit_residual < prev);
    prev = r.limit_residual;
    // The opposite pair has no boundary contribution.
    CHECK(std::abs(integration_by_parts(u, one, w).limit_boundary) < 1e-14);
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("integration by parts needs declared tails") {
  Rng rng(16);
  const auto w = WeightPair::quantum_disk(1.0, 2.0);
  auto a = random_tail_element(rng, 32, -1, 1, 10);
  a.clear_tail(0);
  CHECK_THROWS(integration_by_parts(a, a, w));
}
