#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "qdisk/random.hpp"

using namespace qdisk;

TEST_CASE("entry and to_matrix agree") {
  Rng rng(1);
  const auto a = random_compact_element(rng, 20, -3, 3, 15);
  const auto M = to_matrix(a, 21);
  CHECK((M - oracle::dense(a, 21)).norm() == 0.0);
  // Mode m sits on row - col = m with coefficient index min(row, col).
  CHECK(a.entry(7, 4) == a.coeff(3, 4));
  CHECK(a.entry(4, 7) == a.coeff(-3, 4));
}

TEST_CASE("multiply and adjoint match dense products") {
  Rng rng(2);
  const int K = 40, dim = 30;
  const auto a = random_compact_element(rng, K, -2, 3, K);
  const auto b = random_compact_element(rng, K, -3, 1, K);
  const auto ab = multiply(a, b);
  const Eigen::MatrixXcd ref = oracle::dense(a, K + 1) * oracle::dense(b, K + 1);
  double err = 0.0;
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) err = std::max(err, std::abs(ab.entry(r, c) - ref(r, c)));
  CHECK(err < 1e-13);

  const auto as = adjoint(a);
  CHECK((oracle::dense(as, dim) - oracle::dense(a, dim).adjoint()).norm() < 1e-15);
}

TEST_CASE("power_UB is the matrix power of U B") {
  const auto w = WeightPair::quantum_disk(0.5, 2.0);
  const int dim = 25;
  const auto S = oracle::shift_UB(w, dim);
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(dim, dim);
  for (int n = 0; n <= 4; ++n) {
    CHECK((oracle::dense(power_UB(w, n, 40), dim) - P).norm() < 1e-14);
    P = S * P;
  }
  CHECK_THROWS(power_UB(w, -1, 10));
}

TEST_CASE("restriction inverts extension") {
  Rng rng(3);
  const auto f = random_boundary(rng, 4);
  const auto r = restrict_to_boundary(extend_from_boundary(f, 200), 16);
  CHECK(r.boundary.max_abs_diff(f) < 1e-15);
  CHECK(r.variation == 0.0);
}

TEST_CASE("json round trip keeps coefficients and tails") {
  Rng rng(4);
  const auto a = random_tail_element(rng, 30, -2, 2, 10);
  const auto b = ToeplitzElement::from_json(a.to_json());
  CHECK(b.mode_min() == a.mode_min());
  CHECK(b.all_tails_declared());
  CHECK((oracle::dense(a, 31) - oracle::dense(b, 31)).norm() == 0.0);
}
