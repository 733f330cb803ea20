#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "qdisk/ncops.hpp"
#include "qdisk/random.hpp"

using namespace qdisk;

namespace {

double interior_error(Which which, const ToeplitzElement& a, const WeightPair& w) {
  const int dim = a.k_max() + 1;
  const auto got = apply(which, a, w);
  const auto want = which == Which::D ? oracle::commutator_D(a, w, dim) : oracle::commutator_Dbar(a, w, dim);
  return oracle::max_entry_diff(got, want, dim - 1) / std::max(1.0, want.cwiseAbs().maxCoeff());
}

}  // namespace

TEST_CASE("D and Dbar match the dense commutator") {
  Rng rng(7);
  for (double mu : {0.3, 1.0}) {
    const auto w = WeightPair::quantum_disk(mu, 2.0);
    for (int t = 0; t < 10; ++t) {
      const auto a = random_compact_element(rng, 64, -5, 5, 48);
      CHECK(interior_error(Which::D, a, w) < 1e-13);
      CHECK(interior_error(Which::Dbar, a, w) < 1e-13);
    }
  }
}

TEST_CASE("Dbar is the A-conjugated adjoint of D") {
  Rng rng(8);
  const auto w = WeightPair::quantum_disk(0.7, 2.0);
  const auto a = random_compact_element(rng, 64, -4, 4, 40);
  const auto via = -1.0 * conjugate_by_A(adjoint(apply_D(adjoint(a), w)), w);
  const auto direct = apply_Dbar(a, w);
  double err = 0.0, mag = 1.0;
  for (int r = 0; r < 50; ++r)
    for (int c = 0; c < 50; ++c) {
      err = std::max(err, std::abs(via.entry(r, c) - direct.entry(r, c)));
      mag = std::max(mag, std::abs(direct.entry(r, c)));
    }
  CHECK(err / mag < 1e-13);
}

TEST_CASE("polar split adds up to the operator") {
  Rng rng(9);
  const auto w = WeightPair::quantum_disk(1.0, 2.0);
  const auto a = random_compact_element(rng, 64, -3, 3, 40);
  for (Which op : {Which::D, Which::Dbar}) {
    const auto p = polar_split(a, w, op);
    const auto sum = p.radial + p.angular;
    const auto full = apply(op, a, w);
    double err = 0.0;
    for (int r = 0; r < 50; ++r)
      for (int c = 0; c < 50; ++c) err = std::max(err, std::abs(sum.entry(r, c) - full.entry(r, c)));
    CHECK(err < 1e-10);
  }
  // Constant coefficients have no radial part.
  const auto c = ToeplitzElement::constant_mode(64, 2, {1.5, -0.5});
  const auto p = polar_split(c, w, Which::D);
  CHECK(p.radial.max_abs() == 0.0);
}

TEST_CASE("kernel elements are annihilated") {
  const auto w = WeightPair::quantum_disk(1.0, 2.0);
  for (Which op : {Which::D, Which::Dbar}) {
    const auto basis = kernel_basis(w, op, 8, 256);
    for (const auto& e : basis) {
      const auto out = apply(op, e, w);
      const auto scale = cancellation_scale(op, e, w);
      double rel = 0.0;
      for (int m = out.mode_min(); m <= out.mode_max(); ++m)
        for (long k = 0; k <= out.valid_k(); ++k) {
          const double s = std::abs(scale.coeff(m, k));
          if (s > 0.0) rel = std::max(rel, std::abs(out.coeff(m, k)) / s);
        }
      CHECK(rel < 1e-13);
    }
  }
}

TEST_CASE("quantum disk relations") {
  for (double mu : {0.1, 0.5, 1.0}) CHECK(quantum_disk_structure_check(mu, 128).pass);
}

TEST_CASE("boundary operator is -i e^{i phi} d/dphi") {
  BoundaryFunction f;
  f.modes = {{-2, {0.5, 0.25}}, {0, {1.0, 0.0}}, {1, {0.0, -1.0}}, {2, {1.0, 0.0}}};
  const auto w = WeightPair::quantum_disk(1.0, 2.0);
  for (Which op : {Which::D, Which::Dbar}) {
    const auto fine = boundary_operator_check(f, w, 10000, op, -1);
    const auto coarse = boundary_operator_check(f, w, 1000, op, -1);
    CHECK(fine.pass);
    CHECK(coarse.observed["error"].get<double>() > 5.0 * fine.observed["error"].get<double>());
    // The symbol with the opposite sign is off by an O(1) amount.
    CHECK_FALSE(boundary_operator_check(f, w, 10000, op, +1).pass);
  }
}
