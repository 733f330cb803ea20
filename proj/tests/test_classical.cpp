#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qdisk/classical.hpp"

using namespace qdisk;

namespace {

double max_abs(const RadialModeFunction& f, int from = 0) {
  double m = 0.0;
  for (int i = from; i < f.size(); ++i) m = std::max(m, std::abs(f.samples[static_cast<std::size_t>(i)]));
  return m;
}

}  // namespace

TEST_CASE("rho^n spans the kernel of D on mode n") {
  const ClassicalWeight F;
  for (int n = 0; n <= 4; ++n) {
    const auto f = RadialModeFunction::sample(n, 2049, [n](double r) { return cplx(std::pow(r, n)); });
    const auto g = apply_D_classical(f, F);
    CHECK(g.n == n + 1);
    CHECK(max_abs(g) < 1e-4);
  }
  // Dbar annihilates rho^|n| on mode -|n|.
  const auto f = RadialModeFunction::sample(-2, 2049, [](double r) { return cplx(r * r); });
  CHECK(max_abs(apply_Dbar_classical(f, F)) < 1e-4);
}

TEST_CASE("D(rho^2) on mode 0 is 2 rho for F = 2") {
  const ClassicalWeight F;
  const auto f = RadialModeFunction::sample(0, 513, [](double r) { return cplx(r * r); });
  const auto g = apply_D_classical(f, F);
  double err = 0.0;
  for (int i = 0; i < g.size(); ++i) err = std::max(err, std::abs(g.samples[static_cast<std::size_t>(i)] - 2.0 * g.rho(i)));
  CHECK(err < 1e-12);
}

TEST_CASE("inner product of 1 with itself") {
  const ClassicalWeight F;
  RadialFunction one;
  one.emplace(0, RadialModeFunction::sample(0, 257, [](double) { return cplx(1.0); }));
  CHECK(std::real(inner_product_classical(one, one, F)) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("classical integration by parts converges at second order") {
  const ClassicalWeight F([](double r) { return 1.0 + r * r; });
  auto make = [](int M, double phase) {
    RadialFunction f;
    for (int n = -3; n <= 3; ++n) {
      const double c = 1.0 + 0.1 * n + phase;
      f.emplace(n, RadialModeFunction::sample(n, M, [n, c](double r) {
                  return cplx(std::pow(r, std::abs(n)) * (c + 0.5 * r * r), 0.3 * n * r * r);
                }));
    }
    return f;
  };
  std::vector<double> res;
  for (int M : {257, 513, 1025, 2049}) res.push_back(integration_by_parts_classical(make(M, 0.0), make(M, 0.7), F).residual);
  for (std::size_t i = 1; i < res.size(); ++i) {
    const double rate = res[i - 1] / res[i];
    CHECK(rate > 3.5);
    CHECK(rate < 4.5);
  }
}

TEST_CASE("classical index matches N + 1") {
  ClassicalSystems sys(512);
  for (int N = -4; N <= 4; ++N) CHECK(sys.index({N}).counts.index == N + 1);
  CHECK(index_classical({-1}, ClassicalWeight{}, 256).counts.index == 0);
}

TEST_CASE("radial samples are validated") {
  CHECK_THROWS_AS(RadialModeFunction(0, std::vector<cplx>(10)), std::invalid_argument);
  std::vector<cplx> bad(64, 1.0);
  bad[5] = std::nan("");
  CHECK_THROWS_AS(RadialModeFunction(0, bad), std::invalid_argument);
}
