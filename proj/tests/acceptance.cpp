// Acceptance run: one PASS/FAIL line per criterion. Criterion 6 as literally
// stated compares against i e^{i phi} d/dphi, which the operator does not
// produce (it yields the negative); that line is an expected failure and the
// sign-corrected check is reported as 6b. Exit status is zero iff every other
// line passes and line 6 fails as expected.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qdisk/aps.hpp"
#include "qdisk/classical.hpp"
#include "qdisk/hilbert.hpp"
#include "qdisk/ncops.hpp"
#include "qdisk/parametrix.hpp"
#include "qdisk/random.hpp"
#include "qdisk/suites.hpp"

using namespace qdisk;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<double> kMus{0.3, 0.7, 1.0};

// Filled by criterion 1, compared row-for-row by criterion 2.
std::vector<int> nc_indices;

Outcome index_nc() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  double min_gap = INFINITY;
  int rows = 0;
  nc_indices.clear();
  for (double mu : kMus) {
    ModeSystems sys(WeightPair::quantum_disk(mu, 2.0), 512);
    for (int N = -6; N <= 6; ++N) {
      const auto r = sys.index({N});
      ok = ok && r.counts.index == N + 1 && index_analytic({N}).index == N + 1 && r.min_gap >= 1e2;
      min_gap = std::min(min_gap, r.min_gap);
      nc_indices.push_back(r.counts.index);
      ++rows;
    }
  }
  const double dt = seconds_since(t0);
  return {ok && dt < 30.0, fmt("%d rows index = N+1, min gap %.3g, %.1f s", rows, min_gap, dt)};
}

Outcome index_classical_sweep() {
  ClassicalSystems sys(2048);
  bool ok = true, rows_match = nc_indices.size() == 3 * 13;
  double min_gap = INFINITY;
  for (int N = -6; N <= 6; ++N) {
    const auto r = sys.index({N});
    ok = ok && r.counts.index == N + 1;
    min_gap = std::min(min_gap, r.min_gap);
    for (std::size_t j = 0; rows_match && j < kMus.size(); ++j)
      rows_match = nc_indices[j * 13 + static_cast<std::size_t>(N + 6)] == r.counts.index;
  }
  return {ok && rows_match, fmt("M = 2048, index = N+1 %s, NC rows match %s, min gap %.3g", ok ? "yes" : "no",
                                rows_match ? "yes" : "no", min_gap)};
}

Report parametrix_report;

Outcome parametrix_identity() {
  SuiteParams p;
  parametrix_report = parametrix_suite(WeightPair::quantum_disk(1.0, 2.0), p);
  const double q = parametrix_report.observed["max_rel_residual_DQ"];
  const double qb = parametrix_report.observed["max_rel_residual_DbarQbar"];
  return {q < 1e-10 && qb < 1e-10, fmt("max ||DQb-b||/||b|| %.2e, max ||DbarQbar b-b||/||b|| %.2e", q, qb)};
}

Outcome boundedness() {
  const int v = parametrix_report.observed["bound_violations"];
  const double ratio = parametrix_report.observed["max_norm_ratio"];
  const double c = parametrix_report.observed["bound_constant"];
  return {v == 0, fmt("%d violations in 100 trials, max ratio %.3f vs constant %.3f", v, ratio, c)};
}

Outcome kernel_exactness() {
  const auto w = WeightPair::quantum_disk(1.0, 2.0);
  double worst = 0.0;
  for (Which op : {Which::D, Which::Dbar}) {
    for (const auto& e : kernel_basis(w, op, 8, 512)) {
      const auto out = apply(op, e, w);
      const auto scale = cancellation_scale(op, e, w);
      for (int m = out.mode_min(); m <= out.mode_max(); ++m)
        for (long k = 0; k <= out.valid_k(); ++k) {
          const double s = std::abs(scale.coeff(m, k));
          if (s > 0.0) worst = std::max(worst, std::abs(out.coeff(m, k)) / s);
        }
    }
  }
  return {worst <= 1e-13, fmt("max relative interior entry %.2e for n <= 8", worst)};
}

std::vector<BoundaryFunction> trig_polynomials() {
  std::vector<BoundaryFunction> fs;
  BoundaryFunction f;
  f.modes = {{-2, {0.5, 0.25}}, {0, {1.0, 0.0}}, {1, {0.0, -1.0}}, {2, {1.0, 0.0}}};
  fs.push_back(f);
  Rng rng(6);
  for (int t = 0; t < 4; ++t) fs.push_back(random_boundary(rng, 4));
  return fs;
}

Outcome boundary_recovery(int sign) {
  const auto w = WeightPair::quantum_disk(1.0, 2.0);
  const char* key = sign > 0 ? "error_vs_i_exp_dphi" : "error_vs_minus_i_exp_dphi";
  double worst_fine = 0.0, worst_ratio = INFINITY;
  for (const auto& f : trig_polynomials()) {
    for (Which op : {Which::D, Which::Dbar}) {
      const double coarse = boundary_operator_check(f, w, 1000, op, sign).observed[key];
      const double fine = boundary_operator_check(f, w, 10000, op, sign).observed[key];
      worst_fine = std::max(worst_fine, fine);
      worst_ratio = std::min(worst_ratio, coarse / fine);
    }
  }
  return {worst_fine < 0.05 && worst_ratio >= 5.0,
          fmt("max error at K = 1e4 %.3g, min decrease 1e3 -> 1e4 %.2fx", worst_fine, worst_ratio)};
}

Outcome integration_by_parts_both() {
  SuiteParams p;
  p.trials = 50;
  p.tol = 1e-6;
  const auto nc = ibp_suite(WeightPair::quantum_disk(1.0, 2.0), p);
  const double nc_res = nc.observed["max_residual"];

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
  double lo = INFINITY, hi = 0.0;
  for (std::size_t i = 1; i < res.size(); ++i) {
    lo = std::min(lo, res[i - 1] / res[i]);
    hi = std::max(hi, res[i - 1] / res[i]);
  }
  const bool ok = nc.pass && lo >= 3.5 && hi <= 4.5;
  return {ok, fmt("NC max residual %.2e (limit form %.2e), classical halving rate %.2f..%.2f", nc_res,
                  nc.observed["max_limit_form_residual"].get<double>(), lo, hi)};
}

Outcome structure() {
  bool ok = true;
  for (double mu : kMus) ok = ok && quantum_disk_structure_check(mu, 256).pass;
  return {ok, "commutator eigenvalues, defining relation and derivative relations at K = 256"};
}

Outcome norm_consistency() {
  SuiteParams p;
  p.tol = 1e-12;
  const auto r = norm_consistency_suite(WeightPair::quantum_disk(1.0, 2.0), p);
  return {r.pass, fmt("max relative error %.2e over 100 elements", r.observed["max_rel_error"].get<double>())};
}

Outcome oracle_equivalence() {
  const auto w = WeightPair::quantum_disk(1.0, 2.0);
  Rng rng(10);
  const int K = 128;
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto a = random_compact_element(rng, K, -6, 6, K - 16);
    const auto want = oracle::commutator_D(a, w, K + 1);
    worst = std::max(worst, oracle::max_entry_diff(apply_D(a, w), want, K) / std::max(1.0, want.cwiseAbs().maxCoeff()));
  }
  return {worst <= 1e-12, fmt("max interior difference %.2e (relative) over 100 elements", worst)};
}

}  // namespace

int main() {
  struct Line {
    std::string id;
    std::string title;
    std::function<Outcome()> run;
    bool expect_fail = false;
  };
  const std::vector<Line> lines{
      {"1", "index theorem, NC sweep", index_nc},
      {"2", "index theorem, classical sweep", index_classical_sweep},
      {"3", "parametrix identity", parametrix_identity},
      {"4", "parametrix norm bound", boundedness},
      {"5", "kernel exactness", kernel_exactness},
      {"6", "boundary operator vs i e^{i phi} d/dphi", [] { return boundary_recovery(+1); }, true},
      {"6b", "boundary operator vs -i e^{i phi} d/dphi", [] { return boundary_recovery(-1); }},
      {"7", "integration by parts", integration_by_parts_both},
      {"8", "quantum disk structure", structure},
      {"9", "norm consistency", norm_consistency},
      {"10", "Fourier D vs commutator oracle", oracle_equivalence},
  };
  bool ok = true;
  for (const auto& l : lines) {
    Outcome o;
    try {
      o = l.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const char* tag = o.pass ? (l.expect_fail ? "XPASS" : "PASS") : (l.expect_fail ? "XFAIL" : "FAIL");
    std::printf("criterion %-3s %-5s %s: %s\n", l.id.c_str(), tag, l.title.c_str(), o.detail.c_str());
    std::fflush(stdout);
    ok = ok && (o.pass != l.expect_fail);
  }
  return ok ? 0 : 1;
}
