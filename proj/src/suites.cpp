#include "qdisk/suites.hpp"

#include <algorithm>
#include <cmath>

#include "qdisk/hilbert.hpp"
#include "qdisk/ncops.hpp"
#include "qdisk/parametrix.hpp"
#include "qdisk/random.hpp"

namespace qdisk {

namespace {

nlohmann::json suite_params(const WeightPair& w, const SuiteParams& p) {
  return {{"weights", w.to_json()}, {"trials", p.trials},   {"seed", p.seed},
          {"K_max", p.k_max},       {"modes", {p.mode_lo, p.mode_hi}}, {"tol", p.tol}};
}

}  // namespace

Report parametrix_suite(const WeightPair& w, const SuiteParams& p) {
  Report r;
  r.check = "parametrix_suite";
  r.anchor = "Qprop";
  r.params = suite_params(w, p);
  Rng rng(p.seed);
  double worst_q = 0.0, worst_qbar = 0.0, worst_ratio = 0.0, constant = 0.0;
  int violations = 0, worst_trial = -1;
  double worst_score = -1.0;
  nlohmann::json worst_b;
  for (int t = 0; t < p.trials; ++t) {
    const auto b = random_compact_element(rng, p.k_max, p.mode_lo, p.mode_hi, p.k_max / 2);
    const double nb = norm_fourier(b, w);
    const double rq = norm_fourier(apply_D(apply_Q(b, w), w) - b, w) / nb;
    const double rqb = norm_fourier(apply_Dbar(apply_Qbar(b, w), w) - b, w) / nb;
    const Report bound = norm_bound_check(b, w);
    if (!bound.pass) ++violations;
    worst_q = std::max(worst_q, rq);
    worst_qbar = std::max(worst_qbar, rqb);
    worst_ratio = std::max(worst_ratio, bound.observed["ratio"].get<double>());
    constant = bound.expected["constant"].get<double>();
    const double score = std::max(rq, rqb) + (bound.pass ? 0.0 : 1.0);
    if (score > worst_score) {
      worst_score = score;
      worst_trial = t;
      worst_b = b.to_json();
    }
  }
  r.observed = {{"max_rel_residual_DQ", worst_q},
                {"max_rel_residual_DbarQbar", worst_qbar},
                {"bound_violations", violations},
                {"max_norm_ratio", worst_ratio},
                {"bound_constant", constant},
                {"worst_instance", {{"trial", worst_trial}, {"b", worst_b}}}};
  r.expected = {{"rel_residual_below", p.tol}, {"bound_violations", 0}};
  r.pass = worst_q < p.tol && worst_qbar < p.tol && violations == 0;
  return r;
}

Report ibp_suite(const WeightPair& w, const SuiteParams& p) {
  Report r;
  r.check = "integration_by_parts_suite";
  r.anchor = "integration_by_parts_proposition";
  r.params = suite_params(w, p);
  Rng rng(p.seed);
  double worst = 0.0, worst_limit = 0.0, worst_abel = 0.0;
  int worst_trial = -1;
  nlohmann::json worst_pair;
  for (int t = 0; t < p.trials; ++t) {
    const auto a = random_tail_element(rng, p.k_max, p.mode_lo, p.mode_hi, p.k_max / 2);
    const auto b = random_tail_element(rng, p.k_max, p.mode_lo, p.mode_hi, p.k_max / 2);
    const auto res = integration_by_parts(a, b, w);
    worst_limit = std::max(worst_limit, res.limit_residual);
    if (res.residual >= worst) {
      worst = res.residual;
      worst_trial = t;
      worst_pair = {{"a", a.to_json()}, {"b", b.to_json()}};
    }
    std::vector<cplx> x(34), y(34);
    for (auto& v : x) v = random_complex(rng);
    for (auto& v : y) v = random_complex(rng);
    const Report abel = abel_identity_check(x, y, 32);
    worst_abel = std::max(worst_abel, abel.observed["scaled_residual"].get<double>());
  }
  r.observed = {{"max_residual", worst},
                {"max_limit_form_residual", worst_limit},
                {"max_abel_scaled_residual", worst_abel},
                {"worst_instance", {{"trial", worst_trial}, {"pair", worst_pair}}}};
  r.expected = {{"residual_below", p.tol}, {"abel_scaled_residual_max", 1e-13}};
  r.pass = worst < p.tol && worst_abel <= 1e-13;
  return r;
}

Report norm_consistency_suite(const WeightPair& w, const SuiteParams& p) {
  Report r;
  r.check = "norm_consistency_suite";
  r.anchor = "norm_A_formulas";
  r.params = suite_params(w, p);
  Rng rng(p.seed);
  const int spread = std::max(std::abs(p.mode_lo), std::abs(p.mode_hi));
  double worst = 0.0;
  for (int t = 0; t < p.trials; ++t) {
    const auto a = random_compact_element(rng, p.k_max, p.mode_lo, p.mode_hi, p.k_max - spread);
    const double tr = std::real(inner_product(a, a, w));
    const double nf = norm_fourier(a, w);
    worst = std::max(worst, std::abs(tr - nf * nf) / (nf * nf));
  }
  r.observed = {{"max_rel_error", worst}};
  r.expected = {{"rel_error_below", p.tol}};
  r.pass = worst < p.tol;
  return r;
}

}  // namespace qdisk
