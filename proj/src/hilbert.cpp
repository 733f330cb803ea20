#include "qdisk/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qdisk/ncops.hpp"

namespace qdisk {

namespace {

void require_same_k(const ToeplitzElement& a, const ToeplitzElement& b, const char* what) {
  if (a.k_max() != b.k_max()) throw std::invalid_argument(std::string(what) + ": k_max mismatch");
}

// Sum over shared modes of conj(a) b / A(row) along the diagonal, for indices
// k with row(k) <= rows and, if `block`, col(k) <= rows.
cplx diagonal_trace(const ToeplitzElement& a, const ToeplitzElement& b, const WeightPair& w, long rows,
                    bool block) {
  const int lo = std::max(a.mode_min(), b.mode_min());
  const int hi = std::min(a.mode_max(), b.mode_max());
  cplx total{};
  for (int m = lo; m <= hi; ++m) {
    const long n = std::abs(m);
    // Mode m >= 0 sits at (k+m, k); mode m < 0 at (k, k+n).
    const long k_end = m >= 0 ? rows - n : (block ? rows - n : rows);
    cplx s{};
    for (long k = 0; k <= k_end; ++k) {
      const long row = m >= 0 ? k + m : k;
      s += std::conj(a.coeff(m, k)) * b.coeff(m, k) * w.inv_A(row);
    }
    total += s;
  }
  return total;
}

}  // namespace

cplx inner_product(const ToeplitzElement& a, const ToeplitzElement& b, const WeightPair& w) {
  require_same_k(a, b, "inner_product");
  return diagonal_trace(a, b, w, a.k_max(), true);
}

cplx inner_product_rows(const ToeplitzElement& a, const ToeplitzElement& b, const WeightPair& w, int rows) {
  return diagonal_trace(a, b, w, rows, false);
}

cplx inner_product_fourier(const ToeplitzElement& a, const ToeplitzElement& b, const WeightPair& w) {
  const long top = std::min({a.valid_k(), b.valid_k(), a.k_max(), b.k_max()});
  cplx s{};
  for (int m = std::max(a.mode_min(), b.mode_min()); m <= std::min(a.mode_max(), b.mode_max()); ++m) {
    const long shift = m >= 0 ? m : 0;
    for (long k = 0; k <= top; ++k) s += std::conj(a.coeff(m, k)) * b.coeff(m, k) * w.inv_A(k + shift);
  }
  return s;
}

double norm_fourier(const ToeplitzElement& a, const WeightPair& w) {
  double s = 0.0;
  const long top = std::min(a.valid_k(), a.k_max());
  for (int m = a.mode_min(); m <= a.mode_max(); ++m) {
    const long shift = m >= 0 ? m : 0;
    for (long k = 0; k <= top; ++k) s += std::norm(a.coeff(m, k)) * w.inv_A(k + shift);
  }
  return std::sqrt(s);
}

double truncation_bound(const ToeplitzElement& a, const WeightPair& w) {
  const auto tail = w.tail_sum_inv_A(a.k_max());
  if (!tail) return std::numeric_limits<double>::quiet_NaN();
  double c = 0.0;
  for (int m = a.mode_min(); m <= a.mode_max(); ++m) c = std::max(c, std::norm(a.coeff(m, a.k_max())));
  return c * *tail;
}

Report abel_identity_check(const std::vector<cplx>& a, const std::vector<cplx>& b, int n) {
  if (n < 0 || a.size() < static_cast<std::size_t>(n) + 2 || b.size() < static_cast<std::size_t>(n) + 2) {
    throw std::invalid_argument("abel_identity_check: sequences must cover [0, n+1]");
  }
  Report r;
  r.check = "abel_identity";
  r.anchor = "integration_by_parts_proposition";
  r.params = {{"n", n}};

  cplx left{}, tail{};
  double mag = 0.0;
  for (int k = 0; k <= n; ++k) {
    const cplx t1 = a[k] * (b[k + 1] - b[k]);
    const cplx t2 = b[k + 1] * (a[k + 1] - a[k]);
    left += t1;
    tail += t2;
    mag += std::abs(t1) + std::abs(t2);
  }
  const cplx ends = a[n + 1] * b[n + 1] - a[0] * b[0];
  mag += std::abs(a[n + 1] * b[n + 1]) + std::abs(a[0] * b[0]);
  const double scale = std::max(1.0, mag);
  const double residual = std::abs(left - (ends - tail)) / scale;
  const double printed_residual = std::abs(left - (ends + tail)) / scale;

  r.observed = {{"scaled_residual", residual}, {"printed_sign_scaled_residual", printed_residual}};
  r.expected = {{"scaled_residual_tol", 1e-13}};
  r.pass = residual <= 1e-13;
  return r;
}

Report abel_trace_check(const ToeplitzElement& f, const ToeplitzElement& g) {
  require_same_k(f, g, "abel_trace_check");
  Report r;
  r.check = "abel_trace_form";
  r.anchor = "integration_by_parts_proposition";
  const long K = f.k_max();
  r.params = {{"K_max", K}};
  if (f.mode_min() != 0 || f.mode_max() != 0 || g.mode_min() != 0 || g.mode_max() != 0) {
    throw std::invalid_argument("abel_trace_check: diagonal elements (mode 0 only) expected");
  }
  const auto& tf = f.tail(0);
  const auto& tg = g.tail(0);
  if (!tf || !tg || tf->start > K || tg->start > K) {
    throw std::invalid_argument("abel_trace_check: tails must be declared by k_max");
  }
  cplx left{}, right{};
  double mag = 0.0;
  for (long k = 0; k <= K; ++k) {
    const cplx prev = k > 0 ? f.coeff(0, k - 1) : cplx{};
    const cplx t1 = (prev - f.coeff(0, k)) * g.coeff(0, k);
    const cplx t2 = f.coeff(0, k) * (g.coeff(0, k + 1) - g.coeff(0, k));
    left += t1;
    right += t2;
    mag += std::abs(t1) + std::abs(t2);
  }
  const cplx limits = tf->value * tg->value;
  const double residual = std::abs(left - (right - limits));
  r.observed = {{"residual", residual}, {"scaled_residual", residual / std::max(1.0, mag)}};
  r.expected = {{"residual_tol", 1e-10}};
  r.pass = residual < 1e-10;
  return r;
}

IbpResult integration_by_parts(const ToeplitzElement& a, const ToeplitzElement& b, const WeightPair& w) {
  require_same_k(a, b, "integration_by_parts");
  if (!a.all_tails_declared() || !b.all_tails_declared()) {
    throw std::invalid_argument("integration_by_parts: both elements need declared tails");
  }
  const int K = a.k_max();
  IbpResult res;
  res.lhs = inner_product_rows(apply_D(a, w), b, w, K);
  res.rhs = inner_product_rows(a, apply_Dbar(b, w), w, K);

  // (b a*)_{K+1,K} = sum_j b_{K+1,j} conj(a_{K,j}).
  cplx x{};
  const long j_lo = std::max<long>(0, static_cast<long>(K) - a.mode_max());
  const long j_hi = static_cast<long>(K) - a.mode_min();
  for (long j = j_lo; j <= j_hi; ++j) x += b.entry(K + 1, j) * std::conj(a.entry(K, j));
  res.truncation_boundary = -w.B(K) * x;

  cplx lim{};
  for (int m = a.mode_min(); m <= a.mode_max(); ++m) {
    lim += std::conj(a.tail(m)->value) * (b.has_mode(m + 1) ? b.tail(m + 1)->value : cplx{});
  }
  res.limit_boundary = lim;

  const cplx diff = res.lhs - res.rhs;
  res.residual = std::abs(diff - res.truncation_boundary);
  res.limit_residual = std::abs(diff + res.limit_boundary);
  res.scale = std::max({std::abs(res.lhs), std::abs(res.rhs), 1.0});
  return res;
}

double integration_by_parts_residual(const ToeplitzElement& a, const ToeplitzElement& b, const WeightPair& w) {
  return integration_by_parts(a, b, w).residual;
}

}  // namespace qdisk
