#include "qdisk/parametrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qdisk/hilbert.hpp"
#include "qdisk/ncops.hpp"

namespace qdisk {

BProducts::BProducts(const WeightPair& w, long k_top) : log_sum_(static_cast<std::size_t>(k_top) + 1) {
  log_sum_[0] = 0.0L;
  for (long k = 1; k <= k_top; ++k) {
    log_sum_[static_cast<std::size_t>(k)] =
        log_sum_[static_cast<std::size_t>(k - 1)] + std::log(static_cast<long double>(w.B(k - 1)));
  }
}

double BProducts::operator()(int n, long k) const {
  if (n == 0) return 1.0;
  return static_cast<double>(
      std::exp(log_sum_.at(static_cast<std::size_t>(k + n)) - log_sum_.at(static_cast<std::size_t>(k))));
}

namespace {

int max_abs_mode(const ToeplitzElement& b) { return std::max(std::abs(b.mode_min()), std::abs(b.mode_max())); }

// Last index worth summing for a backward (j >= k) sum over mode m, and
// whether that sum is exact.
struct SumRange {
  long last;
  bool exact;
};

SumRange backward_range(const ToeplitzElement& b, int m) {
  const auto& t = b.tail(m);
  if (t && t->value == cplx{}) return {std::min<long>(b.k_max(), t->start), true};
  return {b.all_tails_declared() ? b.k_max() : std::min(b.valid_k(), b.k_max()), false};
}

int output_valid(const ToeplitzElement& b) { return b.all_tails_declared() ? b.k_max() : b.valid_k(); }

void enforce_tail(const ToeplitzElement& b, const WeightPair& w, bool bar, double tol) {
  if (!std::isfinite(tol)) return;
  const double bound = parametrix_tail_bound(b, w, bar);
  if (!(bound <= tol)) {
    std::ostringstream os;
    os << "parametrix: truncated tail bound " << bound << " exceeds tolerance " << tol;
    throw TailToleranceError(os.str(), bound);
  }
}

}  // namespace

ToeplitzElement apply_Q(const ToeplitzElement& b, const WeightPair& w, double tail_tol) {
  enforce_tail(b, w, false, tail_tol);
  const int K = b.k_max();
  const BProducts P(w, K + max_abs_mode(b) + 2);
  ToeplitzElement a(K, b.mode_min() - 1, b.mode_max() - 1);
  for (int m = b.mode_min(); m <= b.mode_max(); ++m) {
    auto dst = a.mode(m - 1);
    if (m <= 0) {
      const int n = 1 - m;
      cplx s{};
      for (long k = 0; k <= K; ++k) {
        s += P(n - 1, k) * b.coeff(m, k) * w.inv_A(k);
        dst[static_cast<std::size_t>(k)] = -s / P(n, k);
      }
    } else {
      const int n = m - 1;
      const auto range = backward_range(b, m);
      cplx s{};
      for (long k = range.last; k >= 0; --k) {
        s += b.coeff(m, k) / (w.A(n + 1 + k) * P(n + 1, k));
        if (k <= K) dst[static_cast<std::size_t>(k)] = P(n, k) * s;
      }
    }
  }
  a.set_valid_k(output_valid(b));
  return a;
}

ToeplitzElement apply_Qbar(const ToeplitzElement& b, const WeightPair& w, double tail_tol) {
  enforce_tail(b, w, true, tail_tol);
  const int K = b.k_max();
  const BProducts P(w, K + max_abs_mode(b) + 2);
  ToeplitzElement a(K, b.mode_min() + 1, b.mode_max() + 1);
  for (int m = b.mode_min(); m <= b.mode_max(); ++m) {
    auto dst = a.mode(m + 1);
    if (m <= -1) {
      const int n = -m - 1;
      const auto range = backward_range(b, m);
      cplx s{};
      for (long k = range.last; k >= 0; --k) {
        s += b.coeff(m, k) / (w.A(k) * P(n + 1, k));
        if (k <= K) dst[static_cast<std::size_t>(k)] = -P(n, k) * s;
      }
    } else {
      const int n = m + 1;
      cplx s{};
      for (long k = 0; k <= K; ++k) {
        s += P(n - 1, k) * b.coeff(m, k) / w.A(n - 1 + k);
        dst[static_cast<std::size_t>(k)] = s / P(n, k);
      }
    }
  }
  a.set_valid_k(output_valid(b));
  return a;
}

ToeplitzElement apply_Qbar_via_Q(const ToeplitzElement& b, const WeightPair& w) {
  auto x = conjugate_by_A(adjoint(b), w);
  x *= -1.0;
  return adjoint(apply_Q(x, w));
}

double parametrix_tail_bound(const ToeplitzElement& b, const WeightPair& w, bool bar) {
  const int K = b.k_max();
  const BProducts P(w, K + max_abs_mode(b) + 2);
  double bound = 0.0;
  for (int m = b.mode_min(); m <= b.mode_max(); ++m) {
    // Backward sums: Q's g-side (m >= 1), Qbar's f-side (m <= -1).
    if (bar ? m > -1 : m < 1) continue;
    const auto range = backward_range(b, m);
    if (range.exact) continue;
    const long J = range.last;
    const int n1 = bar ? -m : m;  // index of the P-product in the summand
    const long shift = bar ? 0 : n1;
    const auto tail = w.tail_sum_inv_A(J + shift);
    if (!tail) return std::numeric_limits<double>::quiet_NaN();
    double c = 0.0;
    if (const auto& t = b.tail(m)) {
      c = std::abs(t->value);
    } else {
      for (long k = std::max<long>(0, J - 15); k <= J; ++k) c = std::max(c, std::abs(b.coeff(m, k)));
    }
    bound = std::max(bound, c * *tail / P(n1, J));
  }
  return bound;
}

Report norm_bound_check(const ToeplitzElement& b, const WeightPair& w) {
  Report r;
  r.check = "parametrix_norm_bound";
  r.anchor = "Qprop";
  const int K = b.k_max();
  const double partial = w.partial_sum_inv_A(K);
  const auto tail = w.tail_bound_inv_A(K);
  const double constant = (partial + tail.value_or(0.0)) / w.B(0);
  const double nb = norm_fourier(b, w);
  const double nq = norm_fourier(apply_Q(b, w), w);
  r.params = {{"weights", w.to_json()}, {"K_max", K}};
  r.observed = {{"norm_Qb", nq}, {"norm_b", nb}, {"ratio", nb > 0.0 ? nq / nb : 0.0}};
  r.expected = {{"constant", constant},
                {"partial_sum_inv_A", partial},
                {"tail_bound_inv_A", tail ? nlohmann::json(*tail) : nlohmann::json(nullptr)},
                {"rhs", constant * nb}};
  r.pass = nq <= constant * nb;
  return r;
}

BoundaryDecomposition boundary_value_decomposition(const ToeplitzElement& a, const WeightPair& w, double tol,
                                                   int tail_window) {
  BoundaryDecomposition out;
  out.b = apply_D(a, w);
  const auto qb = apply_Q(out.b, w);
  const long top = std::min(qb.valid_k(), qb.k_max());
  if (top < tail_window) throw std::range_error("boundary_value_decomposition: trusted range shorter than window");
  const BProducts P(w, a.k_max() + max_abs_mode(a) + 2);
  const double scale = std::max(1.0, a.max_abs());

  double worst_f = 0.0;
  for (int m = a.mode_min(); m < 0; ++m) {
    for (long k = 0; k <= top; ++k) worst_f = std::max(worst_f, std::abs(a.coeff(m, k) - qb.coeff(m, k)));
  }

  double variation = 0.0;
  for (int n = 0; n <= std::max(0, a.mode_max()); ++n) {
    cplx mean{};
    for (long k = top - tail_window + 1; k <= top; ++k) mean += (a.coeff(n, k) - qb.coeff(n, k)) / P(n, k);
    mean /= static_cast<double>(tail_window);
    for (long k = 0; k <= top; ++k) {
      const cplx resid = a.coeff(n, k) - qb.coeff(n, k) - mean * P(n, k);
      variation = std::max(variation, std::abs(resid));
    }
    out.kernel_coeffs.push_back(mean);
    out.boundary.modes[n] = mean;
  }
  out.variation = std::max(variation, worst_f);
  if (out.variation > tol * scale) {
    std::ostringstream os;
    os << "boundary_value_decomposition: a - Q(Da) leaves the kernel span by " << out.variation;
    throw DecompositionMismatch(os.str());
  }

  // f_n^b = -sum_j P_{n-1}(j) p_{n-1}(j) / A(j), with p_{n-1} at mode -(n-1) of b.
  for (int m = out.b.mode_min(); m <= 0; ++m) {
    const int n = 1 - m;
    cplx s{};
    for (long j = 0; j <= top; ++j) s += P(n - 1, j) * out.b.coeff(m, j) * w.inv_A(j);
    out.boundary.modes[-n] = -s;
  }
  return out;
}

}  // namespace qdisk
