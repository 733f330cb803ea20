#pragma once

#include <limits>
#include <stdexcept>
#include <vector>

#include "qdisk/element.hpp"
#include "qdisk/report.hpp"
#include "qdisk/weights.hpp"

namespace qdisk {

/// Shift-modulus products P_n(k) = B(k) B(k+1) ... B(k+n-1) (P_0 = 1),
/// evaluated as exp of cumulative log-sums so that long products do not
/// underflow.
class BProducts {
 public:
  BProducts(const WeightPair& w, long k_top);
  double operator()(int n, long k) const;
  long k_top() const { return static_cast<long>(log_sum_.size()) - 1; }

 private:
  std::vector<long double> log_sum_;  // log_sum_[k] = sum_{j<k} log B(j)
};

/// Raised by apply_Q / apply_Qbar when the truncated j-tail bound exceeds the
/// requested tolerance.
class TailToleranceError : public std::runtime_error {
 public:
  TailToleranceError(const std::string& what, double bound) : std::runtime_error(what), bound_(bound) {}
  double bound() const { return bound_; }

 private:
  double bound_;
};

/// Right inverse of D. Mode m of b maps to mode m - 1 of Qb:
///
///   b mode -(n-1) (n >= 1):  f_n(k) = -(1/P_n(k)) sum_{j<=k} P_{n-1}(j) p(j) / A(j)
///   b mode n+1 (n >= 0):     g_n(k) =  P_n(k) sum_{j>=k} q(j) / (A(n+1+j) P_{n+1}(j))
///
/// The g-sums run over trusted indices only; exact when b has zero tails.
/// The g-side is the solution with vanishing boundary value.
ToeplitzElement apply_Q(const ToeplitzElement& b, const WeightPair& w,
                        double tail_tol = std::numeric_limits<double>::infinity());

/// Right inverse of Dbar. Mode m of b maps to mode m + 1:
///
///   b mode -(n+1) (n >= 0):  f_n(k) = -P_n(k) sum_{j>=k} p(j) / (A(j) P_{n+1}(j))
///   b mode n-1 (n >= 1):     g_n(k) = (1/P_n(k)) sum_{j<=k} P_{n-1}(j) q(j) / A(n-1+j)
ToeplitzElement apply_Qbar(const ToeplitzElement& b, const WeightPair& w,
                           double tail_tol = std::numeric_limits<double>::infinity());

/// Qbar through Q: Qbar b = (Q(-A b* A^{-1}))*.
ToeplitzElement apply_Qbar_via_Q(const ToeplitzElement& b, const WeightPair& w);

/// Bound on the part of the infinite j-sums of Q (or Qbar) lost to truncation:
/// max over modes of |last trusted coefficient| * sum_{j>J} 1/A(j) / P(J).
/// Zero when every mode has a zero tail; NaN when no closed-form tail exists.
double parametrix_tail_bound(const ToeplitzElement& b, const WeightPair& w, bool bar = false);

/// ||Q b||_A <= (1/B(0)) (sum_{j<=K} 1/A(j) + tail bound) ||b||_A.
Report norm_bound_check(const ToeplitzElement& b, const WeightPair& w);

struct BoundaryDecomposition {
  ToeplitzElement b;                ///< D(a)
  std::vector<cplx> kernel_coeffs;  ///< a_n, n = 0..mode_max(a)
  BoundaryFunction boundary;        ///< f_n^b at modes -n, g_n^b = a_n at modes n
  double variation = 0.0;           ///< spread of (a - Qb)_n / P_n over trusted k
};

class DecompositionMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// a = Q(Da) + sum a_n (UB)^n. The a_n come from the mean of (a - Qb)_n / P_n
/// over the last `tail_window` trusted indices; the f-modes of a - Qb must
/// vanish. Throws DecompositionMismatch when either deviates by more than
/// tol * max(1, max|a|).
BoundaryDecomposition boundary_value_decomposition(const ToeplitzElement& a, const WeightPair& w,
                                                   double tol = 1e-8, int tail_window = 16);

}  // namespace qdisk
