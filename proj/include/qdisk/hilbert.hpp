#pragma once

#include <vector>

#include "qdisk/element.hpp"
#include "qdisk/report.hpp"
#include "qdisk/weights.hpp"

namespace qdisk {

/// (a, b)_A = Tr(A(K)^{-1} b a*) over the stored (k_max+1)-square block.
/// Linear in b, conjugate-linear in a. Requires equal k_max.
cplx inner_product(const ToeplitzElement& a, const ToeplitzElement& b, const WeightPair& w);

/// Same trace, but over rows r <= rows with every column included. Coefficients
/// beyond k_max come from declared tails.
cplx inner_product_rows(const ToeplitzElement& a, const ToeplitzElement& b, const WeightPair& w, int rows);

/// Inner product matching norm_fourier: sum over shared modes and trusted k
/// of conj(a) b / A(row), without clipping columns to the block.
cplx inner_product_fourier(const ToeplitzElement& a, const ToeplitzElement& b, const WeightPair& w);

/// sqrt(sum_{m<0} sum_k |f|^2 / A(k) + sum_{m>=0} sum_k |g_m|^2 / A(k+m)) over trusted k.
double norm_fourier(const ToeplitzElement& a, const WeightPair& w);

/// max_m |coeff(m, k_max)|^2 * sum_{k>k_max} 1/A(k); NaN when the weight has
/// no closed-form tail. Large values mean the truncated trace is approximate.
double truncation_bound(const ToeplitzElement& a, const WeightPair& w);

/// Finite Abel summation on [0, n+1]:
///   sum_{k=0}^n a_k (b_{k+1} - b_k) = a_{n+1} b_{n+1} - a_0 b_0 - sum_{k=0}^n b_{k+1} (a_{k+1} - a_k).
/// The report also carries the residual of the printed variant (with + before
/// the last sum), and the trace form
///   sum_{k<=K} (f(k-1) - f(k)) g(k) = sum_{k<=K} f(k)(g(k+1) - g(k)) - f(K) g(K+1)
/// whose last term is (lim f)(lim g) when the tails are declared by K.
Report abel_identity_check(const std::vector<cplx>& a, const std::vector<cplx>& b, int n);
Report abel_trace_check(const ToeplitzElement& f, const ToeplitzElement& g);

struct IbpResult {
  cplx lhs;  ///< (Da, b)_A over rows <= K
  cplx rhs;  ///< (a, Dbar b)_A over rows <= K
  /// -B(K) (b a*)_{K+1,K}: the exact boundary term of the truncated traces.
  cplx truncation_boundary;
  /// sum_m conj(r(a)_m) r(b)_{m+1}: the Fourier form of the boundary integral.
  cplx limit_boundary;
  double residual;        ///< |lhs - rhs - truncation_boundary|
  double limit_residual;  ///< |lhs - rhs + limit_boundary|
  double scale;           ///< max(|lhs|, |rhs|, 1)
};

/// (Da, b)_A = (a, Dbar b)_A - \int conj(r(a)) r(b) e^{-i phi} dphi/2pi, evaluated
/// with traces over rows <= K. Both a and b must have every tail declared.
IbpResult integration_by_parts(const ToeplitzElement& a, const ToeplitzElement& b, const WeightPair& w);

/// Convenience: IbpResult::residual.
double integration_by_parts_residual(const ToeplitzElement& a, const ToeplitzElement& b, const WeightPair& w);

}  // namespace qdisk
