#pragma once

// Dense-matrix references built straight from the operator definitions. They
// share nothing with the Fourier-mode code beyond ToeplitzElement::entry.

#include <Eigen/Dense>

#include "qdisk/element.hpp"
#include "qdisk/weights.hpp"

namespace oracle {

using qdisk::ToeplitzElement;
using qdisk::WeightPair;

inline Eigen::MatrixXcd dense(const ToeplitzElement& a, int dim) {
  Eigen::MatrixXcd M(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) M(r, c) = a.entry(r, c);
  return M;
}

inline Eigen::MatrixXcd diag_A(const WeightPair& w, int dim) {
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) M(k, k) = w.A(k);
  return M;
}

// U B(K): e_k -> B(k) e_{k+1}.
inline Eigen::MatrixXcd shift_UB(const WeightPair& w, int dim) {
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dim, dim);
  for (int k = 0; k + 1 < dim; ++k) M(k + 1, k) = w.B(k);
  return M;
}

// A(K)[UB, a]; only entries with row, col <= dim - 2 are free of truncation.
inline Eigen::MatrixXcd commutator_D(const ToeplitzElement& a, const WeightPair& w, int dim) {
  const auto X = dense(a, dim);
  const auto S = shift_UB(w, dim);
  return diag_A(w, dim) * (S * X - X * S);
}

// A(K)[B U*, a] with B U* = (U B)*.
inline Eigen::MatrixXcd commutator_Dbar(const ToeplitzElement& a, const WeightPair& w, int dim) {
  const auto X = dense(a, dim);
  const Eigen::MatrixXcd S = shift_UB(w, dim).adjoint();
  return diag_A(w, dim) * (S * X - X * S);
}

// Tr(A^{-1} b a*) summed over the leading dim x dim block.
inline std::complex<double> trace_inner(const ToeplitzElement& a, const ToeplitzElement& b, const WeightPair& w,
                                        int dim) {
  const auto X = dense(a, dim), Y = dense(b, dim);
  Eigen::MatrixXcd Ainv = Eigen::MatrixXcd::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) Ainv(k, k) = 1.0 / w.A(k);
  return (Ainv * Y * X.adjoint()).trace();
}

// Largest |D(a)(r, c) - oracle(r, c)| over r, c < lim with min(r, c) <= valid.
inline double max_entry_diff(const ToeplitzElement& got, const Eigen::MatrixXcd& want, int lim) {
  double e = 0.0;
  for (int r = 0; r < lim; ++r)
    for (int c = 0; c < lim; ++c) {
      if (std::min(r, c) > got.valid_k()) continue;
      e = std::max(e, std::abs(got.entry(r, c) - want(r, c)));
    }
  return e;
}

}  // namespace oracle
