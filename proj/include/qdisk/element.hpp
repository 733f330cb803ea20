#pragma once

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "qdisk/weights.hpp"

namespace qdisk {

using cplx = std::complex<double>;

/// Declared exact tail: coeff(m, k) == value for every k >= start.
struct Tail {
  long start = 0;
  cplx value{};
};

/// A truncated element of the Toeplitz algebra in normal-ordered Fourier form
///
///     a = sum_{n>=1} f_n(K) (U*)^n + sum_{n>=0} U^n g_n(K).
///
/// Signed mode m < 0 stores f_{|m|}, mode m >= 0 stores g_m. Mode m is the
/// matrix diagonal row - col = m, and its coefficient sequence is indexed by
/// min(row, col): g_m(k) sits at (k+m, k), f_n(k) at (k, k+n).
///
/// Coefficients are stored for k in [0, k_max]. Entries with k > valid_k are
/// not trusted (truncation edge) unless the mode carries a declared tail, in
/// which case coeff() returns the tail value for every k >= tail start,
/// including k > k_max.
class ToeplitzElement {
 public:
  ToeplitzElement() = default;
  ToeplitzElement(int k_max, int mode_min, int mode_max);

  static ToeplitzElement zero(int k_max) { return ToeplitzElement(k_max, 0, 0); }
  /// Identity, with declared tail 1.
  static ToeplitzElement identity(int k_max);
  /// A single mode m with constant coefficient c (declared tail).
  static ToeplitzElement constant_mode(int k_max, int m, cplx c);
  /// A single mode m with the given coefficient sequence (length k_max + 1).
  static ToeplitzElement from_mode(int m, std::vector<cplx> coeff);

  int k_max() const { return k_max_; }
  int mode_min() const { return mode_min_; }
  int mode_max() const { return mode_max_; }
  int valid_k() const { return valid_k_; }
  void set_valid_k(int v) { valid_k_ = v; }

  bool has_mode(int m) const { return m >= mode_min_ && m <= mode_max_; }
  std::span<cplx> mode(int m);
  std::span<const cplx> mode(int m) const;

  /// Coefficient of mode m at index k. Zero outside the mode range or for
  /// k < 0; beyond k_max the declared tail is used, otherwise zero.
  cplx coeff(int m, long k) const;
  /// True when coeff(m, k) is trustworthy.
  bool known(int m, long k) const;

  const std::optional<Tail>& tail(int m) const;
  /// Declares mode m constant (= value) from `start`; rewrites stored entries.
  void declare_tail(int m, cplx value, long start);
  void clear_tail(int m);
  bool all_tails_declared() const;

  /// Matrix entry <e_row, a e_col> of the l^2 action.
  cplx entry(long row, long col) const;

  /// Copy with the mode range widened to include [lo, hi].
  ToeplitzElement with_modes(int lo, int hi) const;
  /// Copy with storage extended to new_k_max (tails filled in, other modes zero).
  ToeplitzElement extended(int new_k_max) const;
  /// Copy truncated to new_k_max <= k_max.
  ToeplitzElement truncated(int new_k_max) const;

  /// Entries with k > valid_k are zeroed and tails dropped.
  ToeplitzElement interior_only() const;

  double max_abs() const;

  ToeplitzElement& operator+=(const ToeplitzElement& o);
  ToeplitzElement& operator-=(const ToeplitzElement& o);
  ToeplitzElement& operator*=(cplx s);

  nlohmann::json to_json() const;
  static ToeplitzElement from_json(const nlohmann::json& j);

 private:
  int k_max_ = 0;
  int mode_min_ = 0;
  int mode_max_ = 0;
  int valid_k_ = 0;
  std::vector<std::vector<cplx>> coeff_;
  std::vector<std::optional<Tail>> tail_;
};

ToeplitzElement operator+(ToeplitzElement a, const ToeplitzElement& b);
ToeplitzElement operator-(ToeplitzElement a, const ToeplitzElement& b);
ToeplitzElement operator*(cplx s, ToeplitzElement a);

/// Trigonometric polynomial on the circle: coefficient of e^{i m phi} per m.
struct BoundaryFunction {
  std::map<int, cplx> modes;

  cplx operator[](int m) const {
    auto it = modes.find(m);
    return it == modes.end() ? cplx{} : it->second;
  }
  BoundaryFunction conj() const;
  double max_abs_diff(const BoundaryFunction& o) const;
  double max_abs() const;

  nlohmann::json to_json() const;
  static BoundaryFunction from_json(const nlohmann::json& j);
};

/// Dense dim x dim block of the l^2 action. Requires dim <= k_max + 1.
Eigen::MatrixXcd to_matrix(const ToeplitzElement& a, int dim);

/// Normal-ordered product a*b. Coefficients are trusted for
/// k <= min(valid) - (|mode_min(a)| + |mode_min(b)| + mode_max(a) + mode_max(b));
/// throws std::range_error when that interior is empty. If both factors have
/// all tails declared the product is exact everywhere and declares tails.
ToeplitzElement multiply(const ToeplitzElement& a, const ToeplitzElement& b);

/// Hermitian adjoint: mode m becomes mode -m with conjugated coefficients.
ToeplitzElement adjoint(const ToeplitzElement& a);

/// (U B(K))^n = U^n B(K) B(K+1) ... B(K+n-1).
ToeplitzElement power_UB(const WeightPair& w, int n, int k_max);

struct Restriction {
  BoundaryFunction boundary;
  /// Largest in-window spread max|c - mean| over modes without declared tails.
  double variation = 0.0;
};

/// Boundary values per mode: declared tail if present, else the mean of the
/// last `tail_window` trusted coefficients.
Restriction restrict_to_boundary(const ToeplitzElement& a, int tail_window);

/// Each boundary mode becomes a constant coefficient sequence with declared tail.
ToeplitzElement extend_from_boundary(const BoundaryFunction& f, int k_max);

}  // namespace qdisk
