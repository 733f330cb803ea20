#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <tuple>
#include <vector>

#include "qdisk/aps.hpp"
#include "qdisk/element.hpp"
#include "qdisk/linalg.hpp"
#include "qdisk/weights.hpp"

namespace qdisk {

/// One Fourier mode f_n(rho) e^{in phi} sampled on rho_i = i h, h = 1/(M-1).
struct RadialModeFunction {
  int n = 0;
  std::vector<cplx> samples;

  RadialModeFunction() = default;
  /// Throws unless samples.size() >= 64 and every value is finite.
  RadialModeFunction(int n, std::vector<cplx> samples);
  static RadialModeFunction sample(int n, int M, const std::function<cplx(double)>& f);

  int size() const { return static_cast<int>(samples.size()); }
  double h() const { return 1.0 / (size() - 1); }
  double rho(int i) const { return i * h(); }
};

/// Finite collection of modes on a shared grid, keyed by mode number.
using RadialFunction = std::map<int, RadialModeFunction>;

/// Mode n -> mode n+1 with samples (F/2 rho)(rho f' - n f). f' uses centred
/// differences and second-order one-sided stencils at the ends; at rho = 0 the
/// limit (F(0)/2)(1 - n) f'(0) is used (f(0) = 0 for n != 0 by regularity).
RadialModeFunction apply_D_classical(const RadialModeFunction& f, const ClassicalWeight& F);

/// Mode n -> mode n-1 with samples -(F/2 rho)(rho f' + n f); at rho = 0 the
/// limit -(F(0)/2)(1 + n) f'(0).
RadialModeFunction apply_Dbar_classical(const RadialModeFunction& f, const ClassicalWeight& F);

RadialFunction apply_D_classical(const RadialFunction& f, const ClassicalWeight& F);
RadialFunction apply_Dbar_classical(const RadialFunction& f, const ClassicalWeight& F);

/// sum_n \int_0^1 conj(f_n) g_n F^{-1} 2 rho d rho by the trapezoid rule.
cplx inner_product_classical(const RadialFunction& f, const RadialFunction& g, const ClassicalWeight& F);

struct ClassicalIbp {
  cplx lhs;       ///< (Df, g)
  cplx rhs;       ///< (f, Dbar g)
  cplx boundary;  ///< sum_m conj(f_m(1)) g_{m+1}(1)
  double residual = 0.0;  ///< |lhs - boundary - rhs|
};

/// (Df, g) = \int conj(rf) rg e^{-i phi} dphi/2pi + (f, Dbar g).
ClassicalIbp integration_by_parts_classical(const RadialFunction& f, const RadialFunction& g,
                                            const ClassicalWeight& F);

/// Per-mode radial systems, discretised by the backward scheme
/// (rho f' -+ n f)/rho at rho_i, i = 1..M-1, scaled by h:
///   D:    -f_{i-1} + (1 - n/i) f_i = 0
///   Dbar: -f_{i-1} + (1 + n/i) f_i = 0
/// Regularity f_0 = 0 (n != 0) and the boundary condition f_{M-1} = 0 (when
/// constrained) eliminate columns, so every system stays two-band. The discrete
/// kernel of mode n >= 0 is the binomial sequence C(i, n), a discrete rho^n.
class ClassicalSystems {
 public:
  explicit ClassicalSystems(int M, IndexOptions opt = {});

  TwoBand band(Which op, int mode, bool constrained) const;
  RankCount rank(Which op, int mode, bool constrained);

  /// D mode n constrained iff n > N; Dbar mode n iff n <= N + 1.
  NumericIndex index(APSProjection P, std::optional<ModeRange> range = std::nullopt);

  int grid_size() const { return M_; }

 private:
  int M_;
  IndexOptions opt_;
  std::mutex mutex_;
  std::map<std::tuple<int, int, bool>, RankCount> cache_;
};

/// The radial operator's kernel is unaffected by F > 0 (it scales rows), so F
/// does not enter the counts; it is accepted for interface symmetry.
NumericIndex index_classical(APSProjection P, const ClassicalWeight& F, int M,
                             std::optional<ModeRange> range = std::nullopt, const IndexOptions& opt = {});

}  // namespace qdisk
