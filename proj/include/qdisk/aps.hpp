#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

#include "qdisk/element.hpp"
#include "qdisk/linalg.hpp"
#include "qdisk/ncops.hpp"
#include "qdisk/weights.hpp"

namespace qdisk {

/// Orthogonal projection of L^2(S^1) onto span(e^{in phi}), n <= N.
struct APSProjection {
  int N = 0;
};

/// Zeroes every mode m > N.
BoundaryFunction project(const BoundaryFunction& f, APSProjection P);

struct IndexCounts {
  int dim_ker = 0;
  int dim_coker = 0;
  int index = 0;
};

/// Kernel: r((UB)^n) = e^{in phi} with 0 <= n <= N. Cokernel: r((BU*)^n) =
/// e^{-in phi} with e^{-i phi} r in Ker P_N, i.e. N+1 < -n <= 0.
IndexCounts index_analytic(APSProjection P);

struct ModeRange {
  int lo = 0;
  int hi = 0;
};

/// [-|N|-4, |N|+4].
ModeRange default_mode_range(int N);

struct IndexOptions {
  int tail_window = 16;
  /// Singular values below sigma_max * zero_tol / K count as zero.
  double zero_tol = 1e-6;
  double min_gap = 1e2;
  /// Minimum of 1 / (1 - tail-window mean of P_n) over constrained kernel
  /// modes: how well the truncation resolves the boundary values of (UB)^n.
  double min_resolution = 10.0;
};

struct NumericIndex {
  IndexCounts counts;
  double min_gap = 0.0;
  double resolution = 0.0;
  bool well_conditioned = false;
  nlohmann::json to_json() const;
};

class IllConditioned : public std::runtime_error {
 public:
  IllConditioned(const std::string& what, NumericIndex result) : std::runtime_error(what), result_(result) {}
  const NumericIndex& result() const { return result_; }

 private:
  NumericIndex result_;
};

/// Per-mode truncated recursion systems of D and Dbar for fixed weights and
/// K_max, with rank counts cached across N (a mode system depends on N only
/// through whether its boundary row is present).
class ModeSystems {
 public:
  ModeSystems(WeightPair w, int k_max, IndexOptions opt = {});

  /// Unconstrained systems are two-band (rows of the per-mode recursion
  /// without the A factor); constrained ones append the tail-window mean row.
  TwoBand band(Which op, int mode) const;
  Eigen::MatrixXd dense(Which op, int mode, bool constrained) const;

  RankCount rank(Which op, int mode, bool constrained);

  /// Kernel of D_{P_N} from D systems (mode m constrained iff m > N);
  /// cokernel from Dbar systems (mode m constrained iff m <= N + 1).
  /// Throws IllConditioned when the gap or resolution criterion fails.
  NumericIndex index(APSProjection P, std::optional<ModeRange> range = std::nullopt);

  int k_max() const { return k_max_; }
  const WeightPair& weights() const { return w_; }

 private:
  WeightPair w_;
  int k_max_;
  IndexOptions opt_;
  std::mutex mutex_;
  std::map<std::tuple<int, int, bool>, RankCount> cache_;
};

NumericIndex index_numeric(const WeightPair& w, APSProjection P, int k_max,
                           std::optional<ModeRange> range = std::nullopt, const IndexOptions& opt = {});

struct ApsSolution {
  std::optional<ToeplitzElement> solution;
  /// f_n^b of Qb on the modes -n with N < -n <= -1 (when it does not vanish).
  std::optional<BoundaryFunction> obstruction;
  int kernel_dim = 0;
};

/// Solves D a = b with r(a) in Ran P_N. a_0 = Qb already has zero boundary
/// values on modes >= 0; for N >= 0 the kernel elements (UB)^n, n <= N, are
/// projected out to give the minimal ||.||_A solution. For N < -1 the f-side
/// boundary values of Qb on modes (N, -1] cannot be changed; if any exceeds
/// tol * max(1, max|b|) they are returned as the obstruction.
ApsSolution solve_aps(const ToeplitzElement& b, const WeightPair& w, APSProjection P, double tol = 1e-10);

}  // namespace qdisk
