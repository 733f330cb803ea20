#pragma once

#include <vector>

#include <Eigen/Dense>

namespace qdisk {

/// rows x cols matrix whose only nonzeros are (r, r + offset) = lo[r] and
/// (r, r + offset + 1) = hi[r]; entries falling outside [0, cols) are ignored.
/// Both lower and upper bidiagonal systems fit this shape.
struct TwoBand {
  int rows = 0;
  int cols = 0;
  int offset = 0;
  std::vector<double> lo;
  std::vector<double> hi;

  Eigen::MatrixXd dense() const;
};

/// Singular values of a two-band matrix, descending. The result may carry
/// extra exact zeros from padding to a square bidiagonal; rank counts are
/// unaffected.
std::vector<double> singular_values(const TwoBand& m);

/// Singular values of a general dense matrix, descending.
std::vector<double> singular_values(const Eigen::MatrixXd& m);

struct RankCount {
  int nullity = 0;
  double threshold = 0.0;
  /// min(smallest retained / threshold, threshold / largest discarded);
  /// infinite when one side is empty or the discarded values are exact zeros.
  double gap = 0.0;
  double sigma_max = 0.0;
};

/// Numerical rank with threshold sigma_max * rel_tol; nullity = cols - rank.
RankCount count_null(const std::vector<double>& sv, int cols, double rel_tol);

}  // namespace qdisk
