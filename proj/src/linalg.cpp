#include "qdisk/linalg.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include <lapacke.h>

namespace qdisk {

Eigen::MatrixXd TwoBand::dense() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const int c0 = r + offset;
    if (c0 >= 0 && c0 < cols) d(r, c0) = lo[static_cast<std::size_t>(r)];
    if (c0 + 1 >= 0 && c0 + 1 < cols) d(r, c0 + 1) = hi[static_cast<std::size_t>(r)];
  }
  return d;
}

namespace {

double at(const std::vector<double>& v, long i) {
  return i >= 0 && i < static_cast<long>(v.size()) ? v[static_cast<std::size_t>(i)] : 0.0;
}

}  // namespace

std::vector<double> singular_values(const TwoBand& m) {
  if (static_cast<int>(m.lo.size()) != m.rows || static_cast<int>(m.hi.size()) != m.rows) {
    throw std::invalid_argument("TwoBand: band lengths must equal rows");
  }
  // Normalise to offset >= 0 by transposing: (r, r+o), (r, r+o+1) become
  // (c, c-o-1), (c, c-o), i.e. offsets -o-1 and -o.
  int rows = m.rows, cols = m.cols, off = m.offset;
  std::vector<double> lo = m.lo, hi = m.hi;
  if (off < 0) {
    const int new_off = -off - 1;
    std::vector<double> tlo(static_cast<std::size_t>(cols)), thi(static_cast<std::size_t>(cols));
    for (int c = 0; c < cols; ++c) {
      // Transposed row c: column c + new_off holds old hi[c + new_off], column
      // c + new_off + 1 holds old lo[c + new_off + 1].
      const long r1 = static_cast<long>(c) + new_off;
      tlo[static_cast<std::size_t>(c)] = r1 >= 0 && r1 < rows ? at(hi, r1) : 0.0;
      thi[static_cast<std::size_t>(c)] = r1 + 1 >= 0 && r1 + 1 < rows ? at(lo, r1 + 1) : 0.0;
    }
    std::swap(rows, cols);
    off = new_off;
    lo = std::move(tlo);
    hi = std::move(thi);
  }
  // Leading `off` columns are empty; drop them.
  const int c_eff = std::max(0, cols - off);
  const int p = std::max(rows, c_eff);
  if (p == 0) return {};
  std::vector<double> d(static_cast<std::size_t>(p), 0.0), e(static_cast<std::size_t>(std::max(p - 1, 1)), 0.0);
  for (int r = 0; r < rows; ++r) {
    if (r < c_eff) d[static_cast<std::size_t>(r)] = lo[static_cast<std::size_t>(r)];
    if (r + 1 < c_eff) e[static_cast<std::size_t>(r)] = hi[static_cast<std::size_t>(r)];
  }
  const lapack_int info = LAPACKE_dbdsqr(LAPACK_COL_MAJOR, 'U', p, 0, 0, 0, d.data(), e.data(), nullptr, 1,
                                         nullptr, 1, nullptr, 1);
  if (info != 0) throw std::runtime_error("dbdsqr failed to converge");
  std::sort(d.begin(), d.end(), std::greater<>());
  return d;
}

std::vector<double> singular_values(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return {};
  Eigen::MatrixXd a = m;  // dgesdd overwrites its input
  const lapack_int rows = static_cast<lapack_int>(a.rows()), cols = static_cast<lapack_int>(a.cols());
  std::vector<double> s(static_cast<std::size_t>(std::min(rows, cols)));
  const lapack_int info =
      LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'N', rows, cols, a.data(), rows, s.data(), nullptr, 1, nullptr, 1);
  if (info != 0) throw std::runtime_error("dgesdd failed to converge");
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

RankCount count_null(const std::vector<double>& sv, int cols, double rel_tol) {
  RankCount rc;
  rc.sigma_max = sv.empty() ? 0.0 : sv.front();
  rc.threshold = rc.sigma_max * rel_tol;
  int rank = 0;
  double kept_min = std::numeric_limits<double>::infinity();
  double dropped_max = 0.0;
  for (double s : sv) {
    if (s > rc.threshold) {
      ++rank;
      kept_min = std::min(kept_min, s);
    } else {
      dropped_max = std::max(dropped_max, s);
    }
  }
  rc.nullity = cols - rank;
  const double above = kept_min / rc.threshold;
  const double below = dropped_max > 0.0 ? rc.threshold / dropped_max : std::numeric_limits<double>::infinity();
  rc.gap = std::min(above, below);
  return rc;
}

}  // namespace qdisk
