#include "qdisk/aps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "qdisk/hilbert.hpp"
#include "qdisk/parallel.hpp"
#include "qdisk/parametrix.hpp"

namespace qdisk {

BoundaryFunction project(const BoundaryFunction& f, APSProjection P) {
  BoundaryFunction out;
  for (const auto& [m, c] : f.modes) {
    if (m <= P.N) out.modes[m] = c;
  }
  return out;
}

IndexCounts index_analytic(APSProjection P) {
  IndexCounts c;
  for (int n = 0; n <= P.N; ++n) ++c.dim_ker;           // (UB)^n, 0 <= n <= N
  for (int m = P.N + 2; m <= 0; ++m) ++c.dim_coker;     // (BU*)^{-m}, N+1 < m <= 0
  c.index = c.dim_ker - c.dim_coker;
  return c;
}

ModeRange default_mode_range(int N) { return {-std::abs(N) - 4, std::abs(N) + 4}; }

nlohmann::json NumericIndex::to_json() const {
  auto finite = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json("inf"); };
  return {{"dim_ker", counts.dim_ker},   {"dim_coker", counts.dim_coker},
          {"index", counts.index},       {"min_gap", finite(min_gap)},
          {"resolution", finite(resolution)}, {"well_conditioned", well_conditioned}};
}

ModeSystems::ModeSystems(WeightPair w, int k_max, IndexOptions opt) : w_(std::move(w)), k_max_(k_max), opt_(opt) {
  if (k_max < opt_.tail_window) throw std::invalid_argument("ModeSystems: k_max shorter than the tail window");
}

TwoBand ModeSystems::band(Which op, int mode) const {
  const int K = k_max_;
  TwoBand t;
  const long n = std::abs(mode);
  // Square lower bidiagonal (offset -1) or K x (K+1) upper bidiagonal (offset 0).
  const bool square = op == Which::D ? mode < 0 : mode >= 1;
  t.rows = square ? K + 1 : K;
  t.cols = K + 1;
  t.offset = square ? -1 : 0;
  t.lo.resize(static_cast<std::size_t>(t.rows));
  t.hi.resize(static_cast<std::size_t>(t.rows));
  for (long k = 0; k < t.rows; ++k) {
    const auto i = static_cast<std::size_t>(k);
    if (op == Which::D) {
      if (mode < 0) {  // B(k-1) f(k-1) - B(k+n-1) f(k)
        t.lo[i] = w_.B(k - 1);
        t.hi[i] = -w_.B(k + n - 1);
      } else {  // B(k+n) g(k) - B(k) g(k+1)
        t.lo[i] = w_.B(k + n);
        t.hi[i] = -w_.B(k);
      }
    } else {
      if (mode <= 0) {  // B(k) f(k+1) - B(k+n) f(k)
        t.lo[i] = -w_.B(k + n);
        t.hi[i] = w_.B(k);
      } else {  // B(k+n-1) g(k) - B(k-1) g(k-1)
        t.lo[i] = -w_.B(k - 1);
        t.hi[i] = w_.B(k + n - 1);
      }
    }
  }
  return t;
}

Eigen::MatrixXd ModeSystems::dense(Which op, int mode, bool constrained) const {
  const Eigen::MatrixXd core = band(op, mode).dense();
  if (!constrained) return core;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(core.rows() + 1, core.cols());
  m.topRows(core.rows()) = core;
  const int W = opt_.tail_window;
  for (int c = k_max_ - W + 1; c <= k_max_; ++c) m(core.rows(), c) = 1.0 / W;
  return m;
}

RankCount ModeSystems::rank(Which op, int mode, bool constrained) {
  const auto key = std::make_tuple(op == Which::D ? 0 : 1, mode, constrained);
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  const double rel = opt_.zero_tol / k_max_;
  RankCount rc;
  if (constrained) {
    rc = count_null(singular_values(dense(op, mode, true)), k_max_ + 1, rel);
  } else {
    rc = count_null(singular_values(band(op, mode)), k_max_ + 1, rel);
  }
  std::lock_guard lock(mutex_);
  cache_.emplace(key, rc);
  return rc;
}

NumericIndex ModeSystems::index(APSProjection P, std::optional<ModeRange> range) {
  const ModeRange r = range.value_or(default_mode_range(P.N));
  if (r.lo > r.hi) throw std::invalid_argument("index_numeric: empty mode range");

  struct Item {
    Which op;
    int mode;
    bool constrained;
    RankCount rc;
  };
  std::vector<Item> items;
  for (int m = r.lo; m <= r.hi; ++m) {
    items.push_back({Which::D, m, m > P.N, {}});
    items.push_back({Which::Dbar, m, m <= P.N + 1, {}});
  }
  parallel_for(items.size(), [&](std::size_t i) { items[i].rc = rank(items[i].op, items[i].mode, items[i].constrained); });

  NumericIndex out;
  out.min_gap = std::numeric_limits<double>::infinity();
  for (const auto& it : items) {
    (it.op == Which::D ? out.counts.dim_ker : out.counts.dim_coker) += it.rc.nullity;
    out.min_gap = std::min(out.min_gap, it.rc.gap);
  }
  out.counts.index = out.counts.dim_ker - out.counts.dim_coker;

  // Boundary resolution: constrained modes whose unconstrained system has a
  // kernel, (UB)^n or (BU*)^n, whose tail mean should be close to 1.
  const BProducts Pn(w_, k_max_ + std::max(std::abs(r.lo), std::abs(r.hi)) + 2);
  double worst = 0.0;
  auto deficit = [&](int n) {
    double mean = 0.0;
    for (int k = k_max_ - opt_.tail_window + 1; k <= k_max_; ++k) mean += Pn(n, k);
    return 1.0 - mean / opt_.tail_window;
  };
  for (int m = r.lo; m <= r.hi; ++m) {
    if (m >= 1 && m > P.N) worst = std::max(worst, deficit(m));
    if (m <= -1 && m <= P.N + 1) worst = std::max(worst, deficit(-m));
  }
  out.resolution = worst > 0.0 ? 1.0 / worst : std::numeric_limits<double>::infinity();
  out.well_conditioned = out.min_gap >= opt_.min_gap && out.resolution >= opt_.min_resolution;
  if (!out.well_conditioned) {
    std::ostringstream os;
    os << "index_numeric: ill-conditioned at K_max=" << k_max_ << " (gap " << out.min_gap << ", resolution "
       << out.resolution << "); increase K_max";
    throw IllConditioned(os.str(), out);
  }
  return out;
}

NumericIndex index_numeric(const WeightPair& w, APSProjection P, int k_max, std::optional<ModeRange> range,
                           const IndexOptions& opt) {
  ModeSystems sys(w, k_max, opt);
  return sys.index(P, range);
}

ApsSolution solve_aps(const ToeplitzElement& b, const WeightPair& w, APSProjection P, double tol) {
  ApsSolution out;
  out.kernel_dim = index_analytic(P).dim_ker;
  auto a = apply_Q(b, w);

  if (P.N < -1) {
    // f_n^b for 1 <= n <= -N-1 lives on mode -n of Qb; it is fixed by b.
    const BProducts Pn(w, b.k_max() + std::max(std::abs(b.mode_min()), std::abs(b.mode_max())) + 3);
    const long top = std::min(a.valid_k(), a.k_max());
    BoundaryFunction obstruction;
    double worst = 0.0;
    for (int n = 1; n <= -P.N - 1; ++n) {
      const int m = -(n - 1);  // p_{n-1} sits on mode -(n-1) of b
      cplx s{};
      for (long j = 0; j <= top; ++j) s += Pn(n - 1, j) * b.coeff(m, j) * w.inv_A(j);
      obstruction.modes[-n] = -s;
      worst = std::max(worst, std::abs(s));
    }
    if (worst > tol * std::max(1.0, b.max_abs())) {
      out.obstruction = obstruction;
      return out;
    }
    out.solution = std::move(a);
    return out;
  }

  // Remove the A-orthogonal components along (UB)^n, n <= N; the basis is
  // orthogonal because each element occupies a single mode.
  for (int n = 0; n <= P.N; ++n) {
    const auto k = power_UB(w, n, a.k_max());
    const double kk = std::real(inner_product_fourier(k, k, w));
    const cplx c = inner_product_fourier(k, a, w) / kk;
    a -= c * k;
  }
  out.solution = std::move(a);
  return out;
}

}  // namespace qdisk
