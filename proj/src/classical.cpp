#include "qdisk/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qdisk/parallel.hpp"

namespace qdisk {

RadialModeFunction::RadialModeFunction(int n_, std::vector<cplx> s) : n(n_), samples(std::move(s)) {
  if (samples.size() < 64) throw std::invalid_argument("RadialModeFunction: at least 64 samples required");
  for (const auto& v : samples) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw std::invalid_argument("RadialModeFunction: non-finite sample");
    }
  }
}

RadialModeFunction RadialModeFunction::sample(int n, int M, const std::function<cplx(double)>& f) {
  if (M < 64) throw std::invalid_argument("RadialModeFunction: at least 64 samples required");
  std::vector<cplx> s(static_cast<std::size_t>(M));
  for (int i = 0; i < M; ++i) s[static_cast<std::size_t>(i)] = f(static_cast<double>(i) / (M - 1));
  return RadialModeFunction(n, std::move(s));
}

namespace {

std::vector<cplx> derivative(const RadialModeFunction& f) {
  const int M = f.size();
  const double h = f.h();
  const auto& v = f.samples;
  std::vector<cplx> d(static_cast<std::size_t>(M));
  d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
  for (int i = 1; i + 1 < M; ++i) d[static_cast<std::size_t>(i)] = (v[i + 1] - v[i - 1]) / (2.0 * h);
  d[M - 1] = (3.0 * v[M - 1] - 4.0 * v[M - 2] + v[M - 3]) / (2.0 * h);
  return d;
}

// sign = +1: (F/2rho)(rho f' - n f) at mode n+1; sign = -1: -(F/2rho)(rho f' + n f) at n-1.
RadialModeFunction radial_apply(const RadialModeFunction& f, const ClassicalWeight& F, int sign) {
  const auto d = derivative(f);
  const int M = f.size();
  const double n = f.n;
  std::vector<cplx> out(static_cast<std::size_t>(M));
  out[0] = sign * (F(0.0) / 2.0) * (1.0 - sign * n) * d[0];
  for (int i = 1; i < M; ++i) {
    const double rho = f.rho(i);
    out[static_cast<std::size_t>(i)] =
        sign * (F(rho) / (2.0 * rho)) * (rho * d[static_cast<std::size_t>(i)] - sign * n * f.samples[i]);
  }
  return RadialModeFunction(f.n + sign, std::move(out));
}

RadialFunction apply_all(const RadialFunction& f, const ClassicalWeight& F, int sign) {
  RadialFunction out;
  for (const auto& [n, fn] : f) {
    auto g = radial_apply(fn, F, sign);
    out.emplace(g.n, std::move(g));
  }
  return out;
}

}  // namespace

RadialModeFunction apply_D_classical(const RadialModeFunction& f, const ClassicalWeight& F) {
  return radial_apply(f, F, +1);
}

RadialModeFunction apply_Dbar_classical(const RadialModeFunction& f, const ClassicalWeight& F) {
  return radial_apply(f, F, -1);
}

RadialFunction apply_D_classical(const RadialFunction& f, const ClassicalWeight& F) { return apply_all(f, F, +1); }

RadialFunction apply_Dbar_classical(const RadialFunction& f, const ClassicalWeight& F) {
  return apply_all(f, F, -1);
}

cplx inner_product_classical(const RadialFunction& f, const RadialFunction& g, const ClassicalWeight& F) {
  cplx total{};
  for (const auto& [n, fn] : f) {
    const auto it = g.find(n);
    if (it == g.end()) continue;
    const auto& gn = it->second;
    if (gn.size() != fn.size()) throw std::invalid_argument("inner_product_classical: grid mismatch");
    const int M = fn.size();
    cplx s{};
    for (int i = 0; i < M; ++i) {
      const double rho = fn.rho(i);
      const double wgt = (i == 0 || i == M - 1) ? 0.5 : 1.0;
      s += wgt * std::conj(fn.samples[i]) * gn.samples[i] * (2.0 * rho / F(rho));
    }
    total += s * fn.h();
  }
  return total;
}

ClassicalIbp integration_by_parts_classical(const RadialFunction& f, const RadialFunction& g,
                                            const ClassicalWeight& F) {
  ClassicalIbp r;
  r.lhs = inner_product_classical(apply_D_classical(f, F), g, F);
  r.rhs = inner_product_classical(f, apply_Dbar_classical(g, F), F);
  for (const auto& [m, fm] : f) {
    const auto it = g.find(m + 1);
    if (it == g.end()) continue;
    r.boundary += std::conj(fm.samples.back()) * it->second.samples.back();
  }
  r.residual = std::abs(r.lhs - r.boundary - r.rhs);
  return r;
}

ClassicalSystems::ClassicalSystems(int M, IndexOptions opt) : M_(M), opt_(opt) {
  if (M < 64) throw std::invalid_argument("ClassicalSystems: at least 64 grid points required");
}

TwoBand ClassicalSystems::band(Which op, int mode, bool constrained) const {
  const int c0 = mode != 0 ? 1 : 0;              // regularity eliminates f_0
  const int c1 = constrained ? M_ - 2 : M_ - 1;  // boundary condition eliminates f_{M-1}
  const double s = op == Which::D ? -1.0 : 1.0;
  TwoBand t;
  t.rows = M_ - 1;  // i = 1..M-1
  t.cols = c1 - c0 + 1;
  t.offset = -c0;
  t.lo.assign(static_cast<std::size_t>(t.rows), -1.0);
  t.hi.resize(static_cast<std::size_t>(t.rows));
  for (int r = 0; r < t.rows; ++r) {
    const double i = r + 1;
    t.hi[static_cast<std::size_t>(r)] = 1.0 + s * mode / i;
  }
  return t;
}

RankCount ClassicalSystems::rank(Which op, int mode, bool constrained) {
  const auto key = std::make_tuple(op == Which::D ? 0 : 1, mode, constrained);
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  const auto t = band(op, mode, constrained);
  const RankCount rc = count_null(singular_values(t), t.cols, opt_.zero_tol / M_);
  std::lock_guard lock(mutex_);
  cache_.emplace(key, rc);
  return rc;
}

NumericIndex ClassicalSystems::index(APSProjection P, std::optional<ModeRange> range) {
  const ModeRange r = range.value_or(default_mode_range(P.N));
  if (r.lo > r.hi) throw std::invalid_argument("index_classical: empty mode range");
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
  out.resolution = std::numeric_limits<double>::infinity();
  out.well_conditioned = out.min_gap >= opt_.min_gap;
  if (!out.well_conditioned) {
    std::ostringstream os;
    os << "index_classical: ill-conditioned at M=" << M_ << " (gap " << out.min_gap << ")";
    throw IllConditioned(os.str(), out);
  }
  return out;
}

NumericIndex index_classical(APSProjection P, const ClassicalWeight&, int M, std::optional<ModeRange> range,
                             const IndexOptions& opt) {
  ClassicalSystems sys(M, opt);
  return sys.index(P, range);
}

}  // namespace qdisk
