#include "qdisk/element.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace qdisk {

ToeplitzElement::ToeplitzElement(int k_max, int mode_min, int mode_max)
    : k_max_(k_max),
      mode_min_(std::min(mode_min, 0)),
      mode_max_(std::max(mode_max, 0)),
      valid_k_(k_max) {
  if (k_max < 0) throw std::invalid_argument("ToeplitzElement: k_max must be non-negative");
  const auto modes = static_cast<std::size_t>(mode_max_ - mode_min_ + 1);
  coeff_.assign(modes, std::vector<cplx>(static_cast<std::size_t>(k_max) + 1));
  tail_.assign(modes, std::nullopt);
}

ToeplitzElement ToeplitzElement::identity(int k_max) { return constant_mode(k_max, 0, 1.0); }

ToeplitzElement ToeplitzElement::constant_mode(int k_max, int m, cplx c) {
  ToeplitzElement e(k_max, m, m);
  for (int mm = e.mode_min_; mm <= e.mode_max_; ++mm) e.declare_tail(mm, mm == m ? c : cplx{}, 0);
  return e;
}

ToeplitzElement ToeplitzElement::from_mode(int m, std::vector<cplx> coeff) {
  if (coeff.empty()) throw std::invalid_argument("from_mode: empty coefficient sequence");
  ToeplitzElement e(static_cast<int>(coeff.size()) - 1, m, m);
  e.coeff_[static_cast<std::size_t>(m - e.mode_min_)] = std::move(coeff);
  return e;
}

std::span<cplx> ToeplitzElement::mode(int m) {
  if (!has_mode(m)) throw std::out_of_range("ToeplitzElement::mode: mode outside range");
  return coeff_[static_cast<std::size_t>(m - mode_min_)];
}

std::span<const cplx> ToeplitzElement::mode(int m) const {
  if (!has_mode(m)) throw std::out_of_range("ToeplitzElement::mode: mode outside range");
  return coeff_[static_cast<std::size_t>(m - mode_min_)];
}

cplx ToeplitzElement::coeff(int m, long k) const {
  if (k < 0 || !has_mode(m)) return {};
  const auto i = static_cast<std::size_t>(m - mode_min_);
  if (k <= k_max_) return coeff_[i][static_cast<std::size_t>(k)];
  if (tail_[i]) return tail_[i]->value;
  return {};
}

bool ToeplitzElement::known(int m, long k) const {
  if (k < 0 || !has_mode(m)) return true;
  const auto& t = tail_[static_cast<std::size_t>(m - mode_min_)];
  if (t && k >= t->start) return true;
  return k <= valid_k_;
}

const std::optional<Tail>& ToeplitzElement::tail(int m) const {
  static const std::optional<Tail> none;
  if (!has_mode(m)) return none;
  return tail_[static_cast<std::size_t>(m - mode_min_)];
}

void ToeplitzElement::declare_tail(int m, cplx value, long start) {
  if (!has_mode(m)) throw std::out_of_range("declare_tail: mode outside range");
  if (start < 0 || start > k_max_) throw std::out_of_range("declare_tail: start outside storage");
  const auto i = static_cast<std::size_t>(m - mode_min_);
  for (long k = start; k <= k_max_; ++k) coeff_[i][static_cast<std::size_t>(k)] = value;
  tail_[i] = Tail{start, value};
}

void ToeplitzElement::clear_tail(int m) {
  if (has_mode(m)) tail_[static_cast<std::size_t>(m - mode_min_)].reset();
}

bool ToeplitzElement::all_tails_declared() const {
  return std::all_of(tail_.begin(), tail_.end(), [](const auto& t) { return t.has_value(); });
}

cplx ToeplitzElement::entry(long row, long col) const {
  if (row < 0 || col < 0) return {};
  const long m = row - col;
  if (m < mode_min_ || m > mode_max_) return {};
  return coeff(static_cast<int>(m), std::min(row, col));
}

ToeplitzElement ToeplitzElement::with_modes(int lo, int hi) const {
  ToeplitzElement e(k_max_, std::min(lo, mode_min_), std::max(hi, mode_max_));
  e.valid_k_ = valid_k_;
  for (int m = e.mode_min_; m <= e.mode_max_; ++m) {
    const auto i = static_cast<std::size_t>(m - e.mode_min_);
    if (has_mode(m)) {
      e.coeff_[i] = coeff_[static_cast<std::size_t>(m - mode_min_)];
      e.tail_[i] = tail_[static_cast<std::size_t>(m - mode_min_)];
    } else if (all_tails_declared()) {
      e.tail_[i] = Tail{0, {}};
    }
  }
  return e;
}

ToeplitzElement ToeplitzElement::extended(int new_k_max) const {
  if (new_k_max < k_max_) return truncated(new_k_max);
  ToeplitzElement e(new_k_max, mode_min_, mode_max_);
  for (int m = mode_min_; m <= mode_max_; ++m) {
    const auto i = static_cast<std::size_t>(m - mode_min_);
    for (long k = 0; k <= new_k_max; ++k) e.coeff_[i][static_cast<std::size_t>(k)] = coeff(m, k);
    e.tail_[i] = tail_[i];
  }
  e.valid_k_ = all_tails_declared() ? new_k_max : valid_k_;
  return e;
}

ToeplitzElement ToeplitzElement::truncated(int new_k_max) const {
  if (new_k_max > k_max_) return extended(new_k_max);
  ToeplitzElement e(new_k_max, mode_min_, mode_max_);
  for (int m = mode_min_; m <= mode_max_; ++m) {
    const auto i = static_cast<std::size_t>(m - mode_min_);
    std::copy_n(coeff_[i].begin(), new_k_max + 1, e.coeff_[i].begin());
    if (tail_[i] && tail_[i]->start <= new_k_max) e.tail_[i] = tail_[i];
  }
  e.valid_k_ = std::min(valid_k_, new_k_max);
  return e;
}

ToeplitzElement ToeplitzElement::interior_only() const {
  ToeplitzElement e(k_max_, mode_min_, mode_max_);
  e.valid_k_ = valid_k_;
  for (int m = mode_min_; m <= mode_max_; ++m) {
    const auto i = static_cast<std::size_t>(m - mode_min_);
    for (long k = 0; k <= k_max_; ++k) {
      if (known(m, k)) e.coeff_[i][static_cast<std::size_t>(k)] = coeff_[i][static_cast<std::size_t>(k)];
    }
  }
  return e;
}

double ToeplitzElement::max_abs() const {
  double v = 0.0;
  for (const auto& c : coeff_) {
    for (const auto& x : c) v = std::max(v, std::abs(x));
  }
  return v;
}

namespace {

template <class Op>
ToeplitzElement& combine(ToeplitzElement& self, const ToeplitzElement& o, Op op) {
  if (self.k_max() != o.k_max()) throw std::invalid_argument("ToeplitzElement: k_max mismatch");
  const bool self_exact = self.all_tails_declared();
  const bool o_exact = o.all_tails_declared();
  ToeplitzElement r = self.with_modes(o.mode_min(), o.mode_max());
  for (int m = r.mode_min(); m <= r.mode_max(); ++m) {
    auto dst = r.mode(m);
    for (long k = 0; k <= r.k_max(); ++k) {
      dst[static_cast<std::size_t>(k)] = op(self.coeff(m, k), o.coeff(m, k));
    }
    const auto& ts = self.has_mode(m) ? self.tail(m) : std::optional<Tail>(Tail{0, {}});
    const auto& to = o.has_mode(m) ? o.tail(m) : std::optional<Tail>(Tail{0, {}});
    if (ts && to) {
      r.declare_tail(m, op(ts->value, to->value), std::max(ts->start, to->start));
    } else {
      r.clear_tail(m);
    }
  }
  if (self_exact && o_exact) {
    r.set_valid_k(r.k_max());
  } else if (self_exact) {
    r.set_valid_k(o.valid_k());
  } else if (o_exact) {
    r.set_valid_k(self.valid_k());
  } else {
    r.set_valid_k(std::min(self.valid_k(), o.valid_k()));
  }
  self = std::move(r);
  return self;
}

}  // namespace

ToeplitzElement& ToeplitzElement::operator+=(const ToeplitzElement& o) {
  return combine(*this, o, [](cplx x, cplx y) { return x + y; });
}

ToeplitzElement& ToeplitzElement::operator-=(const ToeplitzElement& o) {
  return combine(*this, o, [](cplx x, cplx y) { return x - y; });
}

ToeplitzElement& ToeplitzElement::operator*=(cplx s) {
  for (auto& c : coeff_) {
    for (auto& x : c) x *= s;
  }
  for (auto& t : tail_) {
    if (t) t->value *= s;
  }
  return *this;
}

ToeplitzElement operator+(ToeplitzElement a, const ToeplitzElement& b) { return a += b; }
ToeplitzElement operator-(ToeplitzElement a, const ToeplitzElement& b) { return a -= b; }
ToeplitzElement operator*(cplx s, ToeplitzElement a) { return a *= s; }

nlohmann::json ToeplitzElement::to_json() const {
  nlohmann::json modes = nlohmann::json::array();
  for (int m = mode_min_; m <= mode_max_; ++m) {
    const auto i = static_cast<std::size_t>(m - mode_min_);
    nlohmann::json c = nlohmann::json::array();
    for (const auto& x : coeff_[i]) c.push_back({x.real(), x.imag()});
    nlohmann::json t = nullptr;
    if (tail_[i]) t = {{"start", tail_[i]->start}, {"re", tail_[i]->value.real()}, {"im", tail_[i]->value.imag()}};
    modes.push_back({{"m", m}, {"coeff", c}, {"tail", t}});
  }
  return {{"K_max", k_max_}, {"valid_k", valid_k_}, {"modes", modes}};
}

ToeplitzElement ToeplitzElement::from_json(const nlohmann::json& j) {
  const int k_max = j.at("K_max").get<int>();
  int lo = 0, hi = 0;
  for (const auto& m : j.at("modes")) {
    lo = std::min(lo, m.at("m").get<int>());
    hi = std::max(hi, m.at("m").get<int>());
  }
  ToeplitzElement e(k_max, lo, hi);
  for (const auto& mj : j.at("modes")) {
    const int m = mj.at("m").get<int>();
    auto dst = e.mode(m);
    const auto& c = mj.at("coeff");
    if (c.size() > dst.size()) throw std::invalid_argument("element JSON: too many coefficients");
    for (std::size_t k = 0; k < c.size(); ++k) {
      dst[k] = c[k].is_array() ? cplx(c[k][0].get<double>(), c[k][1].get<double>()) : cplx(c[k].get<double>(), 0.0);
    }
    if (mj.contains("tail") && !mj["tail"].is_null()) {
      const auto& t = mj["tail"];
      e.declare_tail(m, {t.value("re", 0.0), t.value("im", 0.0)}, t.value("start", 0L));
    }
  }
  e.valid_k_ = j.value("valid_k", k_max);
  return e;
}

BoundaryFunction BoundaryFunction::conj() const {
  BoundaryFunction r;
  for (const auto& [m, c] : modes) r.modes[-m] = std::conj(c);
  return r;
}

double BoundaryFunction::max_abs_diff(const BoundaryFunction& o) const {
  double d = 0.0;
  for (const auto& [m, c] : modes) d = std::max(d, std::abs(c - o[m]));
  for (const auto& [m, c] : o.modes) d = std::max(d, std::abs(c - (*this)[m]));
  return d;
}

double BoundaryFunction::max_abs() const {
  double d = 0.0;
  for (const auto& [m, c] : modes) d = std::max(d, std::abs(c));
  return d;
}

nlohmann::json BoundaryFunction::to_json() const {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& [m, c] : modes) a.push_back({{"m", m}, {"re", c.real()}, {"im", c.imag()}});
  return {{"modes", a}};
}

BoundaryFunction BoundaryFunction::from_json(const nlohmann::json& j) {
  BoundaryFunction f;
  for (const auto& mj : j.at("modes")) {
    f.modes[mj.at("m").get<int>()] += cplx(mj.value("re", 0.0), mj.value("im", 0.0));
  }
  return f;
}

Eigen::MatrixXcd to_matrix(const ToeplitzElement& a, int dim) {
  if (dim < 0 || dim > a.k_max() + 1) throw std::length_error("to_matrix: dim exceeds stored range");
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dim, dim);
  for (int m = a.mode_min(); m <= a.mode_max(); ++m) {
    auto c = a.mode(m);
    for (int j = 0; j < dim; ++j) {
      const int row = m >= 0 ? j + m : j;
      const int col = m >= 0 ? j : j - m;
      if (row >= dim || col >= dim) break;
      M(row, col) = c[static_cast<std::size_t>(j)];
    }
  }
  return M;
}

ToeplitzElement multiply(const ToeplitzElement& a, const ToeplitzElement& b) {
  if (a.k_max() != b.k_max()) throw std::invalid_argument("multiply: k_max mismatch");
  const int K = a.k_max();
  const int spread = -a.mode_min() - b.mode_min() + a.mode_max() + b.mode_max();
  const bool exact = a.all_tails_declared() && b.all_tails_declared();
  constexpr int kInf = std::numeric_limits<int>::max();
  const int va = a.all_tails_declared() ? kInf : a.valid_k();
  const int vb = b.all_tails_declared() ? kInf : b.valid_k();
  const long valid = exact ? K : std::min<long>(K, static_cast<long>(std::min(va, vb)) - spread);
  if (valid < 0) throw std::range_error("multiply: interior validity range is empty");

  ToeplitzElement r(K, a.mode_min() + b.mode_min(), a.mode_max() + b.mode_max());
  for (int m = r.mode_min(); m <= r.mode_max(); ++m) {
    auto dst = r.mode(m);
    for (long j = 0; j <= K; ++j) {
      const long row = j + std::max(m, 0);
      const long col = j + std::max(-m, 0);
      cplx s{};
      for (int m1 = a.mode_min(); m1 <= a.mode_max(); ++m1) {
        const int m2 = m - m1;
        if (!b.has_mode(m2)) continue;
        const long t = row - m1;
        if (t < 0) continue;
        s += a.coeff(m1, std::min(row, t)) * b.coeff(m2, std::min(t, col));
      }
      dst[static_cast<std::size_t>(j)] = s;
    }
  }
  r.set_valid_k(static_cast<int>(valid));
  if (exact) {
    long start = 0;
    for (int m = a.mode_min(); m <= a.mode_max(); ++m) start = std::max(start, a.tail(m)->start);
    for (int m = b.mode_min(); m <= b.mode_max(); ++m) start = std::max(start, b.tail(m)->start);
    start += spread;
    if (start <= K) {
      for (int m = r.mode_min(); m <= r.mode_max(); ++m) r.declare_tail(m, r.mode(m)[static_cast<std::size_t>(start)], start);
    }
  }
  return r;
}

ToeplitzElement adjoint(const ToeplitzElement& a) {
  ToeplitzElement r(a.k_max(), -a.mode_max(), -a.mode_min());
  for (int m = a.mode_min(); m <= a.mode_max(); ++m) {
    auto src = a.mode(m);
    auto dst = r.mode(-m);
    std::transform(src.begin(), src.end(), dst.begin(), [](cplx x) { return std::conj(x); });
    if (const auto& t = a.tail(m)) r.declare_tail(-m, std::conj(t->value), t->start);
  }
  r.set_valid_k(a.valid_k());
  return r;
}

ToeplitzElement power_UB(const WeightPair& w, int n, int k_max) {
  if (n < 0) throw std::domain_error("power_UB: n must be non-negative");
  if (n == 0) return ToeplitzElement::identity(k_max);
  ToeplitzElement e(k_max, 0, n);
  auto g = e.mode(n);
  for (long k = 0; k <= k_max; ++k) {
    double p = 1.0;
    for (int j = 0; j < n; ++j) p *= w.B(k + j);
    g[static_cast<std::size_t>(k)] = p;
  }
  for (int m = 0; m < n; ++m) e.declare_tail(m, {}, 0);
  return e;
}

Restriction restrict_to_boundary(const ToeplitzElement& a, int tail_window) {
  if (tail_window < 1) throw std::invalid_argument("restrict_to_boundary: tail_window must be >= 1");
  Restriction r;
  const long hi = a.valid_k();
  const long lo = std::max<long>(0, hi - tail_window + 1);
  for (int m = a.mode_min(); m <= a.mode_max(); ++m) {
    if (const auto& t = a.tail(m)) {
      r.boundary.modes[m] = t->value;
      continue;
    }
    cplx mean{};
    for (long k = lo; k <= hi; ++k) mean += a.coeff(m, k);
    mean /= static_cast<double>(hi - lo + 1);
    for (long k = lo; k <= hi; ++k) r.variation = std::max(r.variation, std::abs(a.coeff(m, k) - mean));
    r.boundary.modes[m] = mean;
  }
  return r;
}

ToeplitzElement extend_from_boundary(const BoundaryFunction& f, int k_max) {
  int lo = 0, hi = 0;
  for (const auto& [m, c] : f.modes) {
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  ToeplitzElement e(k_max, lo, hi);
  for (int m = lo; m <= hi; ++m) e.declare_tail(m, f[m], 0);
  return e;
}

}  // namespace qdisk
