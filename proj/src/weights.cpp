#include "qdisk/weights.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qdisk {

namespace {

void validate_table(const TableParams& t) {
  if (t.A.empty() || t.A.size() != t.B.size()) {
    throw std::invalid_argument("weight table: A and B must be non-empty and of equal length");
  }
  for (std::size_t k = 0; k < t.A.size(); ++k) {
    if (!(t.A[k] > 0.0)) throw std::invalid_argument("weight table: A(k) must be positive");
    if (!(t.B[k] > 0.0) || !(t.B[k] < 1.0)) {
      throw std::invalid_argument("weight table: B(k) must lie in (0, 1)");
    }
    if (k > 0 && !(t.B[k] > t.B[k - 1])) {
      throw std::invalid_argument("weight table: B must be strictly increasing");
    }
  }
}

}  // namespace

WeightPair WeightPair::quantum_disk(double mu, double scale) {
  if (!(mu > 0.0 && mu <= 1.0)) throw std::domain_error("quantum_disk_weights: mu must lie in (0, 1]");
  if (!(scale > 0.0)) throw std::domain_error("quantum_disk_weights: scale must be positive");
  return WeightPair(QuantumDiskParams{mu, scale});
}

WeightPair WeightPair::table(std::vector<double> A, std::vector<double> B) {
  TableParams t{std::move(A), std::move(B)};
  validate_table(t);
  return WeightPair(std::move(t));
}

WeightPair WeightPair::table_unchecked(std::vector<double> A, std::vector<double> B) {
  if (A.empty() || A.size() != B.size()) {
    throw std::invalid_argument("weight table: A and B must be non-empty and of equal length");
  }
  return WeightPair(TableParams{std::move(A), std::move(B)});
}

double WeightPair::A(long k) const {
  if (k < 0) throw std::out_of_range("A(k) evaluated at negative k");
  if (const auto* q = std::get_if<QuantumDiskParams>(&params_)) {
    const double kd = static_cast<double>(k);
    return q->scale * (1.0 + kd * q->mu) * (1.0 + (kd + 1.0) * q->mu) / q->mu;
  }
  const auto& t = std::get<TableParams>(params_);
  if (static_cast<std::size_t>(k) >= t.A.size()) throw std::out_of_range("A(k) beyond weight table");
  return t.A[static_cast<std::size_t>(k)];
}

double WeightPair::B(long k) const {
  if (k == -1) return 0.0;
  if (k < -1) throw std::out_of_range("B(k) evaluated below k = -1");
  if (const auto* q = std::get_if<QuantumDiskParams>(&params_)) {
    const double x = (static_cast<double>(k) + 1.0) * q->mu;
    return std::sqrt(x / (1.0 + x));
  }
  const auto& t = std::get<TableParams>(params_);
  if (static_cast<std::size_t>(k) >= t.B.size()) throw std::out_of_range("B(k) beyond weight table");
  return t.B[static_cast<std::size_t>(k)];
}

std::optional<long> WeightPair::max_k() const {
  if (const auto* t = std::get_if<TableParams>(&params_)) return static_cast<long>(t->A.size()) - 1;
  return std::nullopt;
}

std::optional<double> WeightPair::tail_sum_inv_A(long K) const {
  // 1/A(k) = (1/scale) [1/(1+k mu) - 1/(1+(k+1) mu)] telescopes.
  if (const auto* q = std::get_if<QuantumDiskParams>(&params_)) {
    return 1.0 / (q->scale * (1.0 + (static_cast<double>(K) + 1.0) * q->mu));
  }
  return std::nullopt;
}

std::optional<double> WeightPair::tail_bound_inv_A(long K) const {
  if (const auto* q = std::get_if<QuantumDiskParams>(&params_)) {
    if (K <= 0) return tail_sum_inv_A(K);
    return 1.0 / (q->scale * q->mu * static_cast<double>(K));
  }
  return std::nullopt;
}

double WeightPair::partial_sum_inv_A(long K) const {
  if (const auto* q = std::get_if<QuantumDiskParams>(&params_)) {
    return (1.0 - 1.0 / (1.0 + (static_cast<double>(K) + 1.0) * q->mu)) / q->scale;
  }
  double s = 0.0;
  for (long k = 0; k <= K; ++k) s += inv_A(k);
  return s;
}

std::string WeightPair::describe() const {
  std::ostringstream os;
  if (const auto* q = std::get_if<QuantumDiskParams>(&params_)) {
    os << "quantum_disk(mu=" << q->mu << ", scale=" << q->scale << ")";
  } else {
    os << "table(" << std::get<TableParams>(params_).A.size() << " entries)";
  }
  return os.str();
}

nlohmann::json WeightPair::to_json() const {
  if (const auto* q = std::get_if<QuantumDiskParams>(&params_)) {
    return {{"kind", "quantum_disk"}, {"mu", q->mu}, {"scale", q->scale}};
  }
  const auto& t = std::get<TableParams>(params_);
  return {{"kind", "table"}, {"A", t.A}, {"B", t.B}};
}

WeightPair WeightPair::from_json(const nlohmann::json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "quantum_disk") {
    return quantum_disk(j.at("mu").get<double>(), j.value("scale", 2.0));
  }
  if (kind == "table") {
    return table(j.at("A").get<std::vector<double>>(), j.at("B").get<std::vector<double>>());
  }
  throw std::invalid_argument("unknown weight kind: " + kind);
}

ClassicalWeight::ClassicalWeight() : F_([](double) { return 2.0; }) {}

ClassicalWeight::ClassicalWeight(std::function<double(double)> F) : F_(std::move(F)) {
  for (int i = 0; i <= 256; ++i) {
    if (!(F_(i / 256.0) > 0.0)) throw std::domain_error("classical weight: F must be positive on [0,1]");
  }
  if (std::abs(F_(1.0) - 2.0) > 1e-12) throw std::domain_error("classical weight: F(1) must equal 2");
}

Report check_conditions(const WeightPair& w, long k_max, double tol) {
  if (k_max < 16) throw std::invalid_argument("check_conditions: k_max must be at least 16");

  Report r;
  r.check = "weight_conditions";
  r.anchor = "Ddef";
  r.params = {{"weights", w.to_json()}, {"k_max", k_max}, {"tol", tol}};

  // Condition 3 needs one step beyond k.
  long k_eval = k_max;
  if (auto mk = w.max_k()) k_eval = std::min(k_eval, *mk - 1);
  if (k_eval < 16) throw std::invalid_argument("check_conditions: weight table too short");
  r.params["k_evaluated"] = k_eval;

  bool a_pos = true, b_pos = true, b_inc = true, b_lt1 = true;
  double partial = 0.0, partial_decade = 0.0;
  const long decade = k_eval / 10;
  for (long k = 0; k <= k_eval; ++k) {
    const double a = w.A(k), b = w.B(k);
    a_pos = a_pos && a > 0.0;
    b_pos = b_pos && b > 0.0;
    b_lt1 = b_lt1 && b < 1.0;
    if (k > 0) b_inc = b_inc && b > w.B(k - 1);
    if (a > 0.0) partial += 1.0 / a;
    if (k == decade) partial_decade = partial;
  }
  const double increment = partial - partial_decade;
  const bool cauchy = a_pos && increment < tol;

  r.observed["A_positive"] = a_pos;
  r.observed["B_positive"] = b_pos;
  r.observed["B_increasing"] = b_inc;
  r.observed["B_below_one"] = b_lt1;
  r.observed["partial_sum_inv_A"] = partial;
  r.observed["last_decade_increment"] = increment;
  r.observed["summability_cauchy"] = cauchy;
  if (auto t = w.tail_sum_inv_A(k_eval)) r.observed["tail_sum_inv_A_exact"] = *t;
  if (auto t = w.tail_bound_inv_A(k_eval)) r.observed["tail_bound_inv_A"] = *t;

  nlohmann::json samples = nlohmann::json::array();
  std::vector<long> ks;
  for (long k = 1; k < k_eval; k *= 2) ks.push_back(k);
  ks.push_back(k_eval);
  double prev_err = std::numeric_limits<double>::infinity();
  bool decreasing = true;
  double last_shift = 0.0, last_ratio = 0.0;
  for (long k : ks) {
    const double shift_limit = w.A(k) * (w.B(k + 1) - w.B(k));
    const double ratio = w.A(k + 1) / w.A(k);
    const double err = std::abs(shift_limit - 1.0);
    // Ignore the first few samples: the sequence is only eventually monotone.
    if (k >= 16 && err > prev_err) decreasing = false;
    if (k >= 16) prev_err = err;
    samples.push_back({{"k", k}, {"A_dB", shift_limit}, {"A_ratio", ratio}});
    last_shift = shift_limit;
    last_ratio = ratio;
  }
  const double dist_shift = std::abs(last_shift - 1.0);
  const double dist_ratio = std::abs(last_ratio - 1.0);
  r.observed["condition3_samples"] = samples;
  r.observed["condition3_A_dB_limit_estimate"] = last_shift;
  r.observed["condition3_A_dB_distance"] = dist_shift;
  r.observed["condition3_A_ratio_distance"] = dist_ratio;
  r.observed["condition3_distance_decreasing"] = decreasing;

  const bool cond1 = a_pos && cauchy;
  const bool cond2 = b_pos && b_inc && b_lt1;
  const bool cond3 = dist_shift < tol && dist_ratio < tol;
  r.observed["condition1"] = cond1;
  r.observed["condition2"] = cond2;
  r.observed["condition3"] = cond3;
  r.expected = {{"condition1", true}, {"condition2", true}, {"condition3", true},
                {"A_dB_limit", 1.0},  {"A_ratio_limit", 1.0}};
  r.pass = cond1 && cond2 && cond3;
  return r;
}

Report limit_diagnostics(const WeightPair& w, int n, const std::vector<long>& k_probe) {
  if (n < 0) throw std::domain_error("limit_diagnostics: n must be non-negative");
  Report r;
  r.check = "limit_diagnostics";
  r.anchor = "limitlemma";
  r.params = {{"weights", w.to_json()}, {"n", n}, {"probes", k_probe}};

  const double nd = n;
  // Since B increases, the first pair tends to -n and the second to +n. The
  // printed statement lists (n, -n, -n, n); both are kept in the report.
  const std::vector<double> limit{-nd, -nd, nd, nd};
  const std::vector<double> as_printed{nd, -nd, -nd, nd};
  std::vector<std::vector<double>> values(4), errors(4);
  for (long k : k_probe) {
    if (k < 0) throw std::domain_error("limit_diagnostics: probes must be non-negative");
    if (auto mk = w.max_k(); mk && k + n + 1 > *mk) {
      throw std::out_of_range("limit_diagnostics: probe beyond weight range");
    }
    const double d = w.B(k) - w.B(k + n);
    const double s[4] = {w.A(k + 1) * d, w.A(k) * d, -w.A(k + n + 1) * d, -w.A(k + n) * d};
    for (int i = 0; i < 4; ++i) {
      values[i].push_back(s[i]);
      errors[i].push_back(std::abs(s[i] - limit[i]));
    }
  }
  const char* names[4] = {"A(k+1)(B(k)-B(k+n))", "A(k)(B(k)-B(k+n))", "A(k+n+1)(B(k+n)-B(k))",
                          "A(k+n)(B(k+n)-B(k))"};
  nlohmann::json seqs = nlohmann::json::array();
  bool decreasing = true;
  for (int i = 0; i < 4; ++i) {
    for (std::size_t p = 1; p < errors[i].size(); ++p) {
      if (n > 0 && !(errors[i][p] < errors[i][p - 1])) decreasing = false;
    }
    seqs.push_back({{"sequence", names[i]},
                    {"values", values[i]},
                    {"limit", limit[i]},
                    {"target_as_printed", as_printed[i]},
                    {"errors", errors[i]}});
  }
  r.observed["sequences"] = seqs;
  r.observed["errors_decreasing"] = decreasing;
  r.expected = {{"limits", limit}, {"targets_as_printed", as_printed}};
  r.pass = decreasing;
  return r;
}

}  // namespace qdisk
