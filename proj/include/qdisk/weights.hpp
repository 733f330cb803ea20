#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qdisk/report.hpp"

namespace qdisk {

/// Parameters of the weighted-shift realisation of the quantum disk.
struct QuantumDiskParams {
  double mu = 1.0;
  double scale = 2.0;
};

/// Explicit tabulated weights; evaluation outside the table is an error.
struct TableParams {
  std::vector<double> A;
  std::vector<double> B;
};

/// The pair of arithmetic functions (A, B) defining D(a) = A(K)[U B(K), a].
///
/// A(k) > 0 is the unbounded weight whose reciprocal weights the Hilbert
/// space; B(k) in (0, 1) is the strictly increasing shift modulus. The
/// convention B(-1) = 0 is built into B().
class WeightPair {
 public:
  static WeightPair quantum_disk(double mu, double scale = 2.0);
  static WeightPair table(std::vector<double> A, std::vector<double> B);
  /// Diagnostic mode: no positivity or monotonicity validation.
  static WeightPair table_unchecked(std::vector<double> A, std::vector<double> B);

  double A(long k) const;
  double inv_A(long k) const { return 1.0 / A(k); }
  double B(long k) const;

  /// Largest k at which A(k) and B(k) can be evaluated (none for closed forms).
  std::optional<long> max_k() const;

  /// Exact value of sum_{k > K} 1/A(k) when a closed form exists.
  std::optional<double> tail_sum_inv_A(long K) const;
  /// Analytic upper bound 1/(scale * mu * K) on the same tail (quantum disk).
  std::optional<double> tail_bound_inv_A(long K) const;

  /// Partial sum sum_{k <= K} 1/A(k).
  double partial_sum_inv_A(long K) const;

  bool is_quantum_disk() const { return std::holds_alternative<QuantumDiskParams>(params_); }
  const QuantumDiskParams* quantum_disk_params() const {
    return std::get_if<QuantumDiskParams>(&params_);
  }
  std::string describe() const;

  nlohmann::json to_json() const;
  static WeightPair from_json(const nlohmann::json& j);

 private:
  explicit WeightPair(std::variant<QuantumDiskParams, TableParams> p) : params_(std::move(p)) {}
  std::variant<QuantumDiskParams, TableParams> params_;
};

/// Radial weight F(rho) of the commutative disk operator F(rho) d/dzbar.
class ClassicalWeight {
 public:
  /// The canonical choice F = 2.
  ClassicalWeight();
  /// Throws std::domain_error unless F > 0 on [0, 1] (sampled) and F(1) = 2.
  explicit ClassicalWeight(std::function<double(double)> F);

  double operator()(double rho) const { return F_(rho); }

 private:
  std::function<double(double)> F_;
};

/// Checks positivity/summability, monotonicity and the two normalisation
/// limits of the weight conditions over k <= k_max. Failures are recorded in
/// the report. Requires k_max >= 16.
Report check_conditions(const WeightPair& w, long k_max, double tol = 1e-2);

/// The four telescoped limits A(k+1)(B(k)-B(k+n)), A(k)(B(k)-B(k+n)),
/// A(k+n+1)(B(k+n)-B(k)), A(k+n)(B(k+n)-B(k)) evaluated at each probe k.
Report limit_diagnostics(const WeightPair& w, int n, const std::vector<long>& k_probe);

}  // namespace qdisk
