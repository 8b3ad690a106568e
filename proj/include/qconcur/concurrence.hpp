#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qconcur/complex_matrix.hpp"
#include "qconcur/common.hpp"
#include "qconcur/hermitian_eigen.hpp"
#include "qconcur/povm.hpp"
#include "qconcur/states.hpp"

namespace qconcur {

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Per-class scale factors. The defaults make each canonical state score
// exactly 1: W^m at m/(2(m-1)) (which is 3/4 at m = 3), GHZ^m at 1/C(m,2),
// and the sub-GHZ family at 1/C(m,m-1). Each is overridable.
struct NormalizationPolicy {
  std::optional<double> w_override;
  std::optional<double> ghz_override;
  std::optional<double> ghz_sub_override;

  double w_constant(int m) const {
    const double v = w_override ? *w_override : m / (2.0 * (m - 1));
    return checked(v, "w");
  }
  double ghz_constant(int m) const {
    const double v = ghz_override ? *ghz_override : 1.0 / binomial(m, 2);
    return checked(v, "ghz");
  }
  double ghz_sub_constant(int m) const {
    const double v = ghz_sub_override ? *ghz_sub_override : 1.0 / binomial(m, m - 1);
    return checked(v, "ghz_sub");
  }

 private:
  static double checked(double v, const char* which) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw ContractViolation(std::string("NormalizationPolicy: ") + which +
                              " constant must be positive and finite");
    return v;
  }
};

enum class AggregationRule { RootSumSquares, MaxOverOperators };

inline const char* aggregation_rule_name(AggregationRule r) {
  return r == AggregationRule::RootSumSquares ? "root_sum_squares" : "max_over_operators";
}

struct OptimizerInfo {
  std::uint64_t seed = 0;
  int restarts = 0;
  int iterations = 0;
  std::vector<double> best_angles;  // 3 per qubit: theta, phi, lambda
};

// One class evaluation: per-operator raw values plus the scalar aggregate.
// For the pure-state classes the per-operator entries are the unscaled
// squared overlaps and the aggregate applies the normalization once; for the
// mixed pipeline the entries are the per-operator max(0, ...) values and the
// aggregate is their maximum.
struct ConcurrenceReport {
  std::string class_name;
  ClassTag class_tag = ClassTag::EprPair;
  std::vector<std::pair<std::vector<int>, double>> per_operator;
  double normalization_used = 1.0;
  AggregationRule aggregation_rule = AggregationRule::RootSumSquares;
  double aggregate = 0.0;
  bool heuristic = false;
  std::optional<OptimizerInfo> optimizer;
};

// |<Psi| Delta~ |Psi*>|^2. In [0, 1] for unit-norm input because every class
// operator is a Hermitian involution.
inline double overlap_magnitude_sq(const PureState& psi, const ClassOperator& op) {
  if (op.qubit_count != psi.qubit_count)
    throw ContractViolation("overlap_magnitude_sq: operator acts on " +
                            std::to_string(op.qubit_count) + " qubits, state has " +
                            std::to_string(psi.qubit_count));
  std::vector<Complex> conj_psi(psi.amplitudes.size());
  for (std::size_t k = 0; k < conj_psi.size(); ++k) conj_psi[k] = std::conj(psi.amplitudes[k]);
  const std::vector<Complex> flipped = matvec(op.matrix(), conj_psi);
  return std::norm(inner(psi.amplitudes, flipped));
}

namespace detail {

inline ConcurrenceReport pure_class_report(const PureState& psi,
                                           const std::vector<ClassOperator>& ops,
                                           double normalization, std::string name,
                                           ClassTag tag) {
  ConcurrenceReport report;
  report.class_name = std::move(name);
  report.class_tag = tag;
  report.normalization_used = normalization;
  report.aggregation_rule = AggregationRule::RootSumSquares;
  double sum = 0.0;
  for (const ClassOperator& op : ops) {
    const double v = overlap_magnitude_sq(psi, op);
    report.per_operator.emplace_back(op.acting_indices, v);
    sum += v;
  }
  report.aggregate = std::sqrt(normalization * sum);
  return report;
}

}  // namespace detail

// W^m class value: sqrt(N_w(m) * sum over the C(m,2) pair operators of the
// squared overlaps).
inline ConcurrenceReport w_class_pure(const PureState& psi, const NormalizationPolicy& policy = {}) {
  if (psi.qubit_count < 2) throw ContractViolation("w_class_pure: need m >= 2");
  return detail::pure_class_report(psi, w_class_operator_set(psi.qubit_count),
                                   policy.w_constant(psi.qubit_count), "W", ClassTag::EprPair);
}

inline ConcurrenceReport ghz_class_pure(const PureState& psi, const NormalizationPolicy& policy = {}) {
  if (psi.qubit_count < 3) throw ContractViolation("ghz_class_pure: need m >= 3");
  return detail::pure_class_report(psi, ghz_full_operator_set(psi.qubit_count),
                                   policy.ghz_constant(psi.qubit_count), "GHZ", ClassTag::GhzFull);
}

inline ConcurrenceReport ghz_sub_class_pure(const PureState& psi,
                                            const NormalizationPolicy& policy = {}) {
  if (psi.qubit_count < 4) throw ContractViolation("ghz_sub_class_pure: need m >= 4");
  return detail::pure_class_report(psi, ghz_sub_operator_set(psi.qubit_count),
                                   policy.ghz_sub_constant(psi.qubit_count), "GHZ_SUB",
                                   ClassTag::GhzSub);
}

// Square roots of the eigenvalues of rho * rho~ in descending order, with
// rho~ = Delta~ rho* Delta~. Computed from the Hermitian conjugation
// sqrt(rho) rho~ sqrt(rho), which shares the rho rho~ spectrum because both
// factors are PSD.
inline std::vector<double> mixed_lambda_spectrum(const DensityMatrix& rho, const ClassOperator& op) {
  if (op.qubit_count != rho.qubit_count)
    throw ContractViolation("mixed_lambda_spectrum: operator acts on " +
                            std::to_string(op.qubit_count) + " qubits, state has " +
                            std::to_string(rho.qubit_count));
  const ComplexMatrix& x = op.matrix();
  const ComplexMatrix rho_tilde = matmul(matmul(x, conjugate(rho.matrix)), x);
  const ComplexMatrix root = psd_sqrt(rho.matrix);
  const ComplexMatrix h = matmul(matmul(root, rho_tilde), root);
  std::vector<double> lambdas = hermitian_eigenvalues(h);
  const double floor = std::max(lambdas.front(), 0.0) * tol::kRelativeRank;
  for (double& v : lambdas) v = v <= floor ? 0.0 : std::sqrt(v);
  return lambdas;  // sqrt preserves the descending order
}

// Per-operator value max(0, lambda_1 - sum_{n>1} lambda_n); the scalar
// aggregate is the maximum over the operator set (any nonzero pair already
// witnesses the class).
inline ConcurrenceReport mixed_class_concurrence(const DensityMatrix& rho,
                                                 std::span<const ClassOperator> ops) {
  if (ops.empty()) throw ContractViolation("mixed_class_concurrence: empty operator list");
  ConcurrenceReport report;
  report.class_name = "MIXED";
  report.class_tag = ops.front().class_tag;
  report.normalization_used = 1.0;
  report.aggregation_rule = AggregationRule::MaxOverOperators;
  double best = 0.0;
  for (const ClassOperator& op : ops) {
    const std::vector<double> lambdas = mixed_lambda_spectrum(rho, op);
    double rest = 0.0;
    for (std::size_t n = 1; n < lambdas.size(); ++n) rest += lambdas[n];
    const double value = std::max(0.0, lambdas.front() - rest);
    report.per_operator.emplace_back(op.acting_indices, value);
    best = std::max(best, value);
  }
  report.aggregate = best;
  return report;
}

inline ConcurrenceReport mixed_class_concurrence(const DensityMatrix& rho,
                                                 const std::vector<ClassOperator>& ops) {
  return mixed_class_concurrence(rho, std::span<const ClassOperator>(ops));
}

// Named two-qubit reference path: the mixed pipeline with the single
// sigma_y (x) sigma_y operator.
inline double wootters_concurrence_2q(const DensityMatrix& rho) {
  if (rho.qubit_count != 2) throw ContractViolation("wootters_concurrence_2q: need m = 2");
  const std::vector<ClassOperator> ops{epr_pair_operator(2, 1, 2)};
  return mixed_class_concurrence(rho, ops).aggregate;
}

inline double binary_entropy(double x) {
  double h = 0.0;
  if (x > 0.0) h -= x * std::log2(x);
  if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
  return h;
}

// E_F = H((1 + sqrt(1 - C^2))/2) with H the binary Shannon entropy.
inline double entanglement_of_formation_2q(const DensityMatrix& rho) {
  if (rho.qubit_count != 2) throw ContractViolation("entanglement_of_formation_2q: need m = 2");
  const double c = wootters_concurrence_2q(rho);
  const double arg = std::max(0.0, 1.0 - c * c);
  return binary_entropy(0.5 * (1.0 + std::sqrt(arg)));
}

// Root-sum-square of the class aggregates (W, GHZ, and the sub-GHZ family
// when m >= 4). A heuristic combination, not one of the per-class measures.
inline double overall_concurrence(const PureState& psi, const NormalizationPolicy& policy = {}) {
  if (psi.qubit_count < 3) throw ContractViolation("overall_concurrence: need m >= 3");
  const double w = w_class_pure(psi, policy).aggregate;
  const double g = ghz_class_pure(psi, policy).aggregate;
  double sum = w * w + g * g;
  if (psi.qubit_count >= 4) {
    const double s = ghz_sub_class_pure(psi, policy).aggregate;
    sum += s * s;
  }
  return std::sqrt(sum);
}

}  // namespace qconcur
