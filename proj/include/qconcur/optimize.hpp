#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "qconcur/common.hpp"
#include "qconcur/complex_matrix.hpp"
#include "qconcur/concurrence.hpp"
#include "qconcur/states.hpp"

namespace qconcur {

// U = U_1 (x) ... (x) U_m with each factor unitary.
struct LocalUnitary {
  int qubit_count = 0;
  std::vector<ComplexMatrix> factors;

  void validate() const {
    if (static_cast<int>(factors.size()) != qubit_count)
      throw ContractViolation("LocalUnitary: one 2x2 factor per qubit required");
    for (const ComplexMatrix& u : factors) {
      if (u.dim != 2) throw ContractViolation("LocalUnitary: factors must be 2x2");
      const double dev = max_abs_diff(matmul(dagger(u), u), ComplexMatrix::identity(2));
      if (dev > tol::kUnitary)
        throw ContractViolation("LocalUnitary: factor deviates from unitarity by " +
                                std::to_string(dev));
    }
  }
};

// Three-angle single-qubit unitary (global phase dropped; it cancels in the
// overlap magnitude):
//   [ cos(t/2)            -e^{i lam} sin(t/2)      ]
//   [ e^{i phi} sin(t/2)   e^{i(phi+lam)} cos(t/2) ]
inline ComplexMatrix unitary_from_angles(double theta, double phi, double lambda) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  ComplexMatrix u(2);
  u.at(0, 0) = c;
  u.at(0, 1) = -std::polar(s, lambda);
  u.at(1, 0) = std::polar(s, phi);
  u.at(1, 1) = std::polar(c, phi + lambda);
  return u;
}

// Applies a 2x2 gate to one qubit without building the full Kronecker matrix.
inline void apply_single_qubit_gate(std::vector<Complex>& amps, int qubit_count, int site,
                                    const ComplexMatrix& u) {
  const int stride = 1 << (qubit_count - site);
  const int dim = 1 << qubit_count;
  for (int base = 0; base < dim; base += 2 * stride)
    for (int off = 0; off < stride; ++off) {
      Complex& a0 = amps[static_cast<std::size_t>(base + off)];
      Complex& a1 = amps[static_cast<std::size_t>(base + off + stride)];
      const Complex b0 = u.at(0, 0) * a0 + u.at(0, 1) * a1;
      const Complex b1 = u.at(1, 0) * a0 + u.at(1, 1) * a1;
      a0 = b0;
      a1 = b1;
    }
}

inline PureState apply_local_unitary(const PureState& psi, const LocalUnitary& lu) {
  if (lu.qubit_count != psi.qubit_count)
    throw ContractViolation("apply_local_unitary: qubit count mismatch");
  lu.validate();
  std::vector<Complex> amps = psi.amplitudes;
  for (int site = 1; site <= psi.qubit_count; ++site)
    apply_single_qubit_gate(amps, psi.qubit_count, site, lu.factors[static_cast<std::size_t>(site - 1)]);
  return PureState(psi.qubit_count, std::move(amps));
}

struct OptimizeBudget {
  int restarts = 32;
  int iterations = 200;  // coordinate line searches per restart, round-robin
  std::uint64_t seed = 0x9c0ffee1u;
};

namespace detail {

inline LocalUnitary unitary_from_angle_vector(int m, const std::vector<double>& angles) {
  LocalUnitary lu;
  lu.qubit_count = m;
  for (int j = 0; j < m; ++j)
    lu.factors.push_back(unitary_from_angles(angles[static_cast<std::size_t>(3 * j)],
                                             angles[static_cast<std::size_t>(3 * j + 1)],
                                             angles[static_cast<std::size_t>(3 * j + 2)]));
  return lu;
}

template <typename Objective>
inline double golden_section_max(Objective&& f, double lo, double hi, int evals) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int k = 0; k < evals; ++k) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  return f1 > f2 ? x1 : x2;
}

}  // namespace detail

// Maximizes the GHZ^m class value of (U_1 (x) ... (x) U_m)|psi> by random
// restarts refined with round-robin coordinate golden-section searches over
// the 3m angles. Restart 0 starts from the identity, so the result is never
// below the unoptimized value. Deterministic for a given budget seed; each
// restart draws from an independently derived stream.
inline std::pair<ConcurrenceReport, LocalUnitary> optimize_ghz_local_unitaries(
    const PureState& psi, const NormalizationPolicy& policy = {}, const OptimizeBudget& budget = {}) {
  if (psi.qubit_count < 3) throw ContractViolation("optimize_ghz_local_unitaries: need m >= 3");
  if (budget.restarts < 1) throw ContractViolation("optimize_ghz_local_unitaries: need restarts >= 1");
  const int m = psi.qubit_count;
  const int n_angles = 3 * m;
  const std::vector<ClassOperator> ops = ghz_full_operator_set(m);
  const double norm_const = policy.ghz_constant(m);

  const auto objective = [&](const std::vector<double>& angles) {
    std::vector<Complex> amps = psi.amplitudes;
    for (int j = 0; j < m; ++j)
      apply_single_qubit_gate(amps, m, j + 1,
                              unitary_from_angles(angles[static_cast<std::size_t>(3 * j)],
                                                  angles[static_cast<std::size_t>(3 * j + 1)],
                                                  angles[static_cast<std::size_t>(3 * j + 2)]));
    std::vector<Complex> conj_amps(amps.size());
    for (std::size_t k = 0; k < amps.size(); ++k) conj_amps[k] = std::conj(amps[k]);
    double sum = 0.0;
    for (const ClassOperator& op : ops)
      sum += std::norm(inner(amps, matvec(op.matrix(), conj_amps)));
    return std::sqrt(norm_const * sum);
  };

  std::vector<double> best_angles(static_cast<std::size_t>(n_angles), 0.0);
  double best_value = objective(best_angles);

  for (int r = 0; r < budget.restarts; ++r) {
    Rng rng(Rng::derive(budget.seed, static_cast<std::uint64_t>(r)));
    std::vector<double> angles(static_cast<std::size_t>(n_angles), 0.0);
    if (r > 0)
      for (int k = 0; k < n_angles; ++k)
        angles[static_cast<std::size_t>(k)] =
            (k % 3 == 0) ? rng.uniform(0.0, kPi) : rng.uniform(0.0, 2.0 * kPi);

    double span = 0.8;
    for (int it = 0; it < budget.iterations; ++it) {
      const int c = it % n_angles;
      const double center = angles[static_cast<std::size_t>(c)];
      angles[static_cast<std::size_t>(c)] = detail::golden_section_max(
          [&](double x) {
            std::vector<double> probe = angles;
            probe[static_cast<std::size_t>(c)] = x;
            return objective(probe);
          },
          center - span, center + span, 14);
      if (c == n_angles - 1) span = std::max(span * 0.6, 1e-6);
    }

    const double value = objective(angles);
    if (value > best_value) {
      best_value = value;
      best_angles = angles;
    }
  }

  LocalUnitary lu = detail::unitary_from_angle_vector(m, best_angles);
  ConcurrenceReport report = ghz_class_pure(apply_local_unitary(psi, lu), policy);
  report.optimizer = OptimizerInfo{budget.seed, budget.restarts, budget.iterations, best_angles};
  return {std::move(report), std::move(lu)};
}

}  // namespace qconcur
