#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qconcur/concurrence.hpp"
#include "qconcur/povm.hpp"
#include "qconcur/states.hpp"

namespace qconcur {

// One verification row: |actual - expected| <= tolerance.
struct SelfCheck {
  std::string name;
  double expected = 0.0;
  double actual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

namespace detail {

inline void add_check(std::vector<SelfCheck>& out, std::string name, double expected, double actual,
                      double tolerance) {
  const bool pass = std::abs(actual - expected) <= tolerance;
  out.push_back({std::move(name), expected, actual, tolerance, pass});
}

inline ComplexMatrix chain(const std::vector<ComplexMatrix>& fs) {
  ComplexMatrix m = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) m = kron(m, fs[i]);
  return m;
}

}  // namespace detail

// Canonical worked examples and invariant sweeps, evaluated under the given
// normalization policy. Checks that pin a specific normalization (the
// unit-normalization family values) force it explicitly; everything else
// reacts to policy overrides, which is how deliberate mismatches are
// surfaced.
inline std::vector<SelfCheck> run_self_checks(const NormalizationPolicy& policy = {},
                                              std::uint64_t seed = 17) {
  using detail::add_check;
  using detail::chain;
  std::vector<SelfCheck> out;
  const ComplexMatrix x = pauli_x(), y = pauli_y(), i2 = identity2();

  add_check(out, "complement at pi/2 equals sigma_y", 0.0,
            max_abs_diff(single_qubit_complement(kPi / 2.0), y), 1e-15);
  add_check(out, "complement at pi equals sigma_x", 0.0,
            max_abs_diff(single_qubit_complement(kPi), x), 1e-15);
  add_check(out, "POVM quadrature normalization (360 samples)", 0.0,
            povm_normalization_check(360), 1e-12);

  add_check(out, "two-qubit pair operator is sigma_y x sigma_y", 0.0,
            max_abs_diff(epr_pair_operator(2, 1, 2).matrix(), chain({y, y})), 0.0);
  add_check(out, "three-qubit pair operator (1,3)", 0.0,
            max_abs_diff(epr_pair_operator(3, 1, 3).matrix(), chain({y, i2, y})), 0.0);
  add_check(out, "four-qubit pair operator (2,3)", 0.0,
            max_abs_diff(epr_pair_operator(4, 2, 3).matrix(), chain({i2, y, y, i2})), 0.0);
  add_check(out, "three-qubit GHZ operator (1,2)", 0.0,
            max_abs_diff(ghz_full_operator(3, 1, 2).matrix(), chain({y, y, x})), 0.0);
  add_check(out, "three-qubit GHZ operator (2,3)", 0.0,
            max_abs_diff(ghz_full_operator(3, 2, 3).matrix(), chain({x, y, y})), 0.0);
  add_check(out, "four-qubit GHZ operator (2,4)", 0.0,
            max_abs_diff(ghz_full_operator(4, 2, 4).matrix(), chain({x, y, x, y})), 0.0);

  {
    const std::vector<ClassOperator> sub = ghz_sub_operator_set(4);
    const std::vector<ComplexMatrix> expected{
        chain({y, y, x, i2}), chain({y, y, i2, x}), chain({y, i2, y, x}), chain({i2, y, y, x})};
    double dev = sub.size() == expected.size() ? 0.0 : 1.0;
    for (std::size_t i = 0; i < expected.size() && dev == 0.0; ++i)
      dev = std::max(dev, max_abs_diff(sub[i].matrix(), expected[i]));
    add_check(out, "four-qubit sub-GHZ family matches the listing", 0.0, dev, 0.0);
  }

  {
    bool counts_ok = true;
    for (int m = 2; m <= 8; ++m) {
      counts_ok &= w_class_operator_set(m).size() == static_cast<std::size_t>(m * (m - 1) / 2);
      if (m >= 3)
        counts_ok &= ghz_full_operator_set(m).size() == static_cast<std::size_t>(m * (m - 1) / 2);
      if (m >= 4) counts_ok &= ghz_sub_operator_set(m).size() == static_cast<std::size_t>(m);
    }
    add_check(out, "operator counts match the binomials (m = 2..8)", 1.0, counts_ok ? 1.0 : 0.0, 0.0);
  }

  {
    double worst = 0.0;
    for (int m = 2; m <= 6; ++m) {
      std::vector<ClassOperator> all = w_class_operator_set(m);
      if (m >= 3)
        for (ClassOperator& op : ghz_full_operator_set(m)) all.push_back(std::move(op));
      if (m >= 4)
        for (ClassOperator& op : ghz_sub_operator_set(m)) all.push_back(std::move(op));
      for (const ClassOperator& op : all) {
        worst = std::max(worst, max_abs_diff(matmul(op.matrix(), op.matrix()),
                                             ComplexMatrix::identity(op.dim())));
        worst = std::max(worst, hermiticity_deviation(op.matrix()));
      }
    }
    add_check(out, "operators square to identity and are Hermitian (m <= 6)", 0.0, worst, 1e-12);
  }

  add_check(out, "three-qubit W state scores 1", 1.0, w_class_pure(w_state(3), policy).aggregate,
            1e-9);
  {
    NormalizationPolicy unit = policy;
    unit.w_override = 1.0;
    double worst = 0.0;
    for (int m = 2; m <= 8; ++m)
      worst = std::max(worst, std::abs(w_class_pure(w_state(m), unit).aggregate -
                                       std::sqrt(2.0 * (m - 1) / m)));
    add_check(out, "W states at unit normalization score sqrt(2(m-1)/m), m = 2..8", 0.0, worst,
              1e-9);
    add_check(out, "four-qubit W at unit normalization scores sqrt(3/2)",
              std::sqrt(1.5), w_class_pure(w_state(4), unit).aggregate, 1e-9);
  }
  {
    double worst = 0.0;
    for (int m = 2; m <= 8; ++m)
      worst = std::max(worst, std::abs(w_class_pure(w_state(m), policy).aggregate - 1.0));
    add_check(out, "W states score 1 under the active policy, m = 2..8", 0.0, worst, 1e-9);
  }

  add_check(out, "GHZ class of the three-qubit W state is 0", 0.0,
            ghz_class_pure(w_state(3), policy).aggregate, 1e-12);
  add_check(out, "GHZ class of the four-qubit W state is 0", 0.0,
            ghz_class_pure(w_state(4), policy).aggregate, 1e-12);
  add_check(out, "sub-GHZ class of the four-qubit W state is 0", 0.0,
            ghz_sub_class_pure(w_state(4), policy).aggregate, 1e-12);

  {
    double worst = 0.0;
    for (int m = 3; m <= 8; ++m)
      worst = std::max(worst, std::abs(ghz_class_pure(ghz_state(m, +1), policy).aggregate - 1.0));
    add_check(out, "GHZ states score 1 under the active policy, m = 3..8", 0.0, worst, 1e-9);
  }

  {
    // mixtures q GHZ+ and (1-q) GHZ-, on the q >= 1/2 branch where the
    // dominant weight is q: spectrum (q, 1-q, 0...) and value 2q - 1
    double worst_spec = 0.0, worst_val = 0.0;
    for (int k = 0; k <= 10; ++k) {
      const double q = 0.5 + 0.05 * k;
      std::vector<Ensemble::Member> members;
      if (q > 0.0) members.push_back({q, ghz_state(3, +1)});
      if (q < 1.0) members.push_back({1.0 - q, ghz_state(3, -1)});
      if (members.back().weight > 1.0) members.back().weight = 1.0;
      const DensityMatrix rho = densify(Ensemble(std::move(members)));
      const std::vector<ClassOperator> ops = ghz_full_operator_set(3);
      const std::vector<double> lambdas = mixed_lambda_spectrum(rho, ops.front());
      worst_spec = std::max(worst_spec, std::abs(lambdas[0] - q));
      worst_spec = std::max(worst_spec, std::abs(lambdas[1] - (1.0 - q)));
      for (std::size_t n = 2; n < lambdas.size(); ++n)
        worst_spec = std::max(worst_spec, lambdas[n]);
      worst_val = std::max(worst_val, std::abs(mixed_class_concurrence(rho, ops).aggregate -
                                               std::max(0.0, 2.0 * q - 1.0)));
    }
    add_check(out, "GHZ mixture spectrum is (q, 1-q, 0...) for q in [1/2, 1]", 0.0, worst_spec,
              1e-9);
    add_check(out, "GHZ mixture value is max(0, 2q-1) for q in [1/2, 1]", 0.0, worst_val, 1e-9);
  }

  {
    // (GHZ3 on qubits 1..3) padded with |1>: one sub-GHZ operator fires
    std::vector<Complex> amps(16, Complex{0.0, 0.0});
    amps[0b0000] = 1.0 / std::sqrt(2.0);
    amps[0b1110] = 1.0 / std::sqrt(2.0);
    add_check(out, "padded GHZ3 sub-class value is 1/2", 0.5,
              ghz_sub_class_pure(PureState(4, std::move(amps)), policy).aggregate, 1e-9);
  }

  {
    std::vector<Complex> amps(4, Complex{0.0, 0.0});
    amps[0] = amps[3] = 1.0 / std::sqrt(2.0);
    const DensityMatrix bell = to_density(PureState(2, std::move(amps)));
    add_check(out, "Bell projector Wootters concurrence is 1", 1.0, wootters_concurrence_2q(bell),
              1e-9);

    double worst = 0.0;
    const ComplexMatrix proj = bell.matrix;
    for (double p = 0.0; p <= 1.0 + 1e-12; p += 0.1) {
      ComplexMatrix rho = Complex{p, 0.0} * proj +
                          Complex{(1.0 - p) / 4.0, 0.0} * ComplexMatrix::identity(4);
      worst = std::max(worst, std::abs(wootters_concurrence_2q(DensityMatrix(2, std::move(rho))) -
                                       std::max(0.0, (3.0 * p - 1.0) / 2.0)));
    }
    add_check(out, "Werner family matches max(0, (3p-1)/2)", 0.0, worst, 1e-9);
  }

  {
    const double theta = 0.5 * std::asin(0.6);
    std::vector<Complex> amps(4, Complex{0.0, 0.0});
    amps[0] = std::cos(theta);
    amps[3] = std::sin(theta);
    add_check(out, "entanglement of formation at C = 0.6", 0.4690,
              entanglement_of_formation_2q(to_density(PureState(2, std::move(amps)))), 1e-4);
  }

  {
    Rng rng(seed);
    const ComplexMatrix y2 = pauli_y();
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      ComplexMatrix a(2);
      for (Complex& z : a.entries) z = rng.complex_gaussian();
      const Complex det = a.at(0, 0) * a.at(1, 1) - a.at(0, 1) * a.at(1, 0);
      if (std::abs(det) < 1e-3) continue;
      const Complex s = std::sqrt(det);
      for (Complex& z : a.entries) z /= s;
      worst = std::max(worst, max_abs_diff(matmul(matmul(a, y2), transpose(a)), y2));
    }
    add_check(out, "determinant-one transforms fix sigma_y (100 samples)", 0.0, worst, 1e-9);
  }

  {
    Rng rng(Rng::derive(seed, 1));
    std::vector<std::array<Complex, 2>> locals;
    for (int j = 0; j < 3; ++j) {
      std::array<Complex, 2> l{rng.complex_gaussian(), rng.complex_gaussian()};
      const double n = std::sqrt(std::norm(l[0]) + std::norm(l[1]));
      l[0] /= n;
      l[1] /= n;
      locals.push_back(l);
    }
    const PureState sep = product_state(locals);
    const double worst = std::max(w_class_pure(sep, policy).aggregate,
                                  ghz_class_pure(sep, policy).aggregate);
    add_check(out, "random product state scores 0 in every class", 0.0, worst, 1e-9);
  }

  return out;
}

}  // namespace qconcur
