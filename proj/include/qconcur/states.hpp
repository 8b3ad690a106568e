#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qconcur/complex_matrix.hpp"
#include "qconcur/common.hpp"
#include "qconcur/hermitian_eigen.hpp"

namespace qconcur {

// |Psi> as 2^m amplitudes, qubit 1 being the most significant index bit.
// Construction validates unit norm; zero or badly scaled vectors are
// rejected rather than renormalized.
struct PureState {
  int qubit_count = 0;
  std::vector<Complex> amplitudes;

  PureState(int m, std::vector<Complex> amps) : qubit_count(m), amplitudes(std::move(amps)) {
    if (m < 1) throw ContractViolation("PureState: qubit_count must be >= 1");
    if ((1LL << m) > kMaxOperatorDim)
      throw CapacityError("PureState: 2^" + std::to_string(m) + " exceeds the desk-scale limit");
    if (amplitudes.size() != static_cast<std::size_t>(1) << m)
      throw ContractViolation("PureState: expected 2^" + std::to_string(m) + " amplitudes, got " +
                              std::to_string(amplitudes.size()));
    double n2 = 0.0;
    for (Complex a : amplitudes) {
      if (!is_finite(a)) throw ContractViolation("PureState: non-finite amplitude");
      n2 += std::norm(a);
    }
    if (std::abs(n2 - 1.0) > tol::kStateNorm)
      throw ContractViolation("PureState: squared norm deviates from 1 by " +
                              std::to_string(n2 - 1.0) + " (tolerance 1e-10)");
  }

  int dim() const { return 1 << qubit_count; }
};

// rho as a Hermitian, unit-trace, PSD matrix. All three invariants are
// checked at construction (PSD via the eigen-spectrum).
struct DensityMatrix {
  int qubit_count = 0;
  ComplexMatrix matrix;

  DensityMatrix(int m, ComplexMatrix rho) : qubit_count(m), matrix(std::move(rho)) {
    if (m < 1) throw ContractViolation("DensityMatrix: qubit_count must be >= 1");
    if (matrix.dim != (1 << m))
      throw ContractViolation("DensityMatrix: matrix dim " + std::to_string(matrix.dim) +
                              " does not match 2^" + std::to_string(m));
    if (!matrix.finite()) throw ContractViolation("DensityMatrix: non-finite entries");
    const double herm = hermiticity_deviation(matrix);
    if (herm > tol::kHermitian)
      throw ContractViolation("DensityMatrix: deviates from Hermitian by " + std::to_string(herm));
    const double tr_dev = std::abs(trace(matrix) - Complex{1.0, 0.0});
    if (tr_dev > tol::kTrace)
      throw ContractViolation("DensityMatrix: trace deviates from 1 by " + std::to_string(tr_dev));
    const auto spectrum = hermitian_eigenvalues(matrix);
    if (spectrum.back() < -tol::kPsdClamp)
      throw ContractViolation("DensityMatrix: negative eigenvalue " + std::to_string(spectrum.back()));
  }

  int dim() const { return 1 << qubit_count; }
};

// {p_n, |Psi_n>} with weights in (0,1] summing to 1.
struct Ensemble {
  struct Member {
    double weight;
    PureState state;
  };
  std::vector<Member> members;

  explicit Ensemble(std::vector<Member> ms) : members(std::move(ms)) {
    if (members.empty()) throw ContractViolation("Ensemble: needs at least one member");
    double sum = 0.0;
    for (const Member& m : members) {
      if (!(m.weight > 0.0) || m.weight > 1.0)
        throw ContractViolation("Ensemble: weight " + std::to_string(m.weight) +
                                " outside (0, 1]");
      if (m.state.qubit_count != members.front().state.qubit_count)
        throw ContractViolation("Ensemble: members must share one qubit count");
      sum += m.weight;
    }
    if (std::abs(sum - 1.0) > tol::kWeightSum)
      throw ContractViolation("Ensemble: weights sum to " + std::to_string(sum) +
                              ", expected 1 (tolerance 1e-10)");
  }

  int qubit_count() const { return members.front().state.qubit_count; }
};

// (1/sqrt(m)) sum of the m single-excitation basis states.
inline PureState w_state(int m) {
  if (m < 2) throw ContractViolation("w_state: need m >= 2");
  std::vector<Complex> amps(static_cast<std::size_t>(1) << m, Complex{0.0, 0.0});
  const double a = 1.0 / std::sqrt(static_cast<double>(m));
  for (int site = 1; site <= m; ++site) amps[static_cast<std::size_t>(1) << (m - site)] = a;
  return PureState(m, std::move(amps));
}

// (|1...1> ± |2...2>)/sqrt(2) in 1/2 ket labels.
inline PureState ghz_state(int m, int sign) {
  if (m < 2) throw ContractViolation("ghz_state: need m >= 2");
  if (sign != 1 && sign != -1) throw ContractViolation("ghz_state: sign must be +1 or -1");
  std::vector<Complex> amps(static_cast<std::size_t>(1) << m, Complex{0.0, 0.0});
  const double a = 1.0 / std::sqrt(2.0);
  amps.front() = a;
  amps.back() = sign * a;
  return PureState(m, std::move(amps));
}

// Kronecker product of normalized single-qubit amplitude pairs.
inline PureState product_state(const std::vector<std::array<Complex, 2>>& locals) {
  if (locals.empty()) throw ContractViolation("product_state: needs at least one site");
  for (const auto& l : locals) {
    const double n2 = std::norm(l[0]) + std::norm(l[1]);
    if (std::abs(n2 - 1.0) > tol::kStateNorm)
      throw ContractViolation("product_state: local pair squared norm deviates from 1 by " +
                              std::to_string(n2 - 1.0));
  }
  std::vector<Complex> amps{1.0};
  for (const auto& l : locals) {
    std::vector<Complex> next(amps.size() * 2);
    for (std::size_t i = 0; i < amps.size(); ++i) {
      next[2 * i] = amps[i] * l[0];
      next[2 * i + 1] = amps[i] * l[1];
    }
    amps = std::move(next);
  }
  return PureState(static_cast<int>(locals.size()), std::move(amps));
}

// Haar-like sample: complex standard normals, normalized. Bit-identical
// amplitudes for a given (m, seed).
inline PureState random_pure(int m, std::uint64_t seed) {
  if (m < 1) throw ContractViolation("random_pure: need m >= 1");
  Rng rng(seed);
  std::vector<Complex> amps(static_cast<std::size_t>(1) << m);
  double n2 = 0.0;
  for (Complex& a : amps) {
    a = rng.complex_gaussian();
    n2 += std::norm(a);
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (Complex& a : amps) a *= inv;
  return PureState(m, std::move(amps));
}

// rho = sum_n p_n |Psi_n><Psi_n|.
inline DensityMatrix densify(const Ensemble& e) {
  const int d = 1 << e.qubit_count();
  ComplexMatrix rho(d);
  for (const Ensemble::Member& m : e.members) {
    for (int i = 0; i < d; ++i) {
      const Complex wi = m.weight * m.state.amplitudes[static_cast<std::size_t>(i)];
      for (int j = 0; j < d; ++j)
        rho.at(i, j) += wi * std::conj(m.state.amplitudes[static_cast<std::size_t>(j)]);
    }
  }
  return DensityMatrix(e.qubit_count(), std::move(rho));
}

inline DensityMatrix to_density(const PureState& psi) {
  return DensityMatrix(psi.qubit_count, outer(psi.amplitudes, psi.amplitudes));
}

// Relabels qubits: old site s becomes perm[s-1] (1-based permutation).
inline PureState permute_qubits(const PureState& psi, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != psi.qubit_count)
    throw ContractViolation("permute_qubits: permutation size must equal the qubit count");
  std::vector<Complex> amps(psi.amplitudes.size());
  for (int b = 0; b < psi.dim(); ++b)
    amps[static_cast<std::size_t>(permute_basis_index(b, perm))] = psi.amplitudes[static_cast<std::size_t>(b)];
  return PureState(psi.qubit_count, std::move(amps));
}

// Renders a basis index in 1/2 ket labels (label 1 = ground), e.g. "|1,2,1>".
inline std::string ket_label(int basis_index, int qubit_count) {
  std::string s = "|";
  for (int site = 1; site <= qubit_count; ++site) {
    s += qubit_bit(basis_index, site, qubit_count) ? '2' : '1';
    if (site != qubit_count) s += ',';
  }
  s += ">";
  return s;
}

}  // namespace qconcur
