#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "qconcur/complex_matrix.hpp"
#include "qconcur/common.hpp"

namespace qconcur {

// Per-site role inside a class operator. The three roles materialize to
// exactly these matrices:
//   HalfPi   -> sigma_y  (complement at phase pi/2)
//   Pi       -> sigma_x  (complement at phase pi)
//   Identity -> I_2
enum class PhaseChoice { HalfPi, Pi, Identity };

enum class ClassTag { EprPair, GhzFull, GhzSub };

// Single-qubit phase POVM element: diagonal 1, off-diagonal e^{±i phi}.
inline ComplexMatrix single_qubit_povm(double phi) {
  if (!std::isfinite(phi)) throw ContractViolation("single_qubit_povm: phi must be finite");
  ComplexMatrix m(2);
  m.at(0, 0) = 1.0;
  m.at(1, 1) = 1.0;
  m.at(0, 1) = std::polar(1.0, phi);
  m.at(1, 0) = std::polar(1.0, -phi);
  return m;
}

// Orthogonal complement I_2 - Delta(phi). At pi/2 this is sigma_y, at pi it
// is sigma_x.
inline ComplexMatrix single_qubit_complement(double phi) {
  if (!std::isfinite(phi)) throw ContractViolation("single_qubit_complement: phi must be finite");
  ComplexMatrix m(2);
  m.at(0, 1) = -std::polar(1.0, phi);
  m.at(1, 0) = -std::polar(1.0, -phi);
  return m;
}

// Uniform-grid quadrature of Delta(phi)/(2 pi) over a full period; returns
// the max-abs deviation from I_2. The off-diagonal phases are roots of unity
// and cancel exactly, so the deviation is at rounding level for any
// samples >= 8.
inline double povm_normalization_check(int samples) {
  if (samples < 8) throw ContractViolation("povm_normalization_check: need samples >= 8");
  ComplexMatrix acc(2);
  for (int k = 0; k < samples; ++k) {
    const double phi = 2.0 * kPi * k / samples;
    const ComplexMatrix d = single_qubit_povm(phi);
    for (std::size_t e = 0; e < acc.entries.size(); ++e) acc.entries[e] += d.entries[e];
  }
  const double w = 1.0 / samples;
  for (Complex& z : acc.entries) z *= w;
  return max_abs_diff(acc, ComplexMatrix::identity(2));
}

namespace detail {

// Exact Pauli constants; evaluating the complement at pi/2 or pi through
// std::polar would leave ~1e-16 residue in the entries.
inline ComplexMatrix site_matrix(PhaseChoice c) {
  switch (c) {
    case PhaseChoice::HalfPi: return pauli_y();
    case PhaseChoice::Pi: return pauli_x();
    case PhaseChoice::Identity: return identity2();
  }
  throw ContractViolation("site_matrix: invalid PhaseChoice");
}

using OperatorKey = std::tuple<int, ClassTag, std::vector<int>>;

// Process-wide materialization cache. Entries are never evicted, so the
// returned references stay valid for the life of the program.
inline const ComplexMatrix& materialized(const OperatorKey& key, const std::vector<PhaseChoice>& sites) {
  static std::mutex mutex;
  static std::map<OperatorKey, std::unique_ptr<const ComplexMatrix>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end()) {
    ComplexMatrix m = site_matrix(sites.front());
    for (std::size_t s = 1; s < sites.size(); ++s) m = kron(m, site_matrix(sites[s]));
    it = cache.emplace(key, std::make_unique<const ComplexMatrix>(std::move(m))).first;
  }
  return *it->second;
}

inline void check_pair(int m, int r1, int r2, const char* who) {
  if (r1 < 1 || r2 > m || r1 >= r2)
    throw ContractViolation(std::string(who) + ": need 1 <= r1 < r2 <= m, got (" +
                            std::to_string(r1) + ", " + std::to_string(r2) + ") for m = " +
                            std::to_string(m));
}

inline void check_qubit_count(int m, int min_m, const char* who) {
  if (m < min_m)
    throw ContractViolation(std::string(who) + ": need m >= " + std::to_string(min_m) +
                            ", got " + std::to_string(m));
  if ((1LL << m) > kMaxOperatorDim)
    throw CapacityError(std::string(who) + ": 2^" + std::to_string(m) +
                        " exceeds the desk-scale operator dimension");
}

}  // namespace detail

// One tensor-product class operator. The matrix is materialized lazily and
// cached process-wide, keyed by (qubit_count, class_tag, acting_indices).
struct ClassOperator {
  int qubit_count = 0;
  std::vector<PhaseChoice> sites;  // one per qubit, site order 1..m
  ClassTag class_tag = ClassTag::EprPair;
  std::vector<int> acting_indices;  // 1-based; pair for EPR/GHZ, non-identity sites for GhzSub

  int dim() const { return 1 << qubit_count; }

  const ComplexMatrix& matrix() const {
    return detail::materialized({qubit_count, class_tag, acting_indices}, sites);
  }
};

// sigma_y at sites r1 and r2, identity elsewhere.
inline ClassOperator epr_pair_operator(int m, int r1, int r2) {
  detail::check_qubit_count(m, 2, "epr_pair_operator");
  detail::check_pair(m, r1, r2, "epr_pair_operator");
  ClassOperator op;
  op.qubit_count = m;
  op.sites.assign(static_cast<std::size_t>(m), PhaseChoice::Identity);
  op.sites[static_cast<std::size_t>(r1 - 1)] = PhaseChoice::HalfPi;
  op.sites[static_cast<std::size_t>(r2 - 1)] = PhaseChoice::HalfPi;
  op.class_tag = ClassTag::EprPair;
  op.acting_indices = {r1, r2};
  return op;
}

// All C(m,2) pair operators in lexicographic (r1, r2) order.
inline std::vector<ClassOperator> w_class_operator_set(int m) {
  detail::check_qubit_count(m, 2, "w_class_operator_set");
  std::vector<ClassOperator> out;
  for (int r1 = 1; r1 <= m; ++r1)
    for (int r2 = r1 + 1; r2 <= m; ++r2) out.push_back(epr_pair_operator(m, r1, r2));
  return out;
}

// sigma_y at sites r1 and r2, sigma_x at every other site. m = 2 is rejected
// because the operator would degenerate to the EPR pair.
inline ClassOperator ghz_full_operator(int m, int r1, int r2) {
  detail::check_qubit_count(m, 3, "ghz_full_operator");
  detail::check_pair(m, r1, r2, "ghz_full_operator");
  ClassOperator op;
  op.qubit_count = m;
  op.sites.assign(static_cast<std::size_t>(m), PhaseChoice::Pi);
  op.sites[static_cast<std::size_t>(r1 - 1)] = PhaseChoice::HalfPi;
  op.sites[static_cast<std::size_t>(r2 - 1)] = PhaseChoice::HalfPi;
  op.class_tag = ClassTag::GhzFull;
  op.acting_indices = {r1, r2};
  return op;
}

inline std::vector<ClassOperator> ghz_full_operator_set(int m) {
  detail::check_qubit_count(m, 3, "ghz_full_operator_set");
  std::vector<ClassOperator> out;
  for (int r1 = 1; r1 <= m; ++r1)
    for (int r2 = r1 + 1; r2 <= m; ++r2) out.push_back(ghz_full_operator(m, r1, r2));
  return out;
}

// C(m, m-1) = m operators, each leaving exactly one site as the identity,
// with sigma_y on the two lowest remaining sites and sigma_x on the rest.
// Enumerated with the identity site descending, which reproduces the
// four-qubit listing (12,3), (12,4), (13,4), (23,4).
inline std::vector<ClassOperator> ghz_sub_operator_set(int m) {
  detail::check_qubit_count(m, 4, "ghz_sub_operator_set");
  std::vector<ClassOperator> out;
  for (int identity_site = m; identity_site >= 1; --identity_site) {
    ClassOperator op;
    op.qubit_count = m;
    op.sites.assign(static_cast<std::size_t>(m), PhaseChoice::Pi);
    op.sites[static_cast<std::size_t>(identity_site - 1)] = PhaseChoice::Identity;
    int placed = 0;
    for (int s = 1; s <= m && placed < 2; ++s) {
      if (s == identity_site) continue;
      op.sites[static_cast<std::size_t>(s - 1)] = PhaseChoice::HalfPi;
      ++placed;
    }
    op.class_tag = ClassTag::GhzSub;
    for (int s = 1; s <= m; ++s)
      if (s != identity_site) op.acting_indices.push_back(s);
    out.push_back(std::move(op));
  }
  return out;
}

}  // namespace qconcur
