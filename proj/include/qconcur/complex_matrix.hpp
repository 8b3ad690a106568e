#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "qconcur/common.hpp"

namespace qconcur {

// Dense square complex matrix, row-major. The carrier for operators and
// density matrices; sized for 2^m x 2^m with m <= 12.
struct ComplexMatrix {
  int dim = 0;
  std::vector<Complex> entries;  // dim * dim, row-major

  ComplexMatrix() = default;

  explicit ComplexMatrix(int d) : dim(d) {
    if (d < 1) throw ContractViolation("ComplexMatrix: dim must be >= 1");
    entries.assign(static_cast<std::size_t>(d) * d, Complex{0.0, 0.0});
  }

  ComplexMatrix(int d, std::vector<Complex> e) : dim(d), entries(std::move(e)) {
    if (d < 1) throw ContractViolation("ComplexMatrix: dim must be >= 1");
    if (entries.size() != static_cast<std::size_t>(d) * d)
      throw ContractViolation("ComplexMatrix: entry count must equal dim^2");
  }

  Complex& at(int i, int j) { return entries[static_cast<std::size_t>(i) * dim + j]; }
  const Complex& at(int i, int j) const { return entries[static_cast<std::size_t>(i) * dim + j]; }

  std::span<Complex> row(int i) { return {entries.data() + static_cast<std::size_t>(i) * dim, static_cast<std::size_t>(dim)}; }
  std::span<const Complex> row(int i) const { return {entries.data() + static_cast<std::size_t>(i) * dim, static_cast<std::size_t>(dim)}; }

  bool finite() const {
    return std::all_of(entries.begin(), entries.end(), [](Complex z) { return is_finite(z); });
  }

  static ComplexMatrix identity(int d) {
    ComplexMatrix m(d);
    for (int i = 0; i < d; ++i) m.at(i, i) = 1.0;
    return m;
  }
};

// Pauli matrices in the computational basis (ket label 1 -> index 0).
inline ComplexMatrix pauli_x() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}); }
inline ComplexMatrix pauli_y() { return ComplexMatrix(2, {0.0, Complex{0.0, -1.0}, Complex{0.0, 1.0}, 0.0}); }
inline ComplexMatrix identity2() { return ComplexMatrix::identity(2); }

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const long long prod = static_cast<long long>(a.dim) * b.dim;
  if (prod > kMaxOperatorDim)
    throw CapacityError("kron: result dimension " + std::to_string(prod) + " exceeds the " +
                        std::to_string(kMaxOperatorDim) + " desk-scale limit");
  ComplexMatrix out(static_cast<int>(prod));
  for (int ia = 0; ia < a.dim; ++ia)
    for (int ja = 0; ja < a.dim; ++ja) {
      const Complex f = a.at(ia, ja);
      if (f == Complex{0.0, 0.0}) continue;
      for (int ib = 0; ib < b.dim; ++ib) {
        Complex* dst = &out.at(ia * b.dim + ib, ja * b.dim);
        const Complex* src = &b.at(ib, 0);
        for (int jb = 0; jb < b.dim; ++jb) dst[jb] = f * src[jb];
      }
    }
  return out;
}

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim != b.dim) throw ContractViolation("matmul: dimension mismatch");
  const int n = a.dim;
  ComplexMatrix c(n);
  for (int i = 0; i < n; ++i) {
    Complex* crow = &c.at(i, 0);
    for (int k = 0; k < n; ++k) {
      const Complex aik = a.at(i, k);
      if (aik == Complex{0.0, 0.0}) continue;
      const Complex* brow = &b.at(k, 0);
      for (int j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

// Elementwise complex conjugation (not the adjoint).
inline ComplexMatrix conjugate(const ComplexMatrix& a) {
  ComplexMatrix out = a;
  for (Complex& z : out.entries) z = std::conj(z);
  return out;
}

inline ComplexMatrix dagger(const ComplexMatrix& a) {
  ComplexMatrix out(a.dim);
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) out.at(j, i) = std::conj(a.at(i, j));
  return out;
}

inline ComplexMatrix transpose(const ComplexMatrix& a) {
  ComplexMatrix out(a.dim);
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) out.at(j, i) = a.at(i, j);
  return out;
}

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim != b.dim) throw ContractViolation("matrix add: dimension mismatch");
  ComplexMatrix out = a;
  for (std::size_t k = 0; k < out.entries.size(); ++k) out.entries[k] += b.entries[k];
  return out;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim != b.dim) throw ContractViolation("matrix sub: dimension mismatch");
  ComplexMatrix out = a;
  for (std::size_t k = 0; k < out.entries.size(); ++k) out.entries[k] -= b.entries[k];
  return out;
}

inline ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
  ComplexMatrix out = a;
  for (Complex& z : out.entries) z *= s;
  return out;
}

inline Complex trace(const ComplexMatrix& a) {
  Complex t = 0.0;
  for (int i = 0; i < a.dim; ++i) t += a.at(i, i);
  return t;
}

inline double max_abs(const ComplexMatrix& a) {
  double m = 0.0;
  for (const Complex& z : a.entries) m = std::max(m, std::abs(z));
  return m;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim != b.dim) throw ContractViolation("max_abs_diff: dimension mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < a.entries.size(); ++k) m = std::max(m, std::abs(a.entries[k] - b.entries[k]));
  return m;
}

inline double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const Complex& z : a.entries) s += std::norm(z);
  return std::sqrt(s);
}

// Max-abs deviation of a from its own adjoint.
inline double hermiticity_deviation(const ComplexMatrix& a) {
  double m = 0.0;
  for (int i = 0; i < a.dim; ++i)
    for (int j = i; j < a.dim; ++j) m = std::max(m, std::abs(a.at(i, j) - std::conj(a.at(j, i))));
  return m;
}

inline bool is_hermitian(const ComplexMatrix& a, double tolerance = tol::kHermitian) {
  return hermiticity_deviation(a) <= tolerance;
}

inline std::vector<Complex> matvec(const ComplexMatrix& a, std::span<const Complex> v) {
  if (static_cast<std::size_t>(a.dim) != v.size()) throw ContractViolation("matvec: dimension mismatch");
  std::vector<Complex> out(v.size(), Complex{0.0, 0.0});
  for (int i = 0; i < a.dim; ++i) {
    const Complex* row = &a.at(i, 0);
    Complex acc = 0.0;
    for (int j = 0; j < a.dim; ++j) acc += row[j] * v[j];
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

inline ComplexMatrix outer(std::span<const Complex> u, std::span<const Complex> v) {
  if (u.size() != v.size()) throw ContractViolation("outer: dimension mismatch");
  ComplexMatrix out(static_cast<int>(u.size()));
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out.at(static_cast<int>(i), static_cast<int>(j)) = u[i] * std::conj(v[j]);
  return out;
}

inline Complex inner(std::span<const Complex> u, std::span<const Complex> v) {
  if (u.size() != v.size()) throw ContractViolation("inner: dimension mismatch");
  Complex acc = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) acc += std::conj(u[k]) * v[k];
  return acc;
}

// Basis convention: qubit 1 is the most significant bit of the 2^m index.
inline int qubit_bit(int basis_index, int site, int qubit_count) {
  return (basis_index >> (qubit_count - site)) & 1;
}

// Basis index obtained by moving the bit of site s to site perm[s-1] for every s.
// perm is 1-based: perm[s-1] = new position of old qubit s.
inline int permute_basis_index(int basis_index, const std::vector<int>& perm) {
  const int m = static_cast<int>(perm.size());
  int out = 0;
  for (int s = 1; s <= m; ++s)
    out |= qubit_bit(basis_index, s, m) << (m - perm[static_cast<std::size_t>(s - 1)]);
  return out;
}

inline ComplexMatrix qubit_permutation_matrix(const std::vector<int>& perm) {
  const int m = static_cast<int>(perm.size());
  std::vector<bool> seen(static_cast<std::size_t>(m) + 1, false);
  for (int p : perm) {
    if (p < 1 || p > m || seen[static_cast<std::size_t>(p)])
      throw ContractViolation("qubit_permutation_matrix: not a permutation of 1..m");
    seen[static_cast<std::size_t>(p)] = true;
  }
  ComplexMatrix out(1 << m);
  for (int b = 0; b < (1 << m); ++b) out.at(permute_basis_index(b, perm), b) = 1.0;
  return out;
}

}  // namespace qconcur
