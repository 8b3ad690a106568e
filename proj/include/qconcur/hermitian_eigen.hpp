#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "qconcur/complex_matrix.hpp"
#include "qconcur/common.hpp"

namespace qconcur {

// Eigenvalues descending; vectors.column(k) pairs with values[k].
struct EigenSystem {
  std::vector<double> values;
  ComplexMatrix vectors;
};

namespace detail {

// One complex Jacobi rotation zeroing a(p,q). The unitary is a phase times
// the Golub-Van Loan symmetric Schur rotation:
//   J(p,p) = c*u   J(p,q) = s*u
//   J(q,p) = -s    J(q,q) = c
// with u = a(p,q)/|a(p,q)|, applied as a <- J† a J, v <- v J.
inline void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, int p, int q) {
  const Complex w = a.at(p, q);
  const double absw = std::abs(w);
  if (absw == 0.0) return;
  const Complex u = w / absw;
  const double app = a.at(p, p).real();
  const double aqq = a.at(q, q).real();
  const double tau = (aqq - app) / (2.0 * absw);
  double t;
  if (tau >= 0.0)
    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
  else
    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const Complex jpp = c * u, jpq = s * u;
  const int n = a.dim;
  for (int i = 0; i < n; ++i) {  // columns: a <- a J
    const Complex ap = a.at(i, p), aq = a.at(i, q);
    a.at(i, p) = jpp * ap - s * aq;
    a.at(i, q) = jpq * ap + c * aq;
  }
  for (int j = 0; j < n; ++j) {  // rows: a <- J† a
    const Complex bp = a.at(p, j), bq = a.at(q, j);
    a.at(p, j) = std::conj(jpp) * bp - s * bq;
    a.at(q, j) = std::conj(jpq) * bp + c * bq;
  }
  a.at(p, q) = 0.0;  // zeroed by construction; drop the rounding residue
  a.at(q, p) = 0.0;
  a.at(p, p) = Complex{a.at(p, p).real(), 0.0};
  a.at(q, q) = Complex{a.at(q, q).real(), 0.0};
  for (int i = 0; i < n; ++i) {
    const Complex vp = v.at(i, p), vq = v.at(i, q);
    v.at(i, p) = jpp * vp - s * vq;
    v.at(i, q) = jpq * vp + c * vq;
  }
}

inline double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.dim; ++i)
    for (int j = i + 1; j < a.dim; ++j) s += 2.0 * std::norm(a.at(i, j));
  return std::sqrt(s);
}

}  // namespace detail

// Cyclic Jacobi diagonalization of a Hermitian matrix. Input is validated
// against herm_tol (max-abs deviation from the adjoint) and symmetrized
// before iterating, so results are exactly real on the diagonal.
inline EigenSystem hermitian_eigensystem(const ComplexMatrix& m, double herm_tol = tol::kHermitian) {
  if (!m.finite()) throw ContractViolation("hermitian_eigensystem: non-finite entries");
  const double dev = hermiticity_deviation(m);
  if (dev > herm_tol)
    throw ContractViolation("hermitian_eigensystem: input deviates from Hermitian by " +
                            std::to_string(dev));
  const int n = m.dim;
  ComplexMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a.at(i, j) = 0.5 * (m.at(i, j) + std::conj(m.at(j, i)));
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = std::max(1.0, frobenius_norm(a));
  constexpr int kMaxSweeps = 64;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (detail::off_diagonal_norm(a) <= 1e-15 * scale) break;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) detail::jacobi_rotate(a, v, p, q);
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return a.at(x, x).real() > a.at(y, y).real(); });

  EigenSystem es;
  es.values.resize(static_cast<std::size_t>(n));
  es.vectors = ComplexMatrix(n);
  for (int k = 0; k < n; ++k) {
    es.values[static_cast<std::size_t>(k)] = a.at(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]).real();
    for (int i = 0; i < n; ++i) es.vectors.at(i, k) = v.at(i, order[static_cast<std::size_t>(k)]);
  }
  return es;
}

// Real eigenvalues of a Hermitian matrix, descending.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double herm_tol = tol::kHermitian) {
  return hermitian_eigensystem(m, herm_tol).values;
}

// Hermitian PSD square root. Eigenvalues in [kPsdReject, 0) are clamped to
// zero; anything below kPsdReject is a contract violation.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& m, double herm_tol = tol::kHermitian) {
  EigenSystem es = hermitian_eigensystem(m, herm_tol);
  for (double lambda : es.values)
    if (lambda < tol::kPsdReject)
      throw ContractViolation("psd_sqrt: significantly negative eigenvalue " + std::to_string(lambda));
  const int n = m.dim;
  const double floor = std::max(es.values.front(), 0.0) * tol::kRelativeRank;
  ComplexMatrix scaled = es.vectors;
  for (int k = 0; k < n; ++k) {
    const double lambda = es.values[static_cast<std::size_t>(k)];
    const double s = lambda <= floor ? 0.0 : std::sqrt(lambda);
    for (int i = 0; i < n; ++i) scaled.at(i, k) *= s;
  }
  return matmul(scaled, dagger(es.vectors));
}

}  // namespace qconcur
