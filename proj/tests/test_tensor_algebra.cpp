#include <catch2/catch.hpp>

#include "oracles.hpp"
#include "qconcur/complex_matrix.hpp"
#include "qconcur/hermitian_eigen.hpp"

using namespace qconcur;

namespace {

ComplexMatrix diag(std::vector<double> d) {
  ComplexMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.dim; ++i) m.at(i, i) = d[static_cast<std::size_t>(i)];
  return m;
}

}  // namespace

TEST_CASE("kron basics") {
  CHECK(max_abs_diff(kron(identity2(), identity2()), ComplexMatrix::identity(4)) == 0.0);

  // sigma_y (x) sigma_y is the real anti-diagonal {-1, +1, +1, -1}
  const ComplexMatrix yy = kron(pauli_y(), pauli_y());
  ComplexMatrix expected(4);
  expected.at(0, 3) = -1.0;
  expected.at(1, 2) = 1.0;
  expected.at(2, 1) = 1.0;
  expected.at(3, 0) = -1.0;
  CHECK(max_abs_diff(yy, expected) == 0.0);

  const ComplexMatrix yi = kron(pauli_y(), identity2());
  CHECK(max_abs_diff(matmul(yi, yi), ComplexMatrix::identity(4)) == 0.0);
}

TEST_CASE("kron capacity limit") {
  const ComplexMatrix a = ComplexMatrix::identity(64);
  const ComplexMatrix b = ComplexMatrix::identity(128);
  CHECK_NOTHROW(kron(a, a));  // 4096 is exactly the limit
  CHECK_THROWS_AS(kron(a, b), CapacityError);
}

TEST_CASE("conjugate") {
  CHECK(max_abs_diff(conjugate(pauli_y()), Complex{-1.0, 0.0} * pauli_y()) == 0.0);
  CHECK(max_abs_diff(conjugate(pauli_x()), pauli_x()) == 0.0);

  Rng rng(11);
  const ComplexMatrix a = oracle::random_matrix(5, rng);
  CHECK(max_abs_diff(conjugate(conjugate(a)), a) == 0.0);
}

TEST_CASE("matmul basics") {
  CHECK(max_abs_diff(matmul(pauli_y(), pauli_y()), ComplexMatrix::identity(2)) == 0.0);

  const ComplexMatrix xy = matmul(pauli_x(), pauli_y());
  const ComplexMatrix yx = matmul(pauli_y(), pauli_x());
  CHECK(max_abs_diff(xy, Complex{-1.0, 0.0} * yx) == 0.0);

  Rng rng(12);
  const ComplexMatrix a = oracle::random_matrix(6, rng);
  CHECK(max_abs_diff(matmul(a, ComplexMatrix::identity(6)), a) == 0.0);
  CHECK_THROWS_AS(matmul(a, ComplexMatrix::identity(5)), ContractViolation);
}

TEST_CASE("hermitian_eigenvalues on known spectra") {
  const std::vector<double> id4 = hermitian_eigenvalues(ComplexMatrix::identity(4));
  for (double v : id4) CHECK(v == Approx(1.0).margin(1e-14));

  const std::vector<double> y = hermitian_eigenvalues(pauli_y());
  CHECK(y[0] == Approx(1.0).margin(1e-14));
  CHECK(y[1] == Approx(-1.0).margin(1e-14));

  const std::vector<double> d = hermitian_eigenvalues(diag({0.3, 0.7, 0.0, 0.0}));
  CHECK(d[0] == Approx(0.7).margin(1e-14));
  CHECK(d[1] == Approx(0.3).margin(1e-14));
  CHECK(d[2] == Approx(0.0).margin(1e-14));
  CHECK(d[3] == Approx(0.0).margin(1e-14));
}

TEST_CASE("hermitian_eigenvalues contract") {
  ComplexMatrix bad(2);
  bad.at(0, 1) = 1.0;  // strictly upper triangular, far from Hermitian
  CHECK_THROWS_AS(hermitian_eigenvalues(bad), ContractViolation);

  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.integer() % 7);
    const ComplexMatrix a = oracle::random_hermitian(n, rng);
    const std::vector<double> vals = hermitian_eigenvalues(a);
    REQUIRE(static_cast<int>(vals.size()) == n);
    CHECK(std::is_sorted(vals.rbegin(), vals.rend()));
    double sum = 0.0;
    for (double v : vals) sum += v;
    CHECK(sum == Approx(trace(a).real()).margin(1e-9 * n));
  }
}

TEST_CASE("hermitian_eigenvalues vs characteristic-polynomial roots") {
  Rng rng(14);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng.integer() % 3);  // dims 2..4
    const ComplexMatrix a = oracle::random_hermitian(n, rng);
    const std::vector<double> fast = hermitian_eigenvalues(a);
    const std::vector<double> brute = oracle::hermitian_eigenvalues_bruteforce(a);
    for (int i = 0; i < n; ++i)
      CHECK(fast[static_cast<std::size_t>(i)] ==
            Approx(brute[static_cast<std::size_t>(i)]).margin(1e-8));
  }
}

TEST_CASE("psd_sqrt on known cases") {
  CHECK(max_abs_diff(psd_sqrt(ComplexMatrix::identity(3)), ComplexMatrix::identity(3)) < 1e-14);
  CHECK(max_abs_diff(psd_sqrt(diag({4.0, 1.0})), diag({2.0, 1.0})) < 1e-14);

  // A rank-1 projector is its own square root.
  Rng rng(15);
  const PureState psi = random_pure(2, 77);
  const ComplexMatrix proj = outer(psi.amplitudes, psi.amplitudes);
  CHECK(max_abs_diff(psd_sqrt(proj), proj) < 1e-10);
}

TEST_CASE("psd_sqrt round trip and contract") {
  Rng rng(16);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.integer() % 7);
    const ComplexMatrix b = oracle::random_matrix(n, rng);
    const ComplexMatrix a = matmul(dagger(b), b);
    const ComplexMatrix r = psd_sqrt(a);
    CHECK(hermiticity_deviation(r) < 1e-10);
    CHECK(max_abs_diff(matmul(r, r), a) < tol::kSqrtRoundTrip);
  }
  CHECK_THROWS_AS(psd_sqrt(diag({1.0, -0.5})), ContractViolation);
}

TEST_CASE("kron bilinearity and trace multiplicativity") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = oracle::random_matrix(3, rng);
    const ComplexMatrix b = oracle::random_matrix(4, rng);
    const ComplexMatrix c = oracle::random_matrix(4, rng);
    CHECK(max_abs_diff(kron(a, b + c), kron(a, b) + kron(a, c)) <= 1e-12);
    const Complex lhs = trace(kron(a, b));
    const Complex rhs = trace(a) * trace(b);
    CHECK(std::abs(lhs - rhs) <= 1e-10);
  }
}

TEST_CASE("kron associativity") {
  Rng rng(18);
  const ComplexMatrix a = oracle::random_matrix(2, rng);
  const ComplexMatrix b = oracle::random_matrix(3, rng);
  const ComplexMatrix c = oracle::random_matrix(2, rng);
  CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-13);
}

TEST_CASE("qubit permutation matrices") {
  // Swapping the two qubits of a 2-qubit system exchanges |1,2> and |2,1>.
  const ComplexMatrix swap = qubit_permutation_matrix({2, 1});
  CHECK(swap.at(0, 0) == Complex{1.0, 0.0});
  CHECK(swap.at(2, 1) == Complex{1.0, 0.0});
  CHECK(swap.at(1, 2) == Complex{1.0, 0.0});
  CHECK(swap.at(3, 3) == Complex{1.0, 0.0});
  CHECK(max_abs_diff(matmul(swap, swap), ComplexMatrix::identity(4)) == 0.0);
  CHECK_THROWS_AS(qubit_permutation_matrix({1, 1}), ContractViolation);
}
