#include <catch2/catch.hpp>

#include "oracles.hpp"
#include "qconcur/hermitian_eigen.hpp"
#include "qconcur/povm.hpp"

using namespace qconcur;

namespace {

ComplexMatrix kron_chain(const std::vector<ComplexMatrix>& factors) {
  ComplexMatrix m = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) m = kron(m, factors[i]);
  return m;
}

bool exactly_hermitian(const ComplexMatrix& a) {
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j)
      if (a.at(i, j) != std::conj(a.at(j, i))) return false;
  return true;
}

}  // namespace

TEST_CASE("single qubit POVM element") {
  const ComplexMatrix d0 = single_qubit_povm(0.0);
  CHECK(d0.at(0, 0) == Complex{1.0, 0.0});
  CHECK(d0.at(0, 1) == Complex{1.0, 0.0});
  CHECK(d0.at(1, 0) == Complex{1.0, 0.0});
  CHECK(d0.at(1, 1) == Complex{1.0, 0.0});

  const ComplexMatrix dq = single_qubit_povm(kPi / 2.0);
  CHECK(std::abs(dq.at(0, 1) - Complex{0.0, 1.0}) < 1e-15);
  CHECK(std::abs(dq.at(1, 0) - Complex{0.0, -1.0}) < 1e-15);

  // every element has spectrum {2, 0}: rank one times two
  Rng rng(21);
  for (int k = 0; k < 10; ++k) {
    const std::vector<double> ev = hermitian_eigenvalues(single_qubit_povm(rng.uniform(0.0, 2.0 * kPi)));
    CHECK(ev[0] == Approx(2.0).margin(1e-12));
    CHECK(ev[1] == Approx(0.0).margin(1e-12));
  }
}

TEST_CASE("orthogonal complement hits the Pauli matrices") {
  CHECK(max_abs_diff(single_qubit_complement(kPi / 2.0), pauli_y()) < 1e-15);
  CHECK(max_abs_diff(single_qubit_complement(kPi), pauli_x()) < 1e-15);
  CHECK(max_abs_diff(single_qubit_complement(0.0), Complex{-1.0, 0.0} * pauli_x()) < 1e-15);

  // complement squares to the identity for any phase
  Rng rng(22);
  for (int k = 0; k < 10; ++k) {
    const ComplexMatrix c = single_qubit_complement(rng.uniform(0.0, 2.0 * kPi));
    CHECK(max_abs_diff(matmul(c, c), ComplexMatrix::identity(2)) < 1e-15);
    CHECK(hermiticity_deviation(c) == 0.0);
  }
}

TEST_CASE("POVM quadrature normalization") {
  CHECK(povm_normalization_check(8) <= 1e-12);
  CHECK(povm_normalization_check(360) <= 1e-12);
  CHECK(povm_normalization_check(97) <= 1e-12);
  CHECK_THROWS_AS(povm_normalization_check(4), ContractViolation);
  // the diagonal of every sample is exactly one
  CHECK(single_qubit_povm(1.2345).at(0, 0) == Complex{1.0, 0.0});
  CHECK(single_qubit_povm(1.2345).at(1, 1) == Complex{1.0, 0.0});
}

TEST_CASE("EPR pair operators") {
  CHECK(max_abs_diff(epr_pair_operator(2, 1, 2).matrix(), kron(pauli_y(), pauli_y())) == 0.0);
  CHECK(max_abs_diff(epr_pair_operator(3, 1, 3).matrix(),
                     kron_chain({pauli_y(), identity2(), pauli_y()})) == 0.0);
  CHECK(max_abs_diff(epr_pair_operator(4, 2, 3).matrix(),
                     kron_chain({identity2(), pauli_y(), pauli_y(), identity2()})) == 0.0);

  CHECK_THROWS_AS(epr_pair_operator(3, 2, 2), ContractViolation);
  CHECK_THROWS_AS(epr_pair_operator(3, 0, 2), ContractViolation);
  CHECK_THROWS_AS(epr_pair_operator(3, 3, 1), ContractViolation);
  CHECK_THROWS_AS(epr_pair_operator(1, 1, 2), ContractViolation);
}

TEST_CASE("W class operator sets") {
  CHECK(w_class_operator_set(2).size() == 1);
  CHECK(w_class_operator_set(3).size() == 3);
  CHECK(w_class_operator_set(4).size() == 6);
  for (int m = 2; m <= 8; ++m)
    CHECK(w_class_operator_set(m).size() == static_cast<std::size_t>(m * (m - 1) / 2));

  // lexicographic (r1, r2) enumeration
  const std::vector<ClassOperator> set3 = w_class_operator_set(3);
  CHECK(set3[0].acting_indices == std::vector<int>{1, 2});
  CHECK(set3[1].acting_indices == std::vector<int>{1, 3});
  CHECK(set3[2].acting_indices == std::vector<int>{2, 3});
}

TEST_CASE("GHZ full operators") {
  CHECK(max_abs_diff(ghz_full_operator(3, 1, 2).matrix(),
                     kron_chain({pauli_y(), pauli_y(), pauli_x()})) == 0.0);
  CHECK(max_abs_diff(ghz_full_operator(3, 2, 3).matrix(),
                     kron_chain({pauli_x(), pauli_y(), pauli_y()})) == 0.0);
  CHECK(max_abs_diff(ghz_full_operator(4, 2, 4).matrix(),
                     kron_chain({pauli_x(), pauli_y(), pauli_x(), pauli_y()})) == 0.0);
  CHECK_THROWS_AS(ghz_full_operator(2, 1, 2), ContractViolation);  // degenerates to the EPR pair
}

TEST_CASE("GHZ sub operator set matches the four-qubit listing") {
  const std::vector<ClassOperator> set = ghz_sub_operator_set(4);
  REQUIRE(set.size() == 4);
  CHECK(max_abs_diff(set[0].matrix(), kron_chain({pauli_y(), pauli_y(), pauli_x(), identity2()})) == 0.0);
  CHECK(max_abs_diff(set[1].matrix(), kron_chain({pauli_y(), pauli_y(), identity2(), pauli_x()})) == 0.0);
  CHECK(max_abs_diff(set[2].matrix(), kron_chain({pauli_y(), identity2(), pauli_y(), pauli_x()})) == 0.0);
  CHECK(max_abs_diff(set[3].matrix(), kron_chain({identity2(), pauli_y(), pauli_y(), pauli_x()})) == 0.0);

  CHECK(set[0].acting_indices == std::vector<int>{1, 2, 3});
  CHECK(set[1].acting_indices == std::vector<int>{1, 2, 4});
  CHECK(set[2].acting_indices == std::vector<int>{1, 3, 4});
  CHECK(set[3].acting_indices == std::vector<int>{2, 3, 4});

  CHECK(ghz_sub_operator_set(5).size() == 5);
  CHECK_THROWS_AS(ghz_sub_operator_set(3), ContractViolation);

  for (const ClassOperator& op : set)
    CHECK(max_abs_diff(matmul(op.matrix(), op.matrix()), ComplexMatrix::identity(16)) == 0.0);
}

TEST_CASE("involution and exact hermiticity across families") {
  for (int m = 2; m <= 6; ++m) {
    std::vector<ClassOperator> all = w_class_operator_set(m);
    if (m >= 3)
      for (ClassOperator& op : ghz_full_operator_set(m)) all.push_back(std::move(op));
    if (m >= 4)
      for (ClassOperator& op : ghz_sub_operator_set(m)) all.push_back(std::move(op));
    for (const ClassOperator& op : all) {
      const ComplexMatrix& x = op.matrix();
      CHECK(exactly_hermitian(x));
      CHECK(max_abs_diff(matmul(x, x), ComplexMatrix::identity(x.dim)) <= 1e-12);
    }
  }
}

TEST_CASE("determinant-one transform identity at the 2x2 level") {
  Rng rng(23);
  const ComplexMatrix y = pauli_y();
  for (int trial = 0; trial < 50; ++trial) {
    ComplexMatrix a = oracle::random_matrix(2, rng);
    const Complex det = a.at(0, 0) * a.at(1, 1) - a.at(0, 1) * a.at(1, 0);
    if (std::abs(det) < 1e-3) continue;

    // general A: A sigma_y A^T = det(A) sigma_y
    const ComplexMatrix lhs = matmul(matmul(a, y), transpose(a));
    CHECK(max_abs_diff(lhs, det * y) <= 1e-10);

    // unit determinant: the operator is fixed
    const Complex scale = std::sqrt(det);
    ComplexMatrix unit = a;
    for (Complex& z : unit.entries) z /= scale;
    CHECK(max_abs_diff(matmul(matmul(unit, y), transpose(unit)), y) <= 1e-10);
  }
}

TEST_CASE("GHZ full set is closed under qubit permutations") {
  Rng rng(24);
  for (int m : {3, 4}) {
    const std::vector<ClassOperator> set = ghz_full_operator_set(m);
    // a handful of random permutations
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<int> perm(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
      for (int i = m - 1; i > 0; --i)
        std::swap(perm[static_cast<std::size_t>(i)],
                  perm[static_cast<std::size_t>(rng.integer() % static_cast<std::uint64_t>(i + 1))]);
      const ComplexMatrix p = qubit_permutation_matrix(perm);
      for (const ClassOperator& op : set) {
        const ComplexMatrix conjugated = matmul(matmul(p, op.matrix()), dagger(p));
        bool found = false;
        for (const ClassOperator& other : set)
          if (max_abs_diff(conjugated, other.matrix()) <= 1e-12) {
            found = true;
            break;
          }
        CHECK(found);
      }
    }
  }
}

TEST_CASE("materialization cache returns stable results") {
  const ClassOperator a = epr_pair_operator(3, 1, 2);
  const ClassOperator b = epr_pair_operator(3, 1, 2);
  CHECK(&a.matrix() == &b.matrix());  // same cache entry
  CHECK(max_abs_diff(a.matrix(), b.matrix()) == 0.0);
}
