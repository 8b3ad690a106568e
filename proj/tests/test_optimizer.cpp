#include <catch2/catch.hpp>

#include "qconcur/optimize.hpp"

using namespace qconcur;

namespace {

LocalUnitary random_local_unitary(int m, Rng& rng) {
  LocalUnitary lu;
  lu.qubit_count = m;
  for (int j = 0; j < m; ++j)
    lu.factors.push_back(unitary_from_angles(rng.uniform(0.0, kPi), rng.uniform(0.0, 2.0 * kPi),
                                             rng.uniform(0.0, 2.0 * kPi)));
  return lu;
}

}  // namespace

TEST_CASE("angle parameterization produces unitaries") {
  Rng rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const ComplexMatrix u = unitary_from_angles(rng.uniform(0.0, kPi), rng.uniform(0.0, 2.0 * kPi),
                                                rng.uniform(0.0, 2.0 * kPi));
    CHECK(max_abs_diff(matmul(dagger(u), u), ComplexMatrix::identity(2)) < 1e-14);
  }
  CHECK(max_abs_diff(unitary_from_angles(0.0, 0.0, 0.0), ComplexMatrix::identity(2)) == 0.0);
}

TEST_CASE("gate application matches the full Kronecker product") {
  Rng rng(62);
  const int m = 3;
  const PureState psi = random_pure(m, 1001);
  const LocalUnitary lu = random_local_unitary(m, rng);
  const PureState fast = apply_local_unitary(psi, lu);
  const ComplexMatrix full = kron(kron(lu.factors[0], lu.factors[1]), lu.factors[2]);
  const std::vector<Complex> slow = matvec(full, psi.amplitudes);
  for (std::size_t i = 0; i < slow.size(); ++i) CHECK(std::abs(fast.amplitudes[i] - slow[i]) < 1e-13);
}

TEST_CASE("local unitary validation") {
  LocalUnitary lu;
  lu.qubit_count = 2;
  lu.factors = {identity2(), Complex{2.0, 0.0} * identity2()};
  CHECK_THROWS_AS(apply_local_unitary(w_state(2), lu), ContractViolation);
}

TEST_CASE("GHZ state is already maximal") {
  OptimizeBudget small;
  small.restarts = 4;
  small.iterations = 60;
  const auto [report, lu] = optimize_ghz_local_unitaries(ghz_state(3, +1), {}, small);
  CHECK(report.aggregate == Approx(1.0).margin(1e-9));
  REQUIRE(report.optimizer.has_value());
  CHECK(report.optimizer->restarts == 4);
}

TEST_CASE("product states stay at zero under any local unitary") {
  const PureState psi = product_state({{Complex{1.0, 0.0}, Complex{0.0, 0.0}},
                                       {Complex{0.6, 0.0}, Complex{0.0, 0.8}},
                                       {Complex{0.0, 1.0}, Complex{0.0, 0.0}}});
  OptimizeBudget small;
  small.restarts = 6;
  small.iterations = 90;
  const auto [report, lu] = optimize_ghz_local_unitaries(psi, {}, small);
  CHECK(report.aggregate == Approx(0.0).margin(1e-9));
}

TEST_CASE("optimizer recovers a randomly rotated GHZ state") {
  Rng rng(63);
  const PureState rotated = apply_local_unitary(ghz_state(3, +1), random_local_unitary(3, rng));
  const auto [report, lu] = optimize_ghz_local_unitaries(rotated);
  CHECK(report.aggregate >= 0.99);
}

TEST_CASE("optimizer never loses to the unoptimized value") {
  Rng rng(64);
  OptimizeBudget tiny;
  tiny.restarts = 2;
  tiny.iterations = 20;
  for (int trial = 0; trial < 5; ++trial) {
    const PureState psi = random_pure(3, rng.integer());
    const double unoptimized = ghz_class_pure(psi).aggregate;
    const auto [report, lu] = optimize_ghz_local_unitaries(psi, {}, tiny);
    CHECK(report.aggregate >= unoptimized - 1e-12);
  }
}

TEST_CASE("optimizer is deterministic per seed") {
  const PureState psi = random_pure(3, 777);
  OptimizeBudget budget;
  budget.restarts = 3;
  budget.iterations = 40;
  budget.seed = 2024;
  const auto [r1, u1] = optimize_ghz_local_unitaries(psi, {}, budget);
  const auto [r2, u2] = optimize_ghz_local_unitaries(psi, {}, budget);
  CHECK(r1.aggregate == r2.aggregate);
  REQUIRE(r1.optimizer.has_value());
  REQUIRE(r2.optimizer.has_value());
  CHECK(r1.optimizer->best_angles == r2.optimizer->best_angles);
  for (int j = 0; j < 3; ++j) CHECK(max_abs_diff(u1.factors[static_cast<std::size_t>(j)], u2.factors[static_cast<std::size_t>(j)]) == 0.0);

  // the returned factors satisfy the unitarity invariant
  for (const ComplexMatrix& u : u1.factors)
    CHECK(max_abs_diff(matmul(dagger(u), u), ComplexMatrix::identity(2)) <= tol::kUnitary);
}

TEST_CASE("optimizer budget validation") {
  OptimizeBudget bad;
  bad.restarts = 0;
  CHECK_THROWS_AS(optimize_ghz_local_unitaries(ghz_state(3, +1), {}, bad), ContractViolation);
  CHECK_THROWS_AS(optimize_ghz_local_unitaries(w_state(2), {}, {}), ContractViolation);
}
