#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace qconcur {

using Complex = std::complex<double>;

// A documented precondition or object invariant was violated by the caller.
class ContractViolation : public std::runtime_error {
 public:
  explicit ContractViolation(const std::string& what) : std::runtime_error(what) {}
};

// An operation would exceed the configured desk-scale dimension limit.
class CapacityError : public ContractViolation {
 public:
  explicit CapacityError(const std::string& what) : ContractViolation(what) {}
};

// External input (state files, report files) could not be parsed.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

namespace tol {
inline constexpr double kHermitian = 1e-10;   // max-abs deviation from the adjoint
inline constexpr double kPsdClamp = 1e-10;    // eigenvalues above this are treated as 0
inline constexpr double kPsdReject = -1e-8;   // eigenvalues below this are an error
// Eigenvalues below kRelativeRank times the largest one are numerically
// zero; treating them as such keeps square roots from amplifying rounding
// noise (sqrt(1e-17) would otherwise contribute 3e-9).
inline constexpr double kRelativeRank = 64.0 * 2.220446049250313e-16;
inline constexpr double kSqrtRoundTrip = 1e-8;
inline constexpr double kStateNorm = 1e-10;   // |Σ|α|² − 1| bound for pure states
inline constexpr double kTrace = 1e-10;       // |tr ρ − 1| bound for density matrices
inline constexpr double kWeightSum = 1e-10;   // ensemble weight-sum bound
inline constexpr double kUnitary = 1e-10;     // ‖U†U − I‖_max bound for local unitaries
}  // namespace tol

// Operators live in at most 2^12 dimensions (12 qubits at desk scale).
inline constexpr int kMaxOperatorDim = 1 << 12;

inline constexpr double kPi = 3.14159265358979323846;

// Deterministic random source. mt19937_64 plus hand-rolled transforms so a
// seed produces the same stream on every platform (the std distributions are
// implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1].
  double uniform_open() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t integer() { return engine_(); }

  // Standard normal via Box-Muller; consumes two uniforms per call.
  double gaussian() {
    const double u1 = uniform_open();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  Complex complex_gaussian() {
    const double u1 = uniform_open();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(2.0 * kPi * u2), r * std::sin(2.0 * kPi * u2)};
  }

  // Derives an independent stream, e.g. one per optimizer restart.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace qconcur
