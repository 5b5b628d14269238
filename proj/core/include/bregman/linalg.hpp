#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace bregman {

/// Dense row-major matrix of 64-bit reals. Row-major keeps A*x a sequence of
/// contiguous dot products and A^T*y a sequence of contiguous axpys.
using DenseMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RealVector = Eigen::VectorXd;

namespace linalg {

/// a * x. Throws InputError on a dimension mismatch.
RealVector matvec(const DenseMatrix& a, const RealVector& x);

/// a^T * y without forming the transpose. Throws InputError on a dimension mismatch.
RealVector matvec_t(const DenseMatrix& a, const RealVector& y);

bool all_finite(const DenseMatrix& a);
bool all_finite(const RealVector& v);

struct SpectralNormEstimate {
  double value = 0.0;  ///< estimate of sigma_max(a)^2
  std::size_t iterations = 0;
  bool converged = false;
};

/// Power iteration on a^T a from the normalized all-ones vector.
///
/// If the start vector lies in the null space of a, the iteration restarts
/// from the alternating-sign vector and then from the coordinate vectors in
/// order, so the result is a deterministic function of `a`. Convergence is
/// declared when the geometric extrapolation of the remaining Rayleigh-quotient
/// increase is below `tol` relative to the current estimate. When `max_iters`
/// is exhausted the best estimate is returned with `converged == false`.
///
/// Throws InputError if `a` is zero or `tol <= 0`.
SpectralNormEstimate spectral_norm_sq(const DenseMatrix& a, double tol = 1e-12,
                                      std::size_t max_iters = 20000);

struct SvdFactors {
  DenseMatrix u;      ///< rows(input) x k, orthonormal columns
  RealVector sigma;   ///< k = min(rows, cols) values, nonincreasing, nonnegative
  DenseMatrix vt;     ///< k x cols(input), orthonormal rows

  DenseMatrix reconstruct() const;
};

/// Dense SVD (divide and conquer, Jacobi for small blocks). Diagonal input
/// is factored in closed form, exactly.
/// Throws InputError on non-finite input and NumericalError if the
/// decomposition fails to converge.
SvdFactors svd(const DenseMatrix& y);

/// Seeded sample stream. The generator is std::mt19937_64, whose output
/// sequence is fixed by the C++ standard; every derived law below is computed
/// here rather than through <random> distributions, which are
/// implementation-defined.
class RngStream {
public:
  static constexpr std::string_view kAlgorithm = "mt19937_64";

  explicit RngStream(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on [-1, 1) as 2u - 1.
  double uniform_pm1() { return 2.0 * uniform01() - 1.0; }

  /// +1 or -1 with equal probability.
  double bernoulli_pm1() { return (next_u64() >> 63) != 0 ? 1.0 : -1.0; }

  /// Standard normal via Box-Muller; the second variate of each pair is cached.
  double gaussian();

  /// Unbiased integer in [0, bound). bound must be positive.
  std::uint64_t uniform_index(std::uint64_t bound);

private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

RealVector sample_gaussian(RngStream& rng, std::size_t n);
double sample_uniform_pm1(RngStream& rng);
double sample_bernoulli_pm1(RngStream& rng);

}  // namespace linalg
}  // namespace bregman
