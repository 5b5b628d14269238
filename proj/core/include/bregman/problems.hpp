#pragma once

#include "bregman/linalg.hpp"
#include "bregman/prox.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace bregman {

enum class MatrixKind {
  Gaussian,            ///< iid standard normal entries
  NormalizedGaussian,  ///< Gaussian, then every column scaled to unit norm
  Bernoulli,           ///< iid +1 / -1 entries
};

enum class SignalKind {
  Gaussian,  ///< nonzeros iid standard normal
  Uniform,   ///< nonzeros iid uniform on [-1, 1]
};

std::string_view to_string(MatrixKind kind);
std::string_view to_string(SignalKind kind);
MatrixKind matrix_kind_from_string(std::string_view name);
SignalKind signal_kind_from_string(std::string_view name);

struct BpGenMeta {
  MatrixKind matrix = MatrixKind::Gaussian;
  SignalKind signal = SignalKind::Gaussian;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t s = 0;
  std::uint64_t seed = 0;
  bool nonnegative = false;  ///< nonzeros replaced by their absolute values
};

/// min J(x) s.t. a x = b.
struct BasisPursuitProblem {
  DenseMatrix a;
  RealVector b;
  std::optional<RealVector> x_true;
  std::optional<BpGenMeta> meta;

  std::size_t rows() const { return static_cast<std::size_t>(a.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(a.cols()); }
};

struct McGenMeta {
  std::uint64_t seed = 0;
  double fr = 0.0;  ///< requested degrees-of-freedom ratio
};

/// min ||X||_* s.t. X_ij = M_ij on the observed set, for an n x n unknown.
struct MatrixCompletionProblem {
  std::size_t n = 0;
  std::size_t r = 0;
  std::vector<std::uint64_t> omega;  ///< sorted row-major linear indices i * n + j
  RealVector observed;               ///< M on omega, same order
  std::optional<DenseMatrix> m_true;
  std::optional<McGenMeta> meta;

  std::size_t samples() const { return omega.size(); }
  /// p / n^2
  double sampling_ratio() const;
  /// r (2n - r) / p
  double dof_ratio() const;

  /// P_Omega(x): entries of x on omega, in omega order.
  RealVector restrict(const DenseMatrix& x) const;
  /// Dense n x n matrix equal to `values` on omega and zero elsewhere.
  DenseMatrix scatter(const RealVector& values) const;

  /// Throws InputError if omega is out of range, unsorted or has duplicates,
  /// or if observed has the wrong length.
  void validate() const;
};

namespace problems {

/// Basis pursuit instance: a per `matrix`, support of size s drawn uniformly
/// without replacement, nonzeros per `signal`, b = a x_true.
/// Requires 0 < s <= m <= n. One RngStream seeded with `seed` produces, in
/// order, the matrix entries (row-major), the support, then the nonzero values.
BasisPursuitProblem gen_bp(MatrixKind matrix, SignalKind signal, std::size_t n, std::size_t m,
                           std::size_t s, std::uint64_t seed, bool nonnegative = false);

/// Rank-r completion instance: M = M_L M_R^T with Gaussian n x r factors and
/// p = round(r (2n - r) / fr) entries observed uniformly without replacement.
/// Requires 0 < r < n and 0 < fr < 1; throws InputError when p > n^2.
MatrixCompletionProblem gen_mc(std::size_t n, std::size_t r, double fr, std::uint64_t seed);

/// Number of observed entries requested by gen_mc.
std::size_t mc_sample_count(std::size_t n, std::size_t r, double fr);

struct DualEvaluation {
  double value = 0.0;   ///< G_mu(y)
  RealVector w_star;    ///< argmin_w J(w) + ||w||^2 / (2 mu) - <y, a w - b>
  RealVector gradient;  ///< a w_star - b
};

/// G_mu(y) = -{J(w*) + ||w*||^2 / (2 mu) - <y, a w* - b>} for J in {L1, L1NonNeg}.
DualEvaluation dual_objective(const RealVector& y, const BasisPursuitProblem& problem, double mu,
                              ObjectiveKind objective = ObjectiveKind::L1);

/// L_mu(x, y) = J(x) + ||x||^2 / (2 mu) - <y, a x - b>.
double lagrangian(const RealVector& x, const RealVector& y, const BasisPursuitProblem& problem,
                  double mu, ObjectiveKind objective = ObjectiveKind::L1);

/// Upper bound mu ||a||^2 on the Lipschitz constant of grad G_mu.
double lipschitz_bound(const BasisPursuitProblem& problem, double mu);
/// mu, since ||P_Omega|| = 1.
double lipschitz_bound(const MatrixCompletionProblem& problem, double mu);

}  // namespace problems
}  // namespace bregman
