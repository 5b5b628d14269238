#include "bregman/problems.hpp"

#include "bregman/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace bregman {

std::string_view to_string(MatrixKind kind) {
  switch (kind) {
    case MatrixKind::Gaussian: return "gaussian";
    case MatrixKind::NormalizedGaussian: return "normalized-gaussian";
    case MatrixKind::Bernoulli: return "bernoulli";
  }
  return "unknown";
}

std::string_view to_string(SignalKind kind) {
  return kind == SignalKind::Gaussian ? "gaussian" : "uniform";
}

MatrixKind matrix_kind_from_string(std::string_view name) {
  if (name == "gaussian") return MatrixKind::Gaussian;
  if (name == "normalized-gaussian") return MatrixKind::NormalizedGaussian;
  if (name == "bernoulli") return MatrixKind::Bernoulli;
  throw InputError("unknown matrix kind '" + std::string(name) + "'");
}

SignalKind signal_kind_from_string(std::string_view name) {
  if (name == "gaussian") return SignalKind::Gaussian;
  if (name == "uniform") return SignalKind::Uniform;
  throw InputError("unknown signal kind '" + std::string(name) + "'");
}

double MatrixCompletionProblem::sampling_ratio() const {
  return static_cast<double>(omega.size()) / (static_cast<double>(n) * static_cast<double>(n));
}

double MatrixCompletionProblem::dof_ratio() const {
  const double dof = static_cast<double>(r) * (2.0 * static_cast<double>(n) - static_cast<double>(r));
  return dof / static_cast<double>(omega.size());
}

RealVector MatrixCompletionProblem::restrict(const DenseMatrix& x) const {
  RealVector out(static_cast<Eigen::Index>(omega.size()));
  const double* data = x.data();
  for (std::size_t t = 0; t < omega.size(); ++t) out[static_cast<Eigen::Index>(t)] = data[omega[t]];
  return out;
}

DenseMatrix MatrixCompletionProblem::scatter(const RealVector& values) const {
  DenseMatrix out = DenseMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  double* data = out.data();
  for (std::size_t t = 0; t < omega.size(); ++t) data[omega[t]] = values[static_cast<Eigen::Index>(t)];
  return out;
}

void MatrixCompletionProblem::validate() const {
  if (n == 0) throw InputError("matrix completion: n must be positive");
  if (observed.size() != static_cast<Eigen::Index>(omega.size())) {
    throw InputError("matrix completion: observed values and index set differ in length");
  }
  const std::uint64_t total = static_cast<std::uint64_t>(n) * n;
  for (std::size_t t = 0; t < omega.size(); ++t) {
    if (omega[t] >= total) throw InputError("matrix completion: index out of range");
    if (t > 0 && omega[t] <= omega[t - 1]) {
      throw InputError("matrix completion: index set must be sorted without duplicates");
    }
  }
  if (m_true && (m_true->rows() != static_cast<Eigen::Index>(n) ||
                 m_true->cols() != static_cast<Eigen::Index>(n))) {
    throw InputError("matrix completion: ground truth has wrong shape");
  }
}

namespace problems {

namespace {

// First `count` entries of a seeded partial Fisher-Yates shuffle of 0..total-1.
std::vector<std::uint64_t> sample_without_replacement(linalg::RngStream& rng, std::uint64_t total,
                                                      std::uint64_t count) {
  std::vector<std::uint64_t> pool(total);
  std::iota(pool.begin(), pool.end(), std::uint64_t{0});
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t j = i + rng.uniform_index(total - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

}  // namespace

BasisPursuitProblem gen_bp(MatrixKind matrix, SignalKind signal, std::size_t n, std::size_t m,
                           std::size_t s, std::uint64_t seed, bool nonnegative) {
  if (s == 0 || s > m || m > n) {
    throw InputError("gen_bp: need 0 < s <= m <= n (got n=" + std::to_string(n) +
                     ", m=" + std::to_string(m) + ", s=" + std::to_string(s) + ")");
  }
  linalg::RngStream rng(seed);
  BasisPursuitProblem problem;
  problem.a.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < problem.a.rows(); ++i) {
    for (Eigen::Index j = 0; j < problem.a.cols(); ++j) {
      problem.a(i, j) = matrix == MatrixKind::Bernoulli ? rng.bernoulli_pm1() : rng.gaussian();
    }
  }
  if (matrix == MatrixKind::NormalizedGaussian) {
    for (Eigen::Index j = 0; j < problem.a.cols(); ++j) {
      problem.a.col(j) /= problem.a.col(j).norm();
    }
  }

  const auto support = sample_without_replacement(rng, n, s);
  RealVector x = RealVector::Zero(static_cast<Eigen::Index>(n));
  for (std::uint64_t index : support) {
    double value = signal == SignalKind::Gaussian ? rng.gaussian() : rng.uniform_pm1();
    // A zero draw would shrink the support; redraw (probability ~2^-53).
    while (value == 0.0) value = signal == SignalKind::Gaussian ? rng.gaussian() : rng.uniform_pm1();
    x[static_cast<Eigen::Index>(index)] = nonnegative ? std::abs(value) : value;
  }
  problem.b = linalg::matvec(problem.a, x);
  problem.x_true = std::move(x);
  problem.meta = BpGenMeta{matrix, signal, n, m, s, seed, nonnegative};
  return problem;
}

std::size_t mc_sample_count(std::size_t n, std::size_t r, double fr) {
  if (!(fr > 0.0 && fr < 1.0)) throw InputError("gen_mc: FR must lie in (0, 1)");
  const double dof = static_cast<double>(r) * (2.0 * static_cast<double>(n) - static_cast<double>(r));
  return static_cast<std::size_t>(std::llround(dof / fr));
}

MatrixCompletionProblem gen_mc(std::size_t n, std::size_t r, double fr, std::uint64_t seed) {
  if (r == 0 || r >= n) throw InputError("gen_mc: need 0 < r < n");
  const std::size_t p = mc_sample_count(n, r, fr);
  if (p > n * n) {
    throw InputError("gen_mc: FR too small for dimension (p=" + std::to_string(p) +
                     " exceeds n^2=" + std::to_string(n * n) + ")");
  }
  linalg::RngStream rng(seed);
  const auto rows = static_cast<Eigen::Index>(n);
  const auto rank = static_cast<Eigen::Index>(r);
  DenseMatrix left(rows, rank);
  DenseMatrix right(rows, rank);
  for (auto& value : left.reshaped()) value = rng.gaussian();
  for (auto& value : right.reshaped()) value = rng.gaussian();

  MatrixCompletionProblem problem;
  problem.n = n;
  problem.r = r;
  problem.m_true = DenseMatrix(left * right.transpose());
  problem.omega = sample_without_replacement(rng, static_cast<std::uint64_t>(n) * n, p);
  std::sort(problem.omega.begin(), problem.omega.end());
  problem.observed = problem.restrict(*problem.m_true);
  problem.meta = McGenMeta{seed, fr};
  return problem;
}

DualEvaluation dual_objective(const RealVector& y, const BasisPursuitProblem& problem, double mu,
                              ObjectiveKind objective) {
  DualEvaluation out;
  out.w_star = prox::scaled_prox(objective, linalg::matvec_t(problem.a, y), mu);
  out.gradient = linalg::matvec(problem.a, out.w_star) - problem.b;
  out.value = -(prox::objective_value(objective, out.w_star) + out.w_star.squaredNorm() / (2.0 * mu) -
                y.dot(out.gradient));
  return out;
}

double lagrangian(const RealVector& x, const RealVector& y, const BasisPursuitProblem& problem,
                  double mu, ObjectiveKind objective) {
  if (x.size() != problem.a.cols() || y.size() != problem.a.rows()) {
    throw InputError("lagrangian: dimensions do not match the problem");
  }
  const RealVector residual = linalg::matvec(problem.a, x) - problem.b;
  return prox::objective_value(objective, x) + x.squaredNorm() / (2.0 * mu) - y.dot(residual);
}

double lipschitz_bound(const BasisPursuitProblem& problem, double mu) {
  return mu * linalg::spectral_norm_sq(problem.a).value;
}

double lipschitz_bound(const MatrixCompletionProblem&, double mu) { return mu; }

}  // namespace problems
}  // namespace bregman
