#include "bregman/linalg.hpp"

#include "bregman/errors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace bregman::linalg {

namespace {

std::string dims(Eigen::Index rows, Eigen::Index cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

bool is_diagonal(const DenseMatrix& y) {
  for (Eigen::Index i = 0; i < y.rows(); ++i) {
    for (Eigen::Index j = 0; j < y.cols(); ++j) {
      if (i != j && y(i, j) != 0.0) return false;
    }
  }
  return true;
}

// Closed-form factors of a (possibly rectangular) diagonal matrix: the
// singular values are |d_i| and the singular vectors are signed unit vectors,
// so no rounding enters.
SvdFactors diagonal_svd(const DenseMatrix& y) {
  const Eigen::Index k = std::min(y.rows(), y.cols());
  std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
  for (Eigen::Index i = 0; i < k; ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(y(a, a)) > std::abs(y(b, b));
  });
  SvdFactors out;
  out.u = DenseMatrix::Zero(y.rows(), k);
  out.sigma.resize(k);
  out.vt = DenseMatrix::Zero(k, y.cols());
  for (Eigen::Index l = 0; l < k; ++l) {
    const Eigen::Index i = order[static_cast<std::size_t>(l)];
    const double d = y(i, i);
    out.sigma[l] = std::abs(d);
    out.u(i, l) = std::signbit(d) ? -1.0 : 1.0;
    out.vt(l, i) = 1.0;
  }
  return out;
}

// One power-iteration sweep: returns ||a v||^2 and writes a^T a v to `next`.
double apply_normal(const DenseMatrix& a, const RealVector& v, RealVector& av, RealVector& next) {
  av.noalias() = a * v;
  next.noalias() = a.transpose() * av;
  return av.squaredNorm();
}

}  // namespace

RealVector matvec(const DenseMatrix& a, const RealVector& x) {
  if (a.cols() != x.size()) {
    throw InputError("matvec: matrix is " + dims(a.rows(), a.cols()) + " but vector has length " +
                     std::to_string(x.size()));
  }
  RealVector out(a.rows());
  out.noalias() = a * x;
  return out;
}

RealVector matvec_t(const DenseMatrix& a, const RealVector& y) {
  if (a.rows() != y.size()) {
    throw InputError("matvec_t: matrix is " + dims(a.rows(), a.cols()) +
                     " but vector has length " + std::to_string(y.size()));
  }
  RealVector out(a.cols());
  out.noalias() = a.transpose() * y;
  return out;
}

bool all_finite(const DenseMatrix& a) { return a.allFinite(); }
bool all_finite(const RealVector& v) { return v.allFinite(); }

SpectralNormEstimate spectral_norm_sq(const DenseMatrix& a, double tol, std::size_t max_iters) {
  if (!(tol > 0.0)) throw InputError("spectral_norm_sq: tol must be positive");
  const Eigen::Index n = a.cols();
  if (a.rows() == 0 || n == 0) throw InputError("spectral_norm_sq: empty matrix");

  RealVector v = RealVector::Ones(n) / std::sqrt(static_cast<double>(n));
  RealVector av(a.rows());
  RealVector next(n);
  double rho = apply_normal(a, v, av, next);

  // Deterministic restarts when the start vector is annihilated.
  Eigen::Index restart = -1;
  while (!(next.norm() > 0.0)) {
    if (restart == -1) {
      for (Eigen::Index i = 0; i < n; ++i) v[i] = (i % 2 == 0) ? 1.0 : -1.0;
      v.normalize();
    } else if (restart < n) {
      v.setZero();
      v[restart] = 1.0;
    } else {
      throw InputError("spectral_norm_sq: matrix is zero");
    }
    ++restart;
    rho = apply_normal(a, v, av, next);
  }

  SpectralNormEstimate est;
  est.value = rho;
  double prev_delta = -1.0;
  for (std::size_t it = 1; it <= max_iters; ++it) {
    v = next / next.norm();
    const double updated = apply_normal(a, v, av, next);
    const double delta = updated - rho;
    rho = std::max(rho, updated);
    est.value = rho;
    est.iterations = it;
    if (!(next.norm() > 0.0)) {
      est.converged = true;
      break;
    }
    if (it >= 3) {
      if (delta <= 0.0) {
        est.converged = true;
        break;
      }
      // Geometric tail of the remaining increase: delta * q / (1 - q).
      double q = prev_delta > 0.0 ? delta / prev_delta : 0.0;
      q = std::clamp(q, 0.0, 1.0 - 1e-12);
      if (delta * q / (1.0 - q) <= tol * rho && delta <= tol * rho) {
        est.converged = true;
        break;
      }
    }
    prev_delta = delta;
  }
  return est;
}

DenseMatrix SvdFactors::reconstruct() const {
  return u * sigma.asDiagonal() * vt;
}

SvdFactors svd(const DenseMatrix& y) {
  if (!y.allFinite()) throw InputError("svd: input has non-finite entries");
  SvdFactors out;
  const Eigen::Index k = std::min(y.rows(), y.cols());
  if (k == 0) {
    out.u.resize(y.rows(), 0);
    out.sigma.resize(0);
    out.vt.resize(0, y.cols());
    return out;
  }
  if (is_diagonal(y)) return diagonal_svd(y);
  Eigen::BDCSVD<Eigen::MatrixXd> dec(Eigen::MatrixXd(y), Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (dec.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "svd: decomposition failed to converge for " << dims(y.rows(), y.cols())
        << " matrix with Frobenius norm " << y.norm() << " and max |entry| "
        << y.cwiseAbs().maxCoeff();
    throw NumericalError(msg.str());
  }
  out.u = dec.matrixU();
  out.sigma = dec.singularValues();
  out.vt = dec.matrixV().transpose();
  return out;
}

double RngStream::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // u1 in (0, 1] keeps the logarithm finite.
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::uint64_t RngStream::uniform_index(std::uint64_t bound) {
  if (bound == 0) throw InputError("uniform_index: bound must be positive");
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return r % bound;
  }
}

RealVector sample_gaussian(RngStream& rng, std::size_t n) {
  RealVector out(static_cast<Eigen::Index>(n));
  for (auto& value : out) value = rng.gaussian();
  return out;
}

double sample_uniform_pm1(RngStream& rng) { return rng.uniform_pm1(); }

double sample_bernoulli_pm1(RngStream& rng) { return rng.bernoulli_pm1(); }

}  // namespace bregman::linalg
