#include "bregman/prox.hpp"

#include "bregman/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace bregman {

std::string_view to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::L1: return "l1";
    case ObjectiveKind::L1NonNeg: return "l1-nonneg";
    case ObjectiveKind::Nuclear: return "nuclear";
  }
  return "unknown";
}

ObjectiveKind objective_from_string(std::string_view name) {
  if (name == "l1") return ObjectiveKind::L1;
  if (name == "l1-nonneg") return ObjectiveKind::L1NonNeg;
  if (name == "nuclear") return ObjectiveKind::Nuclear;
  throw InputError("unknown objective '" + std::string(name) + "'");
}

namespace prox {

RealVector shrink_vec(const RealVector& z, double alpha) {
  if (!(alpha > 0.0)) throw InputError("shrink_vec: alpha must be positive");
  RealVector out(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double magnitude = std::abs(z[i]) - alpha;
    out[i] = magnitude > 0.0 ? std::copysign(magnitude, z[i]) : 0.0;
  }
  return out;
}

DenseMatrix shrink_matrix(const DenseMatrix& y, double gamma) {
  if (!(gamma > 0.0)) throw InputError("shrink_matrix: gamma must be positive");
  const linalg::SvdFactors f = linalg::svd(y);
  Eigen::Index kept = 0;
  while (kept < f.sigma.size() && f.sigma[kept] > gamma) ++kept;
  DenseMatrix out = DenseMatrix::Zero(y.rows(), y.cols());
  if (kept == 0) return out;
  const RealVector shrunk = f.sigma.head(kept).array() - gamma;
  out.noalias() = f.u.leftCols(kept) * shrunk.asDiagonal() * f.vt.topRows(kept);
  return out;
}

RealVector prox_l1_nonneg(const RealVector& v, double mu) {
  if (!(mu > 0.0)) throw InputError("prox_l1_nonneg: mu must be positive");
  return mu * (v.array() - 1.0).max(0.0).matrix();
}

RealVector scaled_prox(ObjectiveKind kind, const RealVector& v, double mu) {
  switch (kind) {
    case ObjectiveKind::L1: return mu * shrink_vec(v, 1.0);
    case ObjectiveKind::L1NonNeg: return prox_l1_nonneg(v, mu);
    case ObjectiveKind::Nuclear: break;
  }
  throw InputError("scaled_prox: nuclear objective applies to matrices only");
}

double objective_value(ObjectiveKind kind, const RealVector& x) {
  switch (kind) {
    case ObjectiveKind::L1: return x.lpNorm<1>();
    case ObjectiveKind::L1NonNeg:
      if ((x.array() < 0.0).any()) return std::numeric_limits<double>::infinity();
      return x.lpNorm<1>();
    case ObjectiveKind::Nuclear: break;
  }
  throw InputError("objective_value: nuclear objective applies to matrices only");
}

double nuclear_norm(const DenseMatrix& x) { return linalg::svd(x).sigma.sum(); }

Eigen::Index first_invalid_subgradient(const RealVector& v, const RealVector& p, double tol) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(p[i]) > 1.0 + tol) return i;
    if (v[i] != 0.0 && std::abs(p[i] - std::copysign(1.0, v[i])) > tol) return i;
  }
  return -1;
}

double bregman_distance_l1(const RealVector& u, const RealVector& v, const RealVector& p,
                           double subgradient_tol) {
  if (u.size() != v.size() || v.size() != p.size()) {
    throw InputError("bregman_distance_l1: vectors must have equal length");
  }
  const Eigen::Index bad = first_invalid_subgradient(v, p, subgradient_tol);
  if (bad >= 0) {
    throw PreconditionError("bregman_distance_l1: p is not a subgradient of ||.||_1 at v (coordinate " +
                            std::to_string(bad) + ": v=" + std::to_string(v[bad]) +
                            ", p=" + std::to_string(p[bad]) + ")");
  }
  return u.lpNorm<1>() - v.lpNorm<1>() - p.dot(u - v);
}

}  // namespace prox
}  // namespace bregman
