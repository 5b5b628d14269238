#pragma once

#include "bregman/linalg.hpp"

#include <string_view>

namespace bregman {

/// The convex objective J being minimized subject to the linear constraints.
enum class ObjectiveKind {
  L1,        ///< J(x) = ||x||_1
  L1NonNeg,  ///< J(x) = ||x||_1 restricted to x >= 0
  Nuclear,   ///< J(X) = ||X||_*
};

std::string_view to_string(ObjectiveKind kind);
ObjectiveKind objective_from_string(std::string_view name);

namespace prox {

/// Soft threshold sgn(z) * max(|z| - alpha, 0). Coordinates with |z_i| == alpha map to 0.
RealVector shrink_vec(const RealVector& z, double alpha);

/// Singular value soft threshold U diag(max(sigma - gamma, 0)) V^T.
DenseMatrix shrink_matrix(const DenseMatrix& y, double gamma);

/// argmin_{w >= 0} ||w||_1 + ||w - mu v||^2 / (2 mu), i.e. mu * max(v - 1, 0).
RealVector prox_l1_nonneg(const RealVector& v, double mu);

/// argmin_w J(w) + ||w - mu v||^2 / (2 mu) for a vector objective.
/// This is the w-step shared by every dual and v-form iteration.
RealVector scaled_prox(ObjectiveKind kind, const RealVector& v, double mu);

/// J(x). L1NonNeg returns +inf if any coordinate is negative.
double objective_value(ObjectiveKind kind, const RealVector& x);

double nuclear_norm(const DenseMatrix& x);

/// Bregman distance ||u||_1 - ||v||_1 - <p, u - v> of the l1 norm.
///
/// `p` must be a subgradient of ||.||_1 at `v` to within `subgradient_tol`:
/// |p_i| <= 1 everywhere and p_i == sgn(v_i) where v_i != 0. Otherwise a
/// PreconditionError names the first offending coordinate.
double bregman_distance_l1(const RealVector& u, const RealVector& v, const RealVector& p,
                           double subgradient_tol = 1e-9);

/// Index of the first coordinate where p fails to be an l1 subgradient at v,
/// or -1 if p is valid.
Eigen::Index first_invalid_subgradient(const RealVector& v, const RealVector& p, double tol = 1e-9);

}  // namespace prox
}  // namespace bregman
