#include "bregman/errors.hpp"
#include "bregman/solvers.hpp"

#include <sstream>

namespace bregman::solvers {

RealVector solve_l1_regularized(const BasisPursuitProblem& problem, const RealVector& c,
                                const RealVector& start, const InnerSolveOptions& options) {
  if (!(options.tol > 0.0)) throw InputError("inner solve: tolerance must be positive");
  const double norm_a_sq = options.norm_a_sq > 0.0 ? options.norm_a_sq
                                                   : linalg::spectral_norm_sq(problem.a).value;
  const double step = 1.0 / norm_a_sq;
  const DenseMatrix& a = problem.a;

  RealVector x = start;
  RealVector residual(a.rows());
  RealVector gradient(a.cols());
  double map_norm = 0.0;
  for (std::size_t it = 0; it < options.max_iters; ++it) {
    residual.noalias() = a * x;
    residual -= problem.b;
    gradient.noalias() = a.transpose() * residual;
    gradient -= c;
    RealVector next = prox::shrink_vec(x - step * gradient, step);
    map_norm = (x - next).norm() / step;
    x = std::move(next);
    if (map_norm <= options.tol) return x;
  }
  std::ostringstream msg;
  msg << "inner l1-regularized solve stopped after " << options.max_iters
      << " iterations with gradient-map norm " << map_norm << " > " << options.tol;
  throw InnerSolveError(msg.str(), map_norm);
}

LbPrimalState bregman_exact_step(const LbPrimalState& state, const BasisPursuitProblem& problem,
                                 const InnerSolveOptions& inner) {
  LbPrimalState next;
  next.x = solve_l1_regularized(problem, state.p, state.x, inner);
  next.p = state.p - linalg::matvec_t(problem.a, linalg::matvec(problem.a, next.x) - problem.b);
  next.k = state.k + 1;
  return next;
}

AugLagState auglag_step(const AugLagState& state, const BasisPursuitProblem& problem,
                        const InnerSolveOptions& inner) {
  AugLagState next;
  next.x = solve_l1_regularized(problem, linalg::matvec_t(problem.a, state.lambda), state.x, inner);
  next.lambda = state.lambda - (linalg::matvec(problem.a, next.x) - problem.b);
  next.k = state.k + 1;
  return next;
}

}  // namespace bregman::solvers
