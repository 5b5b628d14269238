#include "bregman/errors.hpp"
#include "bregman/solvers.hpp"

namespace bregman::solvers {

namespace {

void require_nuclear(const SolverConfig& config, const char* who) {
  if (config.objective != ObjectiveKind::Nuclear) {
    throw InputError(std::string(who) + ": matrix completion requires the nuclear objective");
  }
}

// P_Omega(X - M) as a dense matrix.
DenseMatrix observed_residual(const MatrixCompletionProblem& problem, const DenseMatrix& x) {
  return problem.scatter(problem.restrict(x) - problem.observed);
}

}  // namespace

McState initial_mc(const MatrixCompletionProblem& problem) {
  const auto n = static_cast<Eigen::Index>(problem.n);
  const DenseMatrix zero = DenseMatrix::Zero(n, n);
  return {zero, zero, zero, zero, 0};
}

McState mc_lb_step(const McState& state, const MatrixCompletionProblem& problem,
                   const SolverConfig& config) {
  require_nuclear(config, "mc_lb_step");
  const double mu = config.mu;
  const DenseMatrix gradient_step = config.tau * observed_residual(problem, state.x);

  McState next;
  next.x = prox::shrink_matrix(state.x - mu * (gradient_step - state.p), mu);
  next.p = state.p - gradient_step - (next.x - state.x) / mu;
  next.x_tilde = next.x;
  next.p_tilde = next.p;
  next.k = state.k + 1;
  return next;
}

McState mc_alb_step(const McState& state, const MatrixCompletionProblem& problem,
                    const SolverConfig& config) {
  require_nuclear(config, "mc_alb_step");
  const double mu = config.mu;
  const double a_k = config.schedule.alpha(state.k);
  const DenseMatrix tilde_step = config.tau * observed_residual(problem, state.x_tilde);

  McState next;
  if (config.mc_shrink_arg == McShrinkArg::Tilde) {
    next.x = prox::shrink_matrix(state.x_tilde - mu * (tilde_step - state.p_tilde), mu);
  } else {
    const DenseMatrix plain_step = config.tau * observed_residual(problem, state.x);
    next.x = prox::shrink_matrix(state.x - mu * (plain_step - state.p), mu);
  }
  next.p = state.p_tilde - tilde_step - (next.x - state.x_tilde) / mu;
  next.x_tilde = a_k * next.x + (1.0 - a_k) * state.x;
  next.p_tilde = a_k * next.p + (1.0 - a_k) * state.p;
  next.k = state.k + 1;
  return next;
}

}  // namespace bregman::solvers
