#include "bregman/errors.hpp"
#include "bregman/solvers.hpp"

namespace bregman::solvers {

AlbState initial_alb(const BasisPursuitProblem& problem) {
  const auto n = problem.a.cols();
  return {RealVector::Zero(n), RealVector::Zero(n), RealVector::Zero(n), RealVector::Zero(n), 0};
}

AccelDualState initial_accel_dual(const BasisPursuitProblem& problem, double tau) {
  RealVector y0 = tau * problem.b;
  return {y0, y0, 0};
}

AlbVState initial_alb_vform(const BasisPursuitProblem& problem, double tau) {
  RealVector v0 = tau * linalg::matvec_t(problem.a, problem.b);
  return {v0, v0, 0};
}

AlbState alb_step_primal(const AlbState& state, const BasisPursuitProblem& problem,
                         const SolverConfig& config) {
  if (config.objective != ObjectiveKind::L1) {
    throw InputError("alb_step_primal: the (x, p) form requires the l1 objective");
  }
  const double mu = config.mu;
  const double a_k = config.schedule.alpha(state.k);
  const RealVector gradient_step =
      config.tau * linalg::matvec_t(problem.a, linalg::matvec(problem.a, state.x_tilde) - problem.b);

  AlbState next;
  next.x = mu * prox::shrink_vec(state.p_tilde - gradient_step + state.x_tilde / mu, 1.0);
  next.p = state.p_tilde - gradient_step - (next.x - state.x_tilde) / mu;
  next.x_tilde = a_k * next.x + (1.0 - a_k) * state.x;
  next.p_tilde = a_k * next.p + (1.0 - a_k) * state.p;
  next.k = state.k + 1;
  return next;
}

StepOutput<AccelDualState> accel_dual_step(const AccelDualState& state,
                                           const BasisPursuitProblem& problem,
                                           const SolverConfig& config) {
  if (config.objective == ObjectiveKind::Nuclear) {
    throw InputError("accel_dual_step: nuclear objective needs a matrix-completion problem");
  }
  const double a_k = config.schedule.alpha(state.k);
  StepOutput<AccelDualState> out;
  out.w = prox::scaled_prox(config.objective, linalg::matvec_t(problem.a, state.y_tilde), config.mu);
  out.residual = linalg::matvec(problem.a, out.w) - problem.b;
  out.state.y = state.y_tilde - config.tau * out.residual;
  out.state.y_tilde = a_k * out.state.y + (1.0 - a_k) * state.y;
  out.state.k = state.k + 1;
  return out;
}

StepOutput<AlbVState> alb_step_vform(const AlbVState& state, const BasisPursuitProblem& problem,
                                     const SolverConfig& config) {
  if (config.objective == ObjectiveKind::Nuclear) {
    throw InputError("alb_step_vform: nuclear objective needs a matrix-completion problem");
  }
  const double a_k = config.schedule.alpha(state.k);
  StepOutput<AlbVState> out;
  out.w = prox::scaled_prox(config.objective, state.v_tilde, config.mu);
  out.residual = linalg::matvec(problem.a, out.w) - problem.b;
  out.state.v = state.v_tilde - config.tau * linalg::matvec_t(problem.a, out.residual);
  out.state.v_tilde = a_k * out.state.v + (1.0 - a_k) * state.v;
  out.state.k = state.k + 1;
  return out;
}

}  // namespace bregman::solvers
