#include "bregman/errors.hpp"
#include "bregman/solvers.hpp"

namespace bregman::solvers {

namespace {

void require_l1(const SolverConfig& config, const char* who) {
  if (config.objective != ObjectiveKind::L1) {
    throw InputError(std::string(who) + ": the (x, p) form requires the l1 objective");
  }
}

void require_vector_objective(const SolverConfig& config, const char* who) {
  if (config.objective == ObjectiveKind::Nuclear) {
    throw InputError(std::string(who) + ": nuclear objective needs a matrix-completion problem");
  }
}

}  // namespace

LbPrimalState initial_lb_primal(const BasisPursuitProblem& problem) {
  const auto n = problem.a.cols();
  return {RealVector::Zero(n), RealVector::Zero(n), 0};
}

DualState initial_dual(const BasisPursuitProblem& problem, double tau) {
  return {tau * problem.b, 0};
}

VState initial_vform(const BasisPursuitProblem& problem, double tau) {
  return {tau * linalg::matvec_t(problem.a, problem.b), 0};
}

AugLagState initial_auglag(const BasisPursuitProblem& problem) {
  return {RealVector::Zero(problem.a.cols()), RealVector::Zero(problem.a.rows()), 0};
}

LbPrimalState lb_step_primal(const LbPrimalState& state, const BasisPursuitProblem& problem,
                             const SolverConfig& config) {
  require_l1(config, "lb_step_primal");
  const double mu = config.mu;
  const RealVector gradient_step =
      config.tau * linalg::matvec_t(problem.a, linalg::matvec(problem.a, state.x) - problem.b);

  LbPrimalState next;
  next.x = mu * prox::shrink_vec(state.p - gradient_step + state.x / mu, 1.0);
  next.p = state.p - gradient_step - (next.x - state.x) / mu;
  next.k = state.k + 1;
  return next;
}

StepOutput<DualState> dual_gd_step(const DualState& state, const BasisPursuitProblem& problem,
                                   const SolverConfig& config) {
  require_vector_objective(config, "dual_gd_step");
  StepOutput<DualState> out;
  out.w = prox::scaled_prox(config.objective, linalg::matvec_t(problem.a, state.y), config.mu);
  out.residual = linalg::matvec(problem.a, out.w) - problem.b;
  out.state.y = state.y - config.tau * out.residual;
  out.state.k = state.k + 1;
  return out;
}

StepOutput<VState> lb_step_vform(const VState& state, const BasisPursuitProblem& problem,
                                 const SolverConfig& config) {
  require_vector_objective(config, "lb_step_vform");
  StepOutput<VState> out;
  out.w = prox::scaled_prox(config.objective, state.v, config.mu);
  out.residual = linalg::matvec(problem.a, out.w) - problem.b;
  out.state.v = state.v - config.tau * linalg::matvec_t(problem.a, out.residual);
  out.state.k = state.k + 1;
  return out;
}

}  // namespace bregman::solvers
