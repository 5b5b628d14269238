#pragma once

#include "bregman/config.hpp"
#include "bregman/errors.hpp"
#include "bregman/problems.hpp"
#include "bregman/trace.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>

namespace bregman::solvers {

// ---------------------------------------------------------------------------
// Iteration states. Every step consumes a state by const reference and
// returns a fresh one; iterates are never updated in place.
// ---------------------------------------------------------------------------

/// Linearized Bregman on (x, p); also the state of the exact Bregman iteration.
struct LbPrimalState {
  RealVector x;
  RealVector p;
  std::size_t k = 0;
};

/// Dual gradient descent on y.
struct DualState {
  RealVector y;
  std::size_t k = 0;
};

/// v = A^T y form of the dual iteration.
struct VState {
  RealVector v;
  std::size_t k = 0;
};

struct AlbState {
  RealVector x;
  RealVector p;
  RealVector x_tilde;
  RealVector p_tilde;
  std::size_t k = 0;
};

struct AccelDualState {
  RealVector y;
  RealVector y_tilde;
  std::size_t k = 0;
};

struct AlbVState {
  RealVector v;
  RealVector v_tilde;
  std::size_t k = 0;
};

struct AugLagState {
  RealVector x;
  RealVector lambda;
  std::size_t k = 0;
};

struct McState {
  DenseMatrix x;
  DenseMatrix p;
  DenseMatrix x_tilde;
  DenseMatrix p_tilde;
  std::size_t k = 0;
};

/// x^0 = p^0 = 0.
LbPrimalState initial_lb_primal(const BasisPursuitProblem& problem);
/// y^0 = tau b.
DualState initial_dual(const BasisPursuitProblem& problem, double tau);
/// v^0 = tau A^T b.
VState initial_vform(const BasisPursuitProblem& problem, double tau);
/// x^0 = x~^0 = p^0 = p~^0 = 0.
AlbState initial_alb(const BasisPursuitProblem& problem);
/// y~^0 = y^0 = tau b.
AccelDualState initial_accel_dual(const BasisPursuitProblem& problem, double tau);
/// v~^0 = v^0 = tau A^T b.
AlbVState initial_alb_vform(const BasisPursuitProblem& problem, double tau);
/// x^0 = lambda^0 = 0.
AugLagState initial_auglag(const BasisPursuitProblem& problem);
/// All four matrices zero.
McState initial_mc(const MatrixCompletionProblem& problem);

/// Primal iterate, the residual A w - b of that iterate, and the next state.
/// The residual is a by-product of the update, so drivers get it for free.
template <class State>
struct StepOutput {
  State state;
  RealVector w;
  RealVector residual;
};

// ---------------------------------------------------------------------------
// Linearized Bregman
// ---------------------------------------------------------------------------

/// x^{k+1} = mu shrink(p^k - tau A^T (A x^k - b) + x^k / mu, 1)
/// p^{k+1} = p^k - tau A^T (A x^k - b) - (x^{k+1} - x^k) / mu
/// Requires the L1 objective.
LbPrimalState lb_step_primal(const LbPrimalState& state, const BasisPursuitProblem& problem,
                             const SolverConfig& config);

/// w^{k+1} = argmin J(w) + ||w||^2 / (2 mu) - <y^k, A w - b>
/// y^{k+1} = y^k - tau (A w^{k+1} - b)
StepOutput<DualState> dual_gd_step(const DualState& state, const BasisPursuitProblem& problem,
                                   const SolverConfig& config);

/// w^{k+1} = argmin J(w) + ||w - mu v^k||^2 / (2 mu)
/// v^{k+1} = v^k - tau A^T (A w^{k+1} - b)
StepOutput<VState> lb_step_vform(const VState& state, const BasisPursuitProblem& problem,
                                 const SolverConfig& config);

// ---------------------------------------------------------------------------
// Accelerated linearized Bregman. Step k uses alpha_k from config.schedule.
// ---------------------------------------------------------------------------

/// x^{k+1} = mu shrink(p~^k - tau A^T (A x~^k - b) + x~^k / mu, 1)
/// p^{k+1} = p~^k - tau A^T (A x~^k - b) - (x^{k+1} - x~^k) / mu
/// x~^{k+1} = alpha_k x^{k+1} + (1 - alpha_k) x^k, and likewise for p~.
/// Requires the L1 objective.
AlbState alb_step_primal(const AlbState& state, const BasisPursuitProblem& problem,
                         const SolverConfig& config);

/// w^{k+1} = argmin J(w) + ||w||^2 / (2 mu) - <y~^k, A w - b>
/// y^{k+1} = y~^k - tau (A w^{k+1} - b)
/// y~^{k+1} = alpha_k y^{k+1} + (1 - alpha_k) y^k
StepOutput<AccelDualState> accel_dual_step(const AccelDualState& state,
                                           const BasisPursuitProblem& problem,
                                           const SolverConfig& config);

/// w^{k+1} = argmin J(w) + ||w - mu v~^k||^2 / (2 mu)
/// v^{k+1} = v~^k - tau A^T (A w^{k+1} - b)
/// v~^{k+1} = alpha_k v^{k+1} + (1 - alpha_k) v^k
StepOutput<AlbVState> alb_step_vform(const AlbVState& state, const BasisPursuitProblem& problem,
                                     const SolverConfig& config);

// ---------------------------------------------------------------------------
// Exact Bregman and the augmented Lagrangian method
// ---------------------------------------------------------------------------

struct InnerSolveOptions {
  double tol = 1e-10;              ///< bound on the gradient-map norm
  std::size_t max_iters = 2000000;
  double norm_a_sq = 0.0;          ///< ||A||^2; computed when <= 0
};

/// Thrown when the inner l1-regularized solve hits its iteration cap.
class InnerSolveError : public NumericalError {
public:
  InnerSolveError(const std::string& what, double achieved)
      : NumericalError(what), achieved_(achieved) {}
  double achieved_accuracy() const { return achieved_; }

private:
  double achieved_;
};

/// argmin_x ||x||_1 - <c, x> + ||A x - b||^2 / 2 by proximal gradient with
/// step 1 / ||A||^2, warm-started at `start`, stopped when the gradient-map
/// norm falls to options.tol.
RealVector solve_l1_regularized(const BasisPursuitProblem& problem, const RealVector& c,
                                const RealVector& start, const InnerSolveOptions& options);

/// x^{k+1} = argmin ||x||_1 - <p^k, x> + ||A x - b||^2 / 2
/// p^{k+1} = p^k - A^T (A x^{k+1} - b)
LbPrimalState bregman_exact_step(const LbPrimalState& state, const BasisPursuitProblem& problem,
                                 const InnerSolveOptions& inner);

/// x^{k+1} = argmin ||x||_1 - <lambda^k, A x - b> + ||A x - b||^2 / 2
/// lambda^{k+1} = lambda^k - (A x^{k+1} - b)
AugLagState auglag_step(const AugLagState& state, const BasisPursuitProblem& problem,
                        const InnerSolveOptions& inner);

// ---------------------------------------------------------------------------
// Matrix completion
// ---------------------------------------------------------------------------

/// X^{k+1} = Shrink(X^k - mu (tau P(X^k - M) - P^k), mu)
/// P^{k+1} = P^k - tau P(X^k - M) - (X^{k+1} - X^k) / mu
McState mc_lb_step(const McState& state, const MatrixCompletionProblem& problem,
                   const SolverConfig& config);

/// Accelerated form. The shrink argument uses (X~^k, P~^k) under
/// McShrinkArg::Tilde and (X^k, P^k) under McShrinkArg::AsPrinted; then
/// P^{k+1} = P~^k - tau P(X~^k - M) - (X^{k+1} - X~^k) / mu
/// X~^{k+1} = alpha_k X^{k+1} + (1 - alpha_k) X^k, and likewise for P~.
McState mc_alb_step(const McState& state, const MatrixCompletionProblem& problem,
                    const SolverConfig& config);

// ---------------------------------------------------------------------------
// Driver
// ---------------------------------------------------------------------------

struct RunOptions {
  bool record_dual = false;   ///< evaluate G_mu(y^k) and L_mu each iteration
  bool record_timing = false;
  InnerSolveOptions inner;    ///< Bregman / AugLag only
  /// Called after every iteration with k and the primal iterate.
  std::function<void(std::size_t, const RealVector&)> on_iterate;
  std::function<void(std::size_t, const DenseMatrix&)> on_iterate_mc;
};

struct BpRunResult {
  Trace trace;
  RealVector x;                   ///< final primal iterate
  std::optional<RealVector> y;    ///< final dual iterate, when the variant has one
};

struct McRunResult {
  Trace trace;
  DenseMatrix x;
};

/// Iterate `variant` until the stop rule fires or config.max_iters steps have
/// run. Every iteration is recorded. When ||b|| == 0 the residual recorded and
/// tested is the absolute ||A x - b||. Throws InputError when the variant and
/// objective are incompatible (primal forms and the exact methods need L1).
BpRunResult run(const BasisPursuitProblem& problem, const SolverConfig& config, Variant variant,
                StopRule stop = StopRule::Residual, const RunOptions& options = {});

/// Matrix-completion run; variant must be Lb or Alb.
McRunResult run(const MatrixCompletionProblem& problem, const SolverConfig& config,
                Variant variant, StopRule stop = StopRule::Residual,
                const RunOptions& options = {});

}  // namespace bregman::solvers
