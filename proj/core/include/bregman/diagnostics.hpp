#pragma once

#include "bregman/config.hpp"
#include "bregman/errors.hpp"
#include "bregman/problems.hpp"
#include "bregman/trace.hpp"

#include <cstddef>
#include <string>

namespace bregman::diagnostics {

/// ||a x - b|| / ||b||. Throws InputError when b == 0.
double residual_rel_bp(const RealVector& x, const BasisPursuitProblem& problem);

/// ||P(X) - P(M)||_F / ||P(M)||_F over the observed entries.
/// Throws InputError when every observed value is zero.
double residual_rel_mc(const DenseMatrix& x, const MatrixCompletionProblem& problem);

/// ||x - x_true|| / ||x_true||. Throws InputError when x_true == 0.
double rel_error(const RealVector& x, const RealVector& x_true);
double rel_error(const DenseMatrix& x, const DenseMatrix& x_true);

/// High-accuracy dual optimum used as y* by the rate checks.
struct DualReference {
  RealVector y;
  double g_value = 0.0;        ///< G_mu(y)
  double gradient_norm = 0.0;  ///< ||grad G_mu(y)||
  double target = 0.0;         ///< 1e-12 ||b||
  std::size_t iterations = 0;
  bool reached_target = false;
};

struct ReferenceOptions {
  double relative_target = 1e-12;
  std::size_t max_iters = 1000000;
  std::size_t check_every = 10;  ///< gradient-norm checks are one extra pair of matvecs
};

/// Runs the accelerated dual iteration with tau = 1 / (mu ||A||^2) until
/// ||grad G_mu(y)|| <= 1e-12 ||b|| or the iteration cap, returning the best
/// point seen. `config` supplies mu and the objective; its tau is ignored
/// unless `tau_override` is positive.
DualReference reference_dual_optimum(const BasisPursuitProblem& problem, const SolverConfig& config,
                                     const ReferenceOptions& options = {}, double tau_override = 0.0);

/// Bound of the basic method: ||y* - y0||^2 / (2 tau k).
double lb_rate_bound(double dist_sq, double tau, std::size_t k);
/// Bound of the accelerated method: 2 ||y* - y0||^2 / (tau k^2).
double alb_rate_bound(double dist_sq, double tau, std::size_t k);

/// Thrown when the trace goes below the reference optimum by more than the
/// rounding allowance, meaning y_star_ref is not accurate enough.
class ReferenceQualityError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

struct RateReport {
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::size_t first_violation_k = 0;     ///< 0 when there is none
  double max_ratio = 0.0;                ///< max over k of gap_k / bound_k
  double slack = 1.0 + 1e-6;             ///< multiplicative allowance applied to the bound
  std::size_t monotonicity_violations = 0;  ///< G_mu(y^k) > G_mu(y^{k-1}); reported, asserted for LB only
  double max_gap_times_k = 0.0;          ///< sup_k gap_k * k
  double max_gap_times_k_sq = 0.0;       ///< sup_k gap_k * k^2
  std::string note;

  bool passed() const { return violations == 0; }
};

/// Checks G_mu(y^k) - G_mu(y*) <= ||y* - y0||^2 / (2 tau k) * slack on every
/// trace record carrying g_mu, and counts increases of G_mu. The slack widens
/// to 1 + 1e-3 when the reference did not reach its accuracy target.
RateReport check_lb_rate(const Trace& trace, const DualReference& reference, const RealVector& y0,
                         double tau);

/// Checks G_mu(y^k) - G_mu(y*) <= 2 ||y* - y0||^2 / (tau k^2) * slack.
RateReport check_alb_rate(const Trace& trace, const DualReference& reference, const RealVector& y0,
                          double tau);

}  // namespace bregman::diagnostics
