#pragma once

#include "bregman/prox.hpp"

#include <cstddef>
#include <string>
#include <string_view>

namespace bregman {

/// theta_{-1} = 1, theta_k = 2 / (k + 2) for k >= 0. Throws InputError for k < -1.
double theta(long k);

/// alpha_k = 1 + theta_{k+1} (1 / theta_k - 1), which equals (2k + 3) / (k + 3).
double alpha(std::size_t k);

/// Extrapolation weights for the accelerated iterations.
class Schedule {
public:
  enum class Kind { Tseng, Constant };

  /// The theta-based schedule above.
  static Schedule tseng() { return Schedule(Kind::Tseng, 0.0); }
  /// alpha_k == a for every k; a must lie in (0, 2].
  static Schedule constant(double a);
  /// "tseng" or "constant:<a>".
  static Schedule parse(std::string_view text);

  Kind kind() const { return kind_; }
  double alpha(std::size_t k) const { return kind_ == Kind::Tseng ? bregman::alpha(k) : constant_; }
  std::string describe() const;

  bool operator==(const Schedule&) const = default;

private:
  Schedule(Kind kind, double constant) : kind_(kind), constant_(constant) {}

  Kind kind_ = Kind::Tseng;
  double constant_ = 0.0;
};

enum class TauRule {
  PaperCS,     ///< 2 / (mu ||A||^2), the compressed-sensing experiment setting
  TheorySafe,  ///< 1 / (mu ||A||^2) = 1 / L, where both complexity bounds hold
  PaperMC,     ///< 1 / mu, using ||P_Omega|| = 1
  Explicit,    ///< caller-supplied value
};

std::string_view to_string(TauRule rule);
TauRule tau_rule_from_string(std::string_view name);

/// Step length for a tau rule. Explicit is rejected; it has no default.
double default_tau(TauRule rule, double mu, double norm_a_sq);

/// Which iterates enter the singular value shrink of the accelerated
/// matrix-completion update.
enum class McShrinkArg {
  Tilde,      ///< extrapolated X~, P~ (consistent with the vector algorithm)
  AsPrinted,  ///< previous X, P, with the extrapolates entering only through the P update
};

std::string_view to_string(McShrinkArg arg);
McShrinkArg mc_shrink_arg_from_string(std::string_view name);

struct SolverConfig {
  double mu = 5.0;
  double tau = 1.0;
  std::size_t max_iters = 5000;
  double residual_tol = 1e-5;
  Schedule schedule = Schedule::tseng();
  ObjectiveKind objective = ObjectiveKind::L1;
  TauRule tau_rule = TauRule::Explicit;  ///< how tau was obtained; recorded in traces
  McShrinkArg mc_shrink_arg = McShrinkArg::Tilde;

  /// Throws InputError unless mu > 0, tau > 0 and residual_tol lies in (0, 1).
  void validate() const;
};

/// Iteration scheme driven by solvers::run.
enum class Variant {
  Lb,         ///< linearized Bregman, v-form (two-line iteration)
  Alb,        ///< accelerated linearized Bregman, v-form (three-line iteration)
  LbPrimal,   ///< linearized Bregman on (x, p)
  LbDual,     ///< gradient descent on the dual variable y
  AlbPrimal,  ///< accelerated linearized Bregman on (x, p, x~, p~)
  AlbDual,    ///< accelerated dual gradient on (y, y~)
  Bregman,    ///< original Bregman iteration with an inner l1-regularized solve
  AugLag,     ///< augmented Lagrangian iteration with an inner solve
};

std::string_view to_string(Variant variant);
Variant variant_from_string(std::string_view name);
bool is_accelerated(Variant variant);

enum class StopRule {
  Residual,      ///< stop once the relative residual drops below residual_tol, or at max_iters
  IterationCap,  ///< always run max_iters iterations
};

}  // namespace bregman
