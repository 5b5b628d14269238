#include "bregman/errors.hpp"
#include "bregman/solvers.hpp"
#include "bregman/trace_io.hpp"

#include <chrono>
#include <functional>
#include <string>

namespace bregman::solvers {

namespace {

using Clock = std::chrono::steady_clock;

std::map<std::string, std::string> describe(const BasisPursuitProblem& problem) {
  std::map<std::string, std::string> meta;
  meta["problem"] = "basis-pursuit";
  meta["m"] = std::to_string(problem.a.rows());
  meta["n"] = std::to_string(problem.a.cols());
  if (problem.meta) {
    meta["matrix"] = std::string(to_string(problem.meta->matrix));
    meta["signal"] = std::string(to_string(problem.meta->signal));
    meta["s"] = std::to_string(problem.meta->s);
    meta["seed"] = std::to_string(problem.meta->seed);
    meta["nonnegative"] = problem.meta->nonnegative ? "true" : "false";
  }
  return meta;
}

std::map<std::string, std::string> describe(const MatrixCompletionProblem& problem) {
  std::map<std::string, std::string> meta;
  meta["problem"] = "matrix-completion";
  meta["n"] = std::to_string(problem.n);
  meta["r"] = std::to_string(problem.r);
  meta["p"] = std::to_string(problem.samples());
  meta["sr"] = io::format_real(problem.sampling_ratio());
  meta["fr"] = io::format_real(problem.dof_ratio());
  if (problem.meta) meta["seed"] = std::to_string(problem.meta->seed);
  return meta;
}

void check_compatibility(const SolverConfig& config, Variant variant) {
  if (config.objective == ObjectiveKind::Nuclear) {
    throw InputError("variant " + std::string(to_string(variant)) +
                     " on a basis pursuit problem cannot use the nuclear objective");
  }
  const bool needs_l1 = variant == Variant::LbPrimal || variant == Variant::AlbPrimal ||
                        variant == Variant::Bregman || variant == Variant::AugLag;
  if (needs_l1 && config.objective != ObjectiveKind::L1) {
    throw InputError("variant " + std::string(to_string(variant)) +
                     " supports only the l1 objective; use a dual or v-form variant");
  }
}

}  // namespace

BpRunResult run(const BasisPursuitProblem& problem, const SolverConfig& config, Variant variant,
                StopRule stop, const RunOptions& options) {
  config.validate();
  check_compatibility(config, variant);

  const double mu = config.mu;
  const double tau = config.tau;
  const double b_norm = problem.b.norm();
  const double residual_scale = b_norm > 0.0 ? b_norm : 1.0;

  BpRunResult result;
  result.trace.config = config;
  result.trace.variant = variant;
  result.trace.meta = describe(problem);
  result.x = RealVector::Zero(problem.a.cols());

  // Dual sequence y^k and the point y_hat at which the next gradient is taken.
  // The dual-form variants carry it in their state; the others replay
  // y^{k} = y_hat^{k-1} - tau r^k alongside, which costs only vector updates.
  const bool has_dual = variant != Variant::Bregman && variant != Variant::AugLag;
  RealVector y = tau * problem.b;
  RealVector y_hat = y;

  LbPrimalState lb_primal = initial_lb_primal(problem);
  AlbState alb_primal = initial_alb(problem);
  DualState dual{};
  AccelDualState accel{};
  VState vform{};
  AlbVState alb_vform{};
  AugLagState auglag = initial_auglag(problem);
  InnerSolveOptions inner = options.inner;

  switch (variant) {
    case Variant::LbDual: dual = initial_dual(problem, tau); break;
    case Variant::AlbDual: accel = initial_accel_dual(problem, tau); break;
    case Variant::Lb: vform = initial_vform(problem, tau); break;
    case Variant::Alb: alb_vform = initial_alb_vform(problem, tau); break;
    case Variant::Bregman:
    case Variant::AugLag:
      if (inner.norm_a_sq <= 0.0) inner.norm_a_sq = linalg::spectral_norm_sq(problem.a).value;
      break;
    default: break;
  }

  // Advances one iteration; returns the new primal iterate and A x - b.
  std::function<void(RealVector&, RealVector&)> step;
  switch (variant) {
    case Variant::LbPrimal:
      step = [&](RealVector& x, RealVector& r) {
        lb_primal = lb_step_primal(lb_primal, problem, config);
        x = lb_primal.x;
        r = linalg::matvec(problem.a, x) - problem.b;
      };
      break;
    case Variant::AlbPrimal:
      step = [&](RealVector& x, RealVector& r) {
        alb_primal = alb_step_primal(alb_primal, problem, config);
        x = alb_primal.x;
        r = linalg::matvec(problem.a, x) - problem.b;
      };
      break;
    case Variant::LbDual:
      step = [&](RealVector& x, RealVector& r) {
        auto out = dual_gd_step(dual, problem, config);
        dual = std::move(out.state);
        x = std::move(out.w);
        r = std::move(out.residual);
      };
      break;
    case Variant::AlbDual:
      step = [&](RealVector& x, RealVector& r) {
        auto out = accel_dual_step(accel, problem, config);
        accel = std::move(out.state);
        x = std::move(out.w);
        r = std::move(out.residual);
      };
      break;
    case Variant::Lb:
      step = [&](RealVector& x, RealVector& r) {
        auto out = lb_step_vform(vform, problem, config);
        vform = std::move(out.state);
        x = std::move(out.w);
        r = std::move(out.residual);
      };
      break;
    case Variant::Alb:
      step = [&](RealVector& x, RealVector& r) {
        auto out = alb_step_vform(alb_vform, problem, config);
        alb_vform = std::move(out.state);
        x = std::move(out.w);
        r = std::move(out.residual);
      };
      break;
    case Variant::Bregman:
      step = [&](RealVector& x, RealVector& r) {
        lb_primal = bregman_exact_step(lb_primal, problem, inner);
        x = lb_primal.x;
        r = linalg::matvec(problem.a, x) - problem.b;
      };
      break;
    case Variant::AugLag:
      step = [&](RealVector& x, RealVector& r) {
        auglag = auglag_step(auglag, problem, inner);
        x = auglag.x;
        r = linalg::matvec(problem.a, x) - problem.b;
      };
      break;
  }

  const bool accelerated = is_accelerated(variant);
  const auto start = Clock::now();
  RealVector x;
  RealVector r;
  for (std::size_t k = 1; k <= config.max_iters; ++k) {
    const RealVector gradient_point = y_hat;
    step(x, r);

    if (has_dual) {
      if (variant == Variant::LbDual) {
        y = dual.y;
        y_hat = y;
      } else if (variant == Variant::AlbDual) {
        y = accel.y;
        y_hat = accel.y_tilde;
      } else {
        RealVector y_next = gradient_point - tau * r;
        if (accelerated) {
          const double a_k = config.schedule.alpha(k - 1);
          y_hat = a_k * y_next + (1.0 - a_k) * y;
        } else {
          y_hat = y_next;
        }
        y = std::move(y_next);
      }
    }

    if (options.on_iterate) options.on_iterate(k, x);

    TraceRecord record;
    record.k = k;
    record.residual_rel = r.norm() / residual_scale;
    if (problem.x_true && problem.x_true->norm() > 0.0) {
      record.rel_error = (x - *problem.x_true).norm() / problem.x_true->norm();
    }
    if (options.record_dual && has_dual) {
      record.g_mu = problems::dual_objective(y, problem, mu, config.objective).value;
      record.lagrangian = prox::objective_value(config.objective, x) + x.squaredNorm() / (2.0 * mu) -
                          gradient_point.dot(r);
    }
    if (options.record_timing) {
      record.wall_ns =
          std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count();
    }
    result.trace.records.push_back(record);

    if (stop == StopRule::Residual && record.residual_rel < config.residual_tol) {
      result.trace.status = RunStatus::Converged;
      break;
    }
  }
  if (!x.size()) x = RealVector::Zero(problem.a.cols());
  result.x = std::move(x);
  if (has_dual) result.y = std::move(y);
  return result;
}

McRunResult run(const MatrixCompletionProblem& problem, const SolverConfig& config,
                Variant variant, StopRule stop, const RunOptions& options) {
  config.validate();
  problem.validate();
  if (variant != Variant::Lb && variant != Variant::Alb) {
    throw InputError("matrix completion supports only the lb and alb variants");
  }
  if (config.objective != ObjectiveKind::Nuclear) {
    throw InputError("matrix completion requires the nuclear objective");
  }
  const double observed_norm = problem.observed.norm();
  if (!(observed_norm > 0.0)) throw InputError("matrix completion: all observed values are zero");

  McRunResult result;
  result.trace.config = config;
  result.trace.variant = variant;
  result.trace.meta = describe(problem);

  McState state = initial_mc(problem);
  const auto start = Clock::now();
  for (std::size_t k = 1; k <= config.max_iters; ++k) {
    state = variant == Variant::Lb ? mc_lb_step(state, problem, config)
                                   : mc_alb_step(state, problem, config);
    if (options.on_iterate_mc) options.on_iterate_mc(k, state.x);
    TraceRecord record;
    record.k = k;
    record.residual_rel = (problem.restrict(state.x) - problem.observed).norm() / observed_norm;
    if (problem.m_true && problem.m_true->norm() > 0.0) {
      record.rel_error = (state.x - *problem.m_true).norm() / problem.m_true->norm();
    }
    if (options.record_timing) {
      record.wall_ns =
          std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count();
    }
    result.trace.records.push_back(record);
    if (stop == StopRule::Residual && record.residual_rel < config.residual_tol) {
      result.trace.status = RunStatus::Converged;
      break;
    }
  }
  result.x = std::move(state.x);
  return result;
}

}  // namespace bregman::solvers
