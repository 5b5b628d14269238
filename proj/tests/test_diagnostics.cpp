#include "bregman/diagnostics.hpp"
#include "bregman/solvers.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace bregman {
namespace {

TEST(Residual, BasisPursuit) {
  const auto p = problems::gen_bp(MatrixKind::Gaussian, SignalKind::Gaussian, 100, 40, 8, 1);
  EXPECT_LE(diagnostics::residual_rel_bp(*p.x_true, p), 1e-12);
  EXPECT_EQ(diagnostics::residual_rel_bp(RealVector::Zero(100), p), 1.0);
  auto zero = p;
  zero.b.setZero();
  EXPECT_THROW(diagnostics::residual_rel_bp(RealVector::Zero(100), zero), InputError);
}

TEST(Residual, MatrixCompletion) {
  const auto p = problems::gen_mc(30, 3, 0.3, 2);
  EXPECT_EQ(diagnostics::residual_rel_mc(*p.m_true, p), 0.0);
  EXPECT_EQ(diagnostics::residual_rel_mc(DenseMatrix::Zero(30, 30), p), 1.0);
}

TEST(RelError, Examples) {
  const RealVector x{{1.0, -2.0, 0.5}};
  EXPECT_EQ(diagnostics::rel_error(x, x), 0.0);
  EXPECT_EQ(diagnostics::rel_error(RealVector(2.0 * x), x), 1.0);
  EXPECT_THROW(diagnostics::rel_error(x, RealVector::Zero(3)), InputError);
  const DenseMatrix m = DenseMatrix::Ones(2, 2);
  EXPECT_EQ(diagnostics::rel_error(DenseMatrix(3.0 * m), m), 2.0);
}

TEST(RateBounds, Formulas) {
  EXPECT_DOUBLE_EQ(diagnostics::lb_rate_bound(2.0, 0.5, 1), 2.0);
  EXPECT_DOUBLE_EQ(diagnostics::alb_rate_bound(1.0, 1.0, 2), 0.5);
}

TEST(Reference, ToyKkt) {
  BasisPursuitProblem p;
  p.a = DenseMatrix{{1.0, 0.0}};
  p.b = RealVector{{1.0}};
  SolverConfig c;
  c.mu = 1e4;
  const auto ref = diagnostics::reference_dual_optimum(p, c);
  EXPECT_TRUE(ref.reached_target);
  EXPECT_LE(ref.gradient_norm, 1e-12);
  const auto e = problems::dual_objective(ref.y, p, c.mu);
  EXPECT_NEAR(e.w_star(0), 1.0, 1e-10);
  EXPECT_EQ(e.w_star(1), 0.0);
}

TEST(Reference, RerunStability) {
  const auto p = problems::gen_bp(MatrixKind::Gaussian, SignalKind::Gaussian, 50, 20, 4, 3);
  SolverConfig c;
  c.mu = 5.0;
  const double norm_sq = linalg::spectral_norm_sq(p.a).value;
  const auto a = diagnostics::reference_dual_optimum(p, c);
  const auto b = diagnostics::reference_dual_optimum(p, c, {}, 0.5 / (c.mu * norm_sq));
  EXPECT_LE(a.gradient_norm, a.target * (a.reached_target ? 1.0 : 1e3));
  EXPECT_NEAR(a.g_value, b.g_value, 1e-10 * std::max(1.0, std::abs(a.g_value)));
}

struct RateFixture {
  BasisPursuitProblem problem =
      problems::gen_bp(MatrixKind::Gaussian, SignalKind::Gaussian, 100, 40, 8, 4);
  SolverConfig config;
  RealVector y0;
  diagnostics::DualReference ref;

  RateFixture() {
    config.mu = 5.0;
    config.tau_rule = TauRule::TheorySafe;
    config.tau = default_tau(TauRule::TheorySafe, config.mu, linalg::spectral_norm_sq(problem.a).value);
    config.max_iters = 300;
    y0 = config.tau * problem.b;
    ref = diagnostics::reference_dual_optimum(problem, config);
  }

  Trace trace(Variant v) const {
    solvers::RunOptions opts;
    opts.record_dual = true;
    return solvers::run(problem, config, v, StopRule::IterationCap, opts).trace;
  }
};

TEST(RateChecks, LbAndAlb) {
  const RateFixture f;
  const auto lb = diagnostics::check_lb_rate(f.trace(Variant::Lb), f.ref, f.y0, f.config.tau);
  EXPECT_TRUE(lb.passed()) << lb.max_ratio;
  EXPECT_EQ(lb.checked, 300u);
  EXPECT_EQ(lb.monotonicity_violations, 0u);
  const auto alb = diagnostics::check_alb_rate(f.trace(Variant::Alb), f.ref, f.y0, f.config.tau);
  EXPECT_TRUE(alb.passed()) << alb.max_ratio;
  EXPECT_LE(alb.max_ratio, 1.0 + 1e-6);
}

TEST(RateChecks, DualLagrangianIdentity) {
  const RateFixture f;
  for (auto v : {Variant::Lb, Variant::LbDual, Variant::LbPrimal}) {
    const auto t = f.trace(v);
    for (std::size_t i = 1; i < t.records.size(); ++i) {
      const double g = *t.records[i - 1].g_mu;
      ASSERT_NEAR(*t.records[i].lagrangian, -g, 1e-10 * std::max(1.0, std::abs(g))) << i;
    }
  }
}

TEST(RateChecks, DetectsViolation) {
  const RateFixture f;
  auto t = f.trace(Variant::Lb);
  t.records[5].g_mu = *t.records[5].g_mu + 1e3;
  const auto report = diagnostics::check_lb_rate(t, f.ref, f.y0, f.config.tau);
  EXPECT_FALSE(report.passed());
  EXPECT_EQ(report.first_violation_k, 6u);
}

TEST(RateChecks, ReferenceQuality) {
  const RateFixture f;
  auto t = f.trace(Variant::Lb);
  t.records[5].g_mu = f.ref.g_value - 1.0;
  EXPECT_THROW(diagnostics::check_lb_rate(t, f.ref, f.y0, f.config.tau),
               diagnostics::ReferenceQualityError);
}

}  // namespace
}  // namespace bregman
