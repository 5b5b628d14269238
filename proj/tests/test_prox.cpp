#include "bregman/errors.hpp"
#include "bregman/prox.hpp"

#include <gtest/gtest.h>

#include <limits>

namespace bregman {
namespace {

DenseMatrix diag2(double a, double b) {
  DenseMatrix d = DenseMatrix::Zero(2, 2);
  d(0, 0) = a;
  d(1, 1) = b;
  return d;
}

TEST(ShrinkVec, Zero) {
  EXPECT_EQ(prox::shrink_vec(RealVector::Zero(3), 1.0), RealVector::Zero(3));
}

TEST(ShrinkVec, Componentwise) {
  const RealVector z{{2.0, -0.5, 1.0}};
  EXPECT_EQ(prox::shrink_vec(z, 1.0), (RealVector{{1.0, 0.0, 0.0}}));
  EXPECT_EQ(prox::shrink_vec(RealVector{{-3.0}}, 1.0), RealVector{{-2.0}});
}

TEST(ShrinkVec, NonExpansive) {
  linalg::RngStream rng(1);
  for (int i = 0; i < 1000; ++i) {
    const RealVector s = linalg::sample_gaussian(rng, 6) * 2.0;
    const RealVector t = linalg::sample_gaussian(rng, 6) * 2.0;
    EXPECT_LE((prox::shrink_vec(s, 0.7) - prox::shrink_vec(t, 0.7)).norm(),
              (s - t).norm() * (1.0 + 1e-12));
  }
}

TEST(ShrinkMatrix, Diagonal) {
  EXPECT_EQ(prox::shrink_matrix(diag2(3.0, 1.0), 2.0), diag2(1.0, 0.0));
}

TEST(ShrinkMatrix, Zero) {
  EXPECT_EQ(prox::shrink_matrix(DenseMatrix::Zero(3, 4), 0.5), DenseMatrix::Zero(3, 4));
}

TEST(ShrinkMatrix, OptimalityProbe) {
  linalg::RngStream rng(2);
  DenseMatrix y(8, 6);
  for (Eigen::Index i = 0; i < y.size(); ++i) y.data()[i] = rng.gaussian();
  const double gamma = 1.5;
  const auto objective = [&](const DenseMatrix& x) {
    return gamma * prox::nuclear_norm(x) + 0.5 * (x - y).squaredNorm();
  };
  const DenseMatrix x = prox::shrink_matrix(y, gamma);
  const double best = objective(x);
  for (int t = 0; t < 100; ++t) {
    DenseMatrix e(8, 6);
    for (Eigen::Index i = 0; i < e.size(); ++i) e.data()[i] = rng.gaussian();
    EXPECT_LE(best, objective(x + 1e-6 * e) + 1e-12);
    EXPECT_LE(best, objective(x + 1e-2 * e) + 1e-12);
  }
}

TEST(ProxL1NonNeg, Examples) {
  EXPECT_EQ(prox::prox_l1_nonneg(RealVector::Zero(4), 3.0), RealVector::Zero(4));
  const RealVector out = prox::prox_l1_nonneg(RealVector{{2.0, -3.0}}, 5.0);
  EXPECT_NEAR(out(0), 5.0, 1e-12);
  EXPECT_EQ(out(1), 0.0);
}

TEST(ProxL1NonNeg, GridOracle) {
  // argmin_{w >= 0} w + (w - mu v)^2 / (2 mu) per coordinate.
  linalg::RngStream rng(4);
  const double mu = 2.0;
  for (int t = 0; t < 20; ++t) {
    const double v = 3.0 * rng.uniform_pm1();
    double best_w = 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (double w = 0.0; w <= 8.0; w += 1e-4) {
      const double f = w + (w - mu * v) * (w - mu * v) / (2.0 * mu);
      if (f < best) {
        best = f;
        best_w = w;
      }
    }
    EXPECT_NEAR(prox::prox_l1_nonneg(RealVector::Constant(1, v), mu)(0), best_w, 1e-4);
  }
}

TEST(ScaledProx, MatchesNamedOperators) {
  const RealVector v{{1.5, -2.0, 0.3}};
  EXPECT_EQ(prox::scaled_prox(ObjectiveKind::L1, v, 4.0), 4.0 * prox::shrink_vec(v, 1.0));
  EXPECT_EQ(prox::scaled_prox(ObjectiveKind::L1NonNeg, v, 4.0), prox::prox_l1_nonneg(v, 4.0));
}

TEST(ObjectiveValue, NonNegativeConstraint) {
  EXPECT_EQ(prox::objective_value(ObjectiveKind::L1, RealVector{{1.0, -2.0}}), 3.0);
  EXPECT_EQ(prox::objective_value(ObjectiveKind::L1NonNeg, RealVector{{1.0, -2.0}}),
            std::numeric_limits<double>::infinity());
}

TEST(BregmanDistance, Examples) {
  const RealVector v{{1.0, 0.0, -2.0}};
  const RealVector p{{1.0, 0.3, -1.0}};
  EXPECT_EQ(prox::bregman_distance_l1(v, v, p), 0.0);
  EXPECT_EQ(prox::bregman_distance_l1(RealVector{{1.0, 0.0}}, RealVector::Zero(2), RealVector::Zero(2)),
            1.0);
}

TEST(BregmanDistance, NonNegative) {
  linalg::RngStream rng(6);
  for (int t = 0; t < 500; ++t) {
    RealVector v = linalg::sample_gaussian(rng, 5);
    v(0) = 0.0;
    RealVector p = v.array().sign();
    p(0) = rng.uniform_pm1();
    const RealVector u = linalg::sample_gaussian(rng, 5);
    EXPECT_GE(prox::bregman_distance_l1(u, v, p), -1e-12);
  }
}

TEST(BregmanDistance, InvalidSubgradient) {
  const RealVector v{{1.0, 0.0}};
  EXPECT_THROW(prox::bregman_distance_l1(v, v, RealVector{{0.5, 0.0}}), PreconditionError);
  EXPECT_THROW(prox::bregman_distance_l1(v, v, RealVector{{1.0, 1.5}}), PreconditionError);
  EXPECT_EQ(prox::first_invalid_subgradient(v, RealVector{{1.0, 1.5}}), 1);
  EXPECT_EQ(prox::first_invalid_subgradient(v, RealVector{{1.0, -1.0}}), -1);
}

}  // namespace
}  // namespace bregman
