#include "bregman/errors.hpp"
#include "bregman/linalg.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

namespace bregman {
namespace {

DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const auto m = static_cast<Eigen::Index>(rows.size());
  const auto n = static_cast<Eigen::Index>(rows.begin()->size());
  DenseMatrix a(m, n);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double v : row) a(i, j++) = v;
    ++i;
  }
  return a;
}

DenseMatrix gaussian_matrix(linalg::RngStream& rng, Eigen::Index m, Eigen::Index n) {
  DenseMatrix a(m, n);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = rng.gaussian();
  return a;
}

TEST(Matvec, Identity) {
  const RealVector x{{1.0, 2.0, 3.0}};
  EXPECT_EQ(linalg::matvec(DenseMatrix::Identity(3, 3), x), x);
  EXPECT_EQ(linalg::matvec_t(DenseMatrix::Identity(3, 3), x), x);
}

TEST(Matvec, ZeroMatrix) {
  const RealVector out = linalg::matvec(DenseMatrix::Zero(2, 3), RealVector::Ones(3));
  EXPECT_EQ(out, RealVector::Zero(2));
}

TEST(Matvec, HandExpanded) {
  const DenseMatrix a = from_rows({{1, 2}, {3, 4}});
  EXPECT_EQ(linalg::matvec(a, RealVector::Ones(2)), (RealVector{{3.0, 7.0}}));
  EXPECT_EQ(linalg::matvec_t(a, RealVector::Ones(2)), (RealVector{{4.0, 6.0}}));
}

TEST(Matvec, AdjointIdentity) {
  linalg::RngStream rng(7);
  const DenseMatrix a = gaussian_matrix(rng, 5, 7);
  const RealVector x = linalg::sample_gaussian(rng, 7);
  const RealVector y = linalg::sample_gaussian(rng, 5);
  EXPECT_NEAR(linalg::matvec(a, x).dot(y), x.dot(linalg::matvec_t(a, y)), 1e-12);
}

TEST(Matvec, DimensionMismatchThrows) {
  EXPECT_THROW(linalg::matvec(DenseMatrix::Zero(2, 3), RealVector::Zero(2)), InputError);
  EXPECT_THROW(linalg::matvec_t(DenseMatrix::Zero(2, 3), RealVector::Zero(3)), InputError);
}

TEST(SpectralNorm, Identity) {
  const auto est = linalg::spectral_norm_sq(DenseMatrix::Identity(4, 4));
  EXPECT_NEAR(est.value, 1.0, 1e-12);
  EXPECT_TRUE(est.converged);
}

TEST(SpectralNorm, Diagonal) {
  const DenseMatrix a = from_rows({{3, 0}, {0, 1}});
  EXPECT_NEAR(linalg::spectral_norm_sq(a).value, 9.0, 1e-10);
}

TEST(SpectralNorm, MatchesSvd) {
  linalg::RngStream rng(11);
  const DenseMatrix a = gaussian_matrix(rng, 10, 20);
  const double sigma = linalg::svd(a).sigma(0);
  EXPECT_NEAR(linalg::spectral_norm_sq(a).value / (sigma * sigma), 1.0, 1e-8);
}

TEST(SpectralNorm, StartInNullSpace) {
  // The all-ones start is annihilated by this matrix.
  const DenseMatrix a = from_rows({{1, -1}, {2, -2}});
  EXPECT_NEAR(linalg::spectral_norm_sq(a).value, 10.0, 1e-10);
}

TEST(SpectralNorm, ZeroMatrixThrows) {
  EXPECT_THROW(linalg::spectral_norm_sq(DenseMatrix::Zero(3, 3)), InputError);
}

TEST(Svd, Diagonal) {
  const DenseMatrix a = from_rows({{2, 0}, {0, 1}});
  const auto f = linalg::svd(a);
  EXPECT_EQ(f.sigma, (RealVector{{2.0, 1.0}}));
  EXPECT_EQ(f.reconstruct(), a);
}

TEST(Svd, DiagonalWithNegativeEntriesIsExact) {
  const DenseMatrix a = from_rows({{-0.5, 0}, {0, 3}});
  const auto f = linalg::svd(a);
  EXPECT_EQ(f.sigma, (RealVector{{3.0, 0.5}}));
  EXPECT_EQ(f.reconstruct(), a);
}

TEST(Svd, ZeroMatrix) {
  const auto f = linalg::svd(DenseMatrix::Zero(3, 2));
  EXPECT_EQ(f.sigma, RealVector::Zero(2));
}

TEST(Svd, Reconstruction) {
  linalg::RngStream rng(3);
  const DenseMatrix a = gaussian_matrix(rng, 6, 4);
  const auto f = linalg::svd(a);
  EXPECT_LE((f.reconstruct() - a).norm(), 1e-10 * a.norm());
  for (Eigen::Index i = 1; i < f.sigma.size(); ++i) EXPECT_GE(f.sigma(i - 1), f.sigma(i));
  EXPECT_LE((f.u.transpose() * f.u - DenseMatrix::Identity(4, 4)).norm(), 1e-12);
}

TEST(Svd, NonFiniteThrows) {
  DenseMatrix a = DenseMatrix::Ones(2, 2);
  a(0, 1) = std::nan("");
  EXPECT_THROW(linalg::svd(a), InputError);
}

TEST(Rng, Deterministic) {
  linalg::RngStream a(42);
  linalg::RngStream b(42);
  EXPECT_EQ(linalg::sample_gaussian(a, 100), linalg::sample_gaussian(b, 100));
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(a.uniform_pm1(), b.uniform_pm1());
    EXPECT_EQ(a.uniform_index(17), b.uniform_index(17));
  }
}

TEST(Rng, GaussianMoments) {
  linalg::RngStream rng(0);
  const RealVector g = linalg::sample_gaussian(rng, 100000);
  const double mean = g.mean();
  const double var = (g.array() - mean).square().sum() / static_cast<double>(g.size() - 1);
  EXPECT_LE(std::abs(mean), 3.0 * std::sqrt(0.1) * std::sqrt(1e-5) * 3.0);
  EXPECT_NEAR(var, 1.0, 0.05);
}

TEST(Rng, BernoulliSigns) {
  linalg::RngStream rng(5);
  int plus = 0;
  for (int i = 0; i < 10000; ++i) {
    const double v = linalg::sample_bernoulli_pm1(rng);
    ASSERT_TRUE(v == 1.0 || v == -1.0);
    plus += v > 0 ? 1 : 0;
  }
  EXPECT_NEAR(plus, 5000, 300);
}

TEST(Rng, UniformRange) {
  linalg::RngStream rng(9);
  for (int i = 0; i < 10000; ++i) {
    const double v = linalg::sample_uniform_pm1(rng);
    ASSERT_GE(v, -1.0);
    ASSERT_LT(v, 1.0);
    ASSERT_LT(rng.uniform_index(3), 3u);
  }
}

}  // namespace
}  // namespace bregman
