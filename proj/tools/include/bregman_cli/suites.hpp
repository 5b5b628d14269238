#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace bregman::cli {

struct PropertyResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;  ///< worst observed value of the checked quantity
  double limit = 0.0;     ///< pass threshold for `measured`
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<PropertyResult> properties;

  bool passed() const;
  std::vector<std::string> failures() const;
};

struct EquivalenceOptions {
  std::size_t instances = 10;
  std::size_t iterations = 200;
  double tolerance = 1e-8;
  std::uint64_t seed = 0;  ///< offset added to every instance seed
};

/// The three LB forms (primal, dual gradient, v-form) and the three ALB forms
/// produce the same primal sequences on instances with n in {100, 400},
/// m = 0.4 n, s = 0.2 m and every matrix kind; also checks the identity
/// p^{k+1} + x^{k+1} / mu = A^T y^k linking the primal and dual states.
SuiteReport run_equivalence_suite(const EquivalenceOptions& options = {});

struct BregmanOptions {
  std::size_t m = 20;
  std::size_t n = 50;
  std::size_t iterations = 10;
  double inner_tol = 1e-10;
  double tolerance = 1e-6;
  std::uint64_t seed = 0;
};

/// Exact Bregman and the augmented Lagrangian method give the same x^k, and
/// p^k = A^T lambda^k.
SuiteReport run_bregman_auglag_suite(const BregmanOptions& options = {});

struct RateOptions {
  std::size_t m = 40;
  std::size_t n = 100;
  std::size_t iterations = 500;
  double mu = 5.0;
  std::uint64_t seed = 0;
};

/// Both complexity bounds on a Gaussian instance with tau = 1 / (mu ||A||^2),
/// monotonicity of G_mu along LB, and G_mu(y^k) == -L_mu(x^{k+1}, y^k).
SuiteReport run_rate_suite(const RateOptions& options = {});

struct GradientOptions {
  std::size_t instances = 5;
  std::size_t points = 20;
  double tolerance = 1e-5;
  std::uint64_t seed = 0;
};

/// Analytic grad G_mu against central finite differences.
SuiteReport run_gradient_suite(const GradientOptions& options = {});

struct ProxOptions {
  std::size_t grid_inputs = 100;
  double grid_step = 1e-4;
  std::size_t expansiveness_pairs = 10000;
  std::uint64_t seed = 0;
};

/// shrink_vec and prox_l1_nonneg against grid search, shrink_matrix on
/// diagonal inputs against shrink_vec, and non-expansiveness of shrink_vec.
SuiteReport run_prox_suite(const ProxOptions& options = {});

/// Machine-readable report of several suites.
std::string reports_json(const std::vector<SuiteReport>& reports);

}  // namespace bregman::cli
