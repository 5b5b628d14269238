#include "bregman_cli/suites.hpp"

#include "bregman/diagnostics.hpp"
#include "bregman/errors.hpp"
#include "bregman/solvers.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bregman::cli {

namespace {

double relative_gap(const RealVector& a, const RealVector& b) {
  const double scale = std::max(a.norm(), b.norm());
  if (scale == 0.0) return 0.0;
  return (a - b).norm() / scale;
}

/// max |a - b| / max(1, max |a|)
double scaled_max_gap(const RealVector& a, const RealVector& b) {
  return (a - b).lpNorm<Eigen::Infinity>() / std::max(1.0, a.lpNorm<Eigen::Infinity>());
}

PropertyResult bounded(std::string name, double measured, double limit, std::string detail = {}) {
  PropertyResult result;
  result.name = std::move(name);
  result.measured = measured;
  result.limit = limit;
  result.passed = measured <= limit;
  result.detail = std::move(detail);
  return result;
}

PropertyResult failed(std::string name, double limit, std::string detail) {
  PropertyResult result;
  result.name = std::move(name);
  result.measured = std::numeric_limits<double>::infinity();
  result.limit = limit;
  result.passed = false;
  result.detail = std::move(detail);
  return result;
}

constexpr MatrixKind kMatrixKinds[] = {MatrixKind::Gaussian, MatrixKind::NormalizedGaussian,
                                       MatrixKind::Bernoulli};

}  // namespace

bool SuiteReport::passed() const {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.passed; });
}

std::vector<std::string> SuiteReport::failures() const {
  std::vector<std::string> out;
  for (const PropertyResult& p : properties) {
    if (p.passed) continue;
    std::ostringstream line;
    line << suite << '/' << p.name << ": measured " << p.measured << " > limit " << p.limit;
    if (!p.detail.empty()) line << " (" << p.detail << ')';
    out.push_back(line.str());
  }
  return out;
}

SuiteReport run_equivalence_suite(const EquivalenceOptions& options) {
  SuiteReport report;
  report.suite = "equivalence";

  double lb_primal = 0.0;
  double lb_vform = 0.0;
  double lb_state = 0.0;
  double alb_primal = 0.0;
  double alb_vform = 0.0;
  double alb_state = 0.0;
  std::ostringstream instances;

  for (std::size_t i = 0; i < options.instances; ++i) {
    const std::size_t n = i < options.instances / 2 ? 100 : 400;
    const std::size_t m = n * 2 / 5;
    const std::size_t s = m / 5;
    const MatrixKind matrix = kMatrixKinds[i % 3];
    const SignalKind signal = i % 2 == 0 ? SignalKind::Gaussian : SignalKind::Uniform;
    const std::uint64_t seed = options.seed + i;
    const auto problem = problems::gen_bp(matrix, signal, n, m, s, seed);
    instances << (i ? " " : "") << to_string(matrix) << '/' << to_string(signal) << "/n" << n << "/seed" << seed;

    SolverConfig config;
    config.mu = 5.0;
    config.tau = default_tau(TauRule::PaperCS, config.mu, linalg::spectral_norm_sq(problem.a).value);
    config.tau_rule = TauRule::PaperCS;

    auto primal = solvers::initial_lb_primal(problem);
    auto dual = solvers::initial_dual(problem, config.tau);
    auto vform = solvers::initial_vform(problem, config.tau);
    auto accel_primal = solvers::initial_alb(problem);
    auto accel_dual = solvers::initial_accel_dual(problem, config.tau);
    auto accel_vform = solvers::initial_alb_vform(problem, config.tau);

    for (std::size_t k = 1; k <= options.iterations; ++k) {
      const RealVector v_before = vform.v;
      primal = solvers::lb_step_primal(primal, problem, config);
      auto d = solvers::dual_gd_step(dual, problem, config);
      auto v = solvers::lb_step_vform(vform, problem, config);
      dual = std::move(d.state);
      vform = std::move(v.state);
      lb_primal = std::max(lb_primal, relative_gap(primal.x, d.w));
      lb_vform = std::max(lb_vform, relative_gap(v.w, d.w));
      lb_state = std::max(lb_state, relative_gap(primal.p + primal.x / config.mu, v_before));
      lb_state = std::max(lb_state, relative_gap(linalg::matvec_t(problem.a, dual.y), vform.v));

      accel_primal = solvers::alb_step_primal(accel_primal, problem, config);
      auto ad = solvers::accel_dual_step(accel_dual, problem, config);
      auto av = solvers::alb_step_vform(accel_vform, problem, config);
      accel_dual = std::move(ad.state);
      accel_vform = std::move(av.state);
      alb_primal = std::max(alb_primal, relative_gap(accel_primal.x, ad.w));
      alb_vform = std::max(alb_vform, relative_gap(av.w, ad.w));
      alb_state = std::max(alb_state, relative_gap(linalg::matvec_t(problem.a, accel_dual.y_tilde),
                                                   accel_vform.v_tilde));
    }
  }

  const std::string detail = std::to_string(options.iterations) + " iterations on " + instances.str();
  report.properties.push_back(bounded("lb-primal-vs-dual", lb_primal, options.tolerance, detail));
  report.properties.push_back(bounded("lb-vform-vs-dual", lb_vform, options.tolerance, detail));
  report.properties.push_back(bounded("lb-state-identity", lb_state, options.tolerance,
                                      "p^{k+1} + x^{k+1}/mu = v^k = A^T y^k"));
  report.properties.push_back(bounded("alb-primal-vs-dual", alb_primal, options.tolerance, detail));
  report.properties.push_back(bounded("alb-vform-vs-dual", alb_vform, options.tolerance, detail));
  report.properties.push_back(bounded("alb-state-identity", alb_state, options.tolerance, "A^T y~^k = v~^k"));
  return report;
}

SuiteReport run_bregman_auglag_suite(const BregmanOptions& options) {
  SuiteReport report;
  report.suite = "bregman-auglag";
  const auto problem = problems::gen_bp(MatrixKind::Gaussian, SignalKind::Gaussian, options.n, options.m,
                                        std::max<std::size_t>(1, options.m / 5), options.seed + 7);
  solvers::InnerSolveOptions inner;
  inner.tol = options.inner_tol;
  inner.norm_a_sq = linalg::spectral_norm_sq(problem.a).value;

  auto bregman = solvers::initial_lb_primal(problem);
  auto auglag = solvers::initial_auglag(problem);
  double x_gap = 0.0;
  double p_gap = 0.0;
  try {
    for (std::size_t k = 1; k <= options.iterations; ++k) {
      bregman = solvers::bregman_exact_step(bregman, problem, inner);
      auglag = solvers::auglag_step(auglag, problem, inner);
      x_gap = std::max(x_gap, scaled_max_gap(bregman.x, auglag.x));
      p_gap = std::max(p_gap, scaled_max_gap(bregman.p, linalg::matvec_t(problem.a, auglag.lambda)));
    }
  } catch (const solvers::InnerSolveError& e) {
    report.properties.push_back(failed("x-sequences", options.tolerance, e.what()));
    return report;
  }
  std::ostringstream detail;
  detail << options.iterations << " outer iterations, " << options.m << "x" << options.n
         << ", inner tol " << options.inner_tol;
  report.properties.push_back(bounded("x-sequences", x_gap, options.tolerance, detail.str()));
  report.properties.push_back(bounded("p-equals-At-lambda", p_gap, options.tolerance, detail.str()));
  return report;
}

SuiteReport run_rate_suite(const RateOptions& options) {
  SuiteReport report;
  report.suite = "rates";
  const auto problem = problems::gen_bp(MatrixKind::Gaussian, SignalKind::Gaussian, options.n, options.m,
                                        std::max<std::size_t>(1, options.m / 5), options.seed + 42);
  SolverConfig config;
  config.mu = options.mu;
  config.tau = default_tau(TauRule::TheorySafe, config.mu, linalg::spectral_norm_sq(problem.a).value);
  config.tau_rule = TauRule::TheorySafe;
  config.max_iters = options.iterations;

  solvers::RunOptions run_options;
  run_options.record_dual = true;
  const auto lb = solvers::run(problem, config, Variant::Lb, StopRule::IterationCap, run_options);
  const auto alb = solvers::run(problem, config, Variant::Alb, StopRule::IterationCap, run_options);

  const auto reference = diagnostics::reference_dual_optimum(problem, config);
  const RealVector y0 = config.tau * problem.b;
  std::ostringstream ref_detail;
  ref_detail << "reference |grad G| = " << reference.gradient_norm << " after " << reference.iterations
             << " iterations" << (reference.reached_target ? "" : " (target not reached)");

  try {
    const auto lb_report = diagnostics::check_lb_rate(lb.trace, reference, y0, config.tau);
    const auto alb_report = diagnostics::check_alb_rate(alb.trace, reference, y0, config.tau);

    std::ostringstream lb_detail;
    lb_detail << lb_report.checked << " iterates, " << lb_report.violations << " violations, sup gap*k = "
              << lb_report.max_gap_times_k << "; " << ref_detail.str();
    if (!lb_report.note.empty()) lb_detail << "; " << lb_report.note;
    PropertyResult lb_bound = bounded("lb-rate-bound", lb_report.max_ratio, lb_report.slack, lb_detail.str());
    lb_bound.passed = lb_report.passed() && lb_report.checked == options.iterations;
    report.properties.push_back(lb_bound);

    std::ostringstream alb_detail;
    alb_detail << alb_report.checked << " iterates, " << alb_report.violations
               << " violations, sup gap*k^2 = " << alb_report.max_gap_times_k_sq << "; " << ref_detail.str();
    if (!alb_report.note.empty()) alb_detail << "; " << alb_report.note;
    PropertyResult alb_bound =
        bounded("alb-rate-bound", alb_report.max_ratio, alb_report.slack, alb_detail.str());
    alb_bound.passed = alb_report.passed() && alb_report.checked == options.iterations;
    report.properties.push_back(alb_bound);

    report.properties.push_back(bounded("lb-dual-monotone",
                                        static_cast<double>(lb_report.monotonicity_violations), 0.0,
                                        "count of k with G(y^k) > G(y^{k-1})"));
  } catch (const diagnostics::ReferenceQualityError& e) {
    report.properties.push_back(failed("rate-bounds", 1.0 + 1e-6, e.what()));
  }

  // G(y^k) = -L(x^{k+1}, y^k): the lagrangian column of record k+1 is taken
  // at the gradient point y^k.
  double identity = 0.0;
  for (std::size_t i = 0; i + 1 < lb.trace.records.size(); ++i) {
    const double g = *lb.trace.records[i].g_mu;
    const double l = *lb.trace.records[i + 1].lagrangian;
    identity = std::max(identity, std::abs(g + l) / std::max(1.0, std::abs(g)));
  }
  report.properties.push_back(bounded("dual-lagrangian-identity", identity, 1e-10));
  return report;
}

SuiteReport run_gradient_suite(const GradientOptions& options) {
  SuiteReport report;
  report.suite = "gradient";
  struct Shape {
    std::size_t m;
    std::size_t n;
  };
  constexpr Shape shapes[] = {{10, 25}, {20, 50}, {15, 40}, {30, 80}, {12, 30}};
  linalg::RngStream rng(options.seed + 99);
  double worst = 0.0;
  for (std::size_t i = 0; i < options.instances; ++i) {
    const Shape shape = shapes[i % std::size(shapes)];
    const bool nonnegative = i + 1 == options.instances;
    const ObjectiveKind objective = nonnegative ? ObjectiveKind::L1NonNeg : ObjectiveKind::L1;
    const auto problem = problems::gen_bp(kMatrixKinds[i % 3], SignalKind::Gaussian, shape.n, shape.m,
                                          std::max<std::size_t>(1, shape.m / 5), options.seed + 300 + i,
                                          nonnegative);
    const double mu = 5.0;
    for (std::size_t point = 0; point < options.points; ++point) {
      RealVector y = linalg::sample_gaussian(rng, shape.m);
      // Scale so that max |A^T y| = 2 and the shrink has active coordinates.
      y *= 2.0 / linalg::matvec_t(problem.a, y).lpNorm<Eigen::Infinity>();
      const RealVector analytic = problems::dual_objective(y, problem, mu, objective).gradient;
      const double h = 1e-6 * std::max(1.0, y.lpNorm<Eigen::Infinity>());
      RealVector numeric(y.size());
      for (Eigen::Index j = 0; j < y.size(); ++j) {
        RealVector plus = y;
        RealVector minus = y;
        plus[j] += h;
        minus[j] -= h;
        numeric[j] = (problems::dual_objective(plus, problem, mu, objective).value -
                      problems::dual_objective(minus, problem, mu, objective).value) /
                     (2.0 * h);
      }
      worst = std::max(worst, (numeric - analytic).norm() / analytic.norm());
    }
  }
  std::ostringstream detail;
  detail << options.points << " points on each of " << options.instances << " instances";
  report.properties.push_back(bounded("finite-difference", worst, options.tolerance, detail.str()));
  return report;
}

SuiteReport run_prox_suite(const ProxOptions& options) {
  SuiteReport report;
  report.suite = "prox";
  linalg::RngStream rng(options.seed + 5);
  const double step = options.grid_step;

  // shrink_vec against argmin_x alpha |x| + (x - z)^2 / 2 over a grid.
  double shrink_worst = 0.0;
  for (std::size_t i = 0; i < options.grid_inputs; ++i) {
    RealVector z(8);
    for (Eigen::Index j = 0; j < z.size(); ++j) z[j] = 3.0 * rng.uniform_pm1();
    const double alpha = 0.05 + 1.95 * rng.uniform01();
    const RealVector shrunk = prox::shrink_vec(z, alpha);
    for (Eigen::Index j = 0; j < z.size(); ++j) {
      double best_x = 0.0;
      double best_f = std::numeric_limits<double>::infinity();
      const auto points = static_cast<long>(std::llround(10.0 / step));
      for (long g = 0; g <= points; ++g) {
        const double x = -5.0 + static_cast<double>(g) * step;
        const double f = alpha * std::abs(x) + 0.5 * (x - z[j]) * (x - z[j]);
        if (f < best_f) {
          best_f = f;
          best_x = x;
        }
      }
      shrink_worst = std::max(shrink_worst, std::abs(best_x - shrunk[j]));
    }
  }
  report.properties.push_back(bounded("shrink-vec-grid", shrink_worst, step,
                                      std::to_string(options.grid_inputs) + " inputs of length 8"));

  // prox_l1_nonneg against argmin_{w >= 0} w + (w - mu v)^2 / (2 mu).
  double nonneg_worst = 0.0;
  for (std::size_t i = 0; i < options.grid_inputs; ++i) {
    RealVector v(8);
    for (Eigen::Index j = 0; j < v.size(); ++j) v[j] = 3.0 * rng.uniform_pm1();
    const double mu = 0.5 + 4.5 * rng.uniform01();
    const RealVector prox_value = prox::prox_l1_nonneg(v, mu);
    for (Eigen::Index j = 0; j < v.size(); ++j) {
      double best_w = 0.0;
      double best_f = std::numeric_limits<double>::infinity();
      const double upper = mu * (std::abs(v[j]) + 1.0);
      const auto points = static_cast<long>(std::ceil(upper / step));
      for (long g = 0; g <= points; ++g) {
        const double w = static_cast<double>(g) * step;
        const double f = w + (w - mu * v[j]) * (w - mu * v[j]) / (2.0 * mu);
        if (f < best_f) {
          best_f = f;
          best_w = w;
        }
      }
      nonneg_worst = std::max(nonneg_worst, std::abs(best_w - prox_value[j]));
    }
  }
  report.properties.push_back(bounded("prox-l1-nonneg-grid", nonneg_worst, step,
                                      std::to_string(options.grid_inputs) + " inputs of length 8"));

  // Diagonal matrices: singular value shrink == entrywise shrink, bit for bit.
  double diagonal_worst = 0.0;
  for (std::size_t i = 0; i < 50; ++i) {
    const std::size_t size = 1 + i % 30;
    RealVector d(static_cast<Eigen::Index>(size));
    for (Eigen::Index j = 0; j < d.size(); ++j) d[j] = j % 7 == 3 ? 0.0 : 4.0 * rng.uniform_pm1();
    const double gamma = 2.0 * rng.uniform01();
    const DenseMatrix shrunk = prox::shrink_matrix(DenseMatrix(d.asDiagonal()), gamma);
    const DenseMatrix expected = prox::shrink_vec(d, gamma).asDiagonal();
    diagonal_worst = std::max(diagonal_worst, (shrunk - expected).lpNorm<Eigen::Infinity>());
  }
  report.properties.push_back(bounded("shrink-matrix-diagonal", diagonal_worst, 0.0,
                                      "50 diagonal matrices of size 1..30, exact equality"));

  // ||shrink(a) - shrink(b)|| <= ||a - b||.
  double ratio_worst = 0.0;
  for (std::size_t i = 0; i < options.expansiveness_pairs; ++i) {
    RealVector a(16);
    RealVector b(16);
    for (Eigen::Index j = 0; j < a.size(); ++j) {
      a[j] = 3.0 * rng.uniform_pm1();
      b[j] = 3.0 * rng.uniform_pm1();
    }
    const double alpha = 2.0 * rng.uniform01();
    const double distance = (a - b).norm();
    if (distance == 0.0) continue;
    ratio_worst = std::max(ratio_worst, (prox::shrink_vec(a, alpha) - prox::shrink_vec(b, alpha)).norm() / distance);
  }
  report.properties.push_back(bounded("shrink-nonexpansive", ratio_worst, 1.0 + 1e-12,
                                      std::to_string(options.expansiveness_pairs) + " random pairs"));
  return report;
}

std::string reports_json(const std::vector<SuiteReport>& reports) {
  nlohmann::ordered_json doc;
  bool all = true;
  nlohmann::ordered_json suites = nlohmann::ordered_json::array();
  for (const SuiteReport& report : reports) {
    nlohmann::ordered_json properties = nlohmann::ordered_json::array();
    for (const PropertyResult& p : report.properties) {
      nlohmann::ordered_json entry;
      entry["name"] = p.name;
      entry["passed"] = p.passed;
      entry["measured"] = std::isfinite(p.measured) ? nlohmann::ordered_json(p.measured) : nlohmann::ordered_json(nullptr);
      entry["limit"] = p.limit;
      entry["detail"] = p.detail;
      properties.push_back(entry);
    }
    all = all && report.passed();
    suites.push_back({{"suite", report.suite}, {"passed", report.passed()}, {"properties", properties}});
  }
  doc["passed"] = all;
  doc["suites"] = suites;
  return doc.dump(2) + "\n";
}

}  // namespace bregman::cli
