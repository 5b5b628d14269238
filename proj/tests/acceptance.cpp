// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero if
// any criterion fails. Pass criterion numbers as arguments to run a subset.

#include "bregman/diagnostics.hpp"
#include "bregman/solvers.hpp"
#include "bregman_cli/parallel.hpp"
#include "bregman_cli/published.hpp"
#include "bregman_cli/repro.hpp"
#include "bregman_cli/suites.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace bregman;
using namespace bregman::cli;

struct Verdict {
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Verdict()> check;
};

Verdict from_suites(const std::vector<SuiteReport>& reports) {
  Verdict v{true, {}};
  std::ostringstream detail;
  for (const auto& report : reports) {
    for (const auto& p : report.properties) {
      detail << report.suite << '/' << p.name << '=' << p.measured << (p.passed ? " " : "(FAILED) ");
      v.passed = v.passed && p.passed;
    }
  }
  v.detail = detail.str();
  return v;
}

std::size_t threads() { return resolve_thread_count(); }

Verdict table1() {
  Table1Options opts;
  opts.threads = threads();
  const auto cells = run_table1(opts);
  std::cout << table1_markdown(cells, opts.max_iters);
  Verdict v{true, {}};
  std::ostringstream detail;
  for (const auto& cell : cells) {
    const std::string label = std::string(to_string(cell.matrix)) + "/" + std::string(to_string(cell.signal));
    if (!cell.error.empty() || !cell.lb || !cell.alb) {
      v.passed = false;
      detail << label << ": error " << cell.error << "; ";
      continue;
    }
    std::vector<std::string> misses;
    if (!cell.alb->converged || cell.alb->iterations > 500) misses.push_back("ALB > 500");
    if (cell.alb->rel_error > 1e-4) misses.push_back("ALB rel_error > 1e-4");
    if (3 * cell.alb->iterations > cell.lb->iterations) misses.push_back("ALB > LB/3");
    const auto* published = find_table1(cell.matrix, cell.signal);
    if (published != nullptr && published->lb.capped && cell.lb->converged && cell.lb->iterations <= 1500)
      misses.push_back("published LB capped but ours <= 1500");
    detail << label << ": LB " << format_count(*cell.lb) << " ALB " << format_count(*cell.alb)
           << " err " << cell.alb->rel_error;
    for (const auto& m : misses) detail << " [" << m << "]";
    detail << "; ";
    v.passed = v.passed && misses.empty();
  }
  v.detail = detail.str();
  return v;
}

Verdict table2() {
  Table2Options opts;
  opts.threads = threads();
  const auto cells = run_table2(opts);
  std::cout << table2_markdown(cells, opts.max_iters);
  Verdict v{true, {}};
  std::ostringstream detail;
  const auto within2 = [](std::size_t ours, std::size_t published) {
    return 2 * ours >= published && ours <= 2 * published;
  };
  for (const auto& cell : cells) {
    detail << "n=" << cell.n << "/FR=" << cell.fr << ": ";
    if (!cell.error.empty() || !cell.lb || !cell.alb) {
      v.passed = false;
      detail << "error " << cell.error << "; ";
      continue;
    }
    std::vector<std::string> misses;
    if (!cell.alb->converged || cell.alb->iterations >= cell.lb->iterations) misses.push_back("ALB >= LB");
    if (cell.nominal_n == 100 && cell.fr == 0.2) {
      if (!within2(cell.lb->iterations, 85)) misses.push_back("LB not within 2x of 85");
      if (!within2(cell.alb->iterations, 63)) misses.push_back("ALB not within 2x of 63");
      if (cell.lb->rel_error > 2e-4 || cell.alb->rel_error > 2e-4) misses.push_back("err > 2e-4");
    }
    detail << "LB " << format_count(*cell.lb) << " (err " << cell.lb->rel_error << ") ALB "
           << format_count(*cell.alb) << " (err " << cell.alb->rel_error << ")";
    for (const auto& m : misses) detail << " [" << m << "]";
    detail << "; ";
    v.passed = v.passed && misses.empty();
  }
  v.detail = detail.str();
  return v;
}

struct NonNegRun {
  std::size_t iterations = 0;
  bool converged = false;
  double residual = 0.0;
  double min_entry = 0.0;
};

Verdict nonnegative() {
  const auto problem = problems::gen_bp(MatrixKind::Gaussian, SignalKind::Gaussian, 2000, 800, 160, 0, true);
  SolverConfig config;
  config.mu = 5.0;
  config.objective = ObjectiveKind::L1NonNeg;
  config.tau_rule = TauRule::PaperCS;
  config.tau = default_tau(TauRule::PaperCS, config.mu, linalg::spectral_norm_sq(problem.a).value);
  config.residual_tol = 1e-5;
  config.max_iters = 5000;

  const auto solve = [&](Variant variant) {
    NonNegRun out;
    solvers::RunOptions opts;
    opts.on_iterate = [&](std::size_t, const RealVector& x) {
      out.min_entry = std::min(out.min_entry, x.minCoeff());
    };
    const auto res = solvers::run(problem, config, variant, StopRule::Residual, opts);
    out.iterations = res.trace.iterations();
    out.converged = res.trace.status == RunStatus::Converged;
    out.residual = diagnostics::residual_rel_bp(res.x, problem);
    return out;
  };
  const NonNegRun lb = solve(Variant::Lb);
  const NonNegRun alb = solve(Variant::Alb);

  std::ostringstream detail;
  detail << "LB " << lb.iterations << (lb.converged ? "" : "+") << " ALB " << alb.iterations
         << (alb.converged ? "" : "+") << " ALB residual " << alb.residual << " min entry LB "
         << lb.min_entry << " ALB " << alb.min_entry;
  const bool passed = alb.converged && alb.residual < 1e-5 && lb.min_entry >= 0.0 &&
                      alb.min_entry >= 0.0 && alb.iterations < lb.iterations;
  return {passed, detail.str()};
}

std::vector<Criterion> criteria() {
  return {
      {1, "equivalence of LB and ALB forms", 30,
       [] { return from_suites({run_equivalence_suite()}); }},
      {2, "Bregman equals augmented Lagrangian", 30,
       [] { return from_suites({run_bregman_auglag_suite()}); }},
      {3, "rate bounds", 60, [] { return from_suites({run_rate_suite()}); }},
      {4, "Table 1 qualitative reproduction", 600, table1},
      {5, "Table 2 qualitative reproduction", 600, table2},
      {6, "prox oracles", 10, [] { return from_suites({run_prox_suite()}); }},
      {7, "gradient check", 10, [] { return from_suites({run_gradient_suite()}); }},
      {8, "nonnegative basis pursuit", 60, nonnegative},
  };
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  std::vector<std::string> lines;
  bool all_passed = true;
  for (const auto& c : criteria()) {
    if (!selected.empty() && selected.count(c.id) == 0) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < c.budget_seconds;
    const bool passed = v.passed && in_time;
    all_passed = all_passed && passed;
    char timing[96];
    std::snprintf(timing, sizeof timing, "%.1f s of %.0f s%s", seconds, c.budget_seconds,
                  in_time ? "" : " (over budget)");
    std::ostringstream line;
    line << (passed ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << ") " << timing
         << " :: " << v.detail;
    std::cout << line.str() << std::endl;
    lines.push_back(line.str());
  }

  std::cout << "\nsummary\n";
  for (const auto& l : lines) std::cout << l.substr(0, l.find(" :: ")) << '\n';
  return all_passed ? 0 : 1;
}
