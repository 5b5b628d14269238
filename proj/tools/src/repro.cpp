#include "bregman_cli/repro.hpp"

#include "bregman/errors.hpp"
#include "bregman/serialization.hpp"
#include "bregman/solvers.hpp"
#include "bregman/trace_io.hpp"
#include "bregman_cli/parallel.hpp"
#include "bregman_cli/published.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace bregman::cli {

namespace {

using Clock = std::chrono::steady_clock;

template <class Problem>
RunOutcome run_once(const Problem& problem, const SolverConfig& config, Variant variant) {
  const auto start = Clock::now();
  auto result = solvers::run(problem, config, variant);
  RunOutcome outcome;
  outcome.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  outcome.iterations = result.trace.iterations();
  outcome.converged = result.trace.status == RunStatus::Converged;
  if (const TraceRecord* last = result.trace.last()) {
    outcome.residual_rel = last->residual_rel;
    outcome.rel_error = last->rel_error.value_or(std::nan(""));
  }
  outcome.trace = std::move(result.trace);
  return outcome;
}

std::string sci(double value, int digits) {
  if (std::isnan(value)) return "NA";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.*e", digits, value);
  return buffer;
}

std::string fixed(double value, int digits) {
  if (!std::isfinite(value)) return "NA";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, value);
  return buffer;
}

std::string published_count(const PublishedCount& count) {
  return std::to_string(count.iterations) + (count.capped ? "+" : "");
}

std::string run_count(const std::optional<RunOutcome>& outcome) {
  return outcome ? format_count(*outcome) : "failed";
}

/// ours / published; a published "+" entry gives a lower bound on its count.
std::string count_ratio(const std::optional<RunOutcome>& outcome, const PublishedCount* published) {
  if (!outcome || published == nullptr || published->iterations == 0) return "NA";
  return fixed(static_cast<double>(outcome->iterations) / static_cast<double>(published->iterations), 2);
}

std::size_t scaled(std::size_t n, double scale) {
  return static_cast<std::size_t>(std::llround(static_cast<double>(n) * scale));
}

void check_scale(double scale) {
  if (!(scale > 0.0 && scale <= 1.0)) throw InputError("scale must lie in (0, 1]");
}

std::string cell_stem(const Table1Cell& cell) {
  return "table1_" + std::string(to_string(cell.matrix)) + "_" + std::string(to_string(cell.signal));
}

std::string cell_stem(const Table2Cell& cell) {
  return "table2_fr" + fixed(cell.fr, 2) + "_n" + std::to_string(cell.n);
}

template <class Cell>
void merge_job_errors(std::vector<Cell>& cells, const std::vector<std::string>& job_errors) {
  for (std::size_t job = 0; job < job_errors.size(); ++job) {
    if (job_errors[job].empty()) continue;
    std::string& error = cells[job / 2].error;
    error += (error.empty() ? "" : "; ") + job_errors[job];
  }
}

}  // namespace

std::string format_count(const RunOutcome& outcome) {
  return std::to_string(outcome.iterations) + (outcome.converged ? "" : "+");
}

std::vector<Table1Cell> run_table1(const Table1Options& options) {
  check_scale(options.scale);
  const MatrixKind matrices[] = {MatrixKind::Gaussian, MatrixKind::NormalizedGaussian, MatrixKind::Bernoulli};
  const SignalKind signals[] = {SignalKind::Gaussian, SignalKind::Uniform};

  std::vector<Table1Cell> cells;
  for (MatrixKind matrix : matrices) {
    for (SignalKind signal : signals) {
      Table1Cell& cell = cells.emplace_back();
      cell.matrix = matrix;
      cell.signal = signal;
      cell.n = scaled(2000, options.scale);
      cell.m = scaled(cell.n, 0.4);
      cell.s = scaled(cell.m, 0.2);
      cell.seed = options.seed;
    }
  }

  // Six cells times two variants; each job is one solver run.
  std::vector<BasisPursuitProblem> instances(cells.size());
  parallel_for(cells.size(), options.threads, [&](std::size_t i) {
    Table1Cell& cell = cells[i];
    try {
      instances[i] = problems::gen_bp(cell.matrix, cell.signal, cell.n, cell.m, cell.s, cell.seed);
      cell.tau = default_tau(TauRule::PaperCS, options.mu, linalg::spectral_norm_sq(instances[i].a).value);
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
  });
  std::vector<std::string> job_errors(2 * cells.size());
  parallel_for(2 * cells.size(), options.threads, [&](std::size_t job) {
    Table1Cell& cell = cells[job / 2];
    if (!cell.error.empty()) return;
    SolverConfig config;
    config.mu = options.mu;
    config.tau = cell.tau;
    config.tau_rule = TauRule::PaperCS;
    config.residual_tol = options.tol;
    config.max_iters = options.max_iters;
    const bool accelerated = job % 2 == 1;
    try {
      auto outcome = run_once(instances[job / 2], config, accelerated ? Variant::Alb : Variant::Lb);
      (accelerated ? cell.alb : cell.lb) = std::move(outcome);
    } catch (const std::exception& e) {
      job_errors[job] = std::string(accelerated ? "alb: " : "lb: ") + e.what();
    }
  });
  merge_job_errors(cells, job_errors);
  return cells;
}

std::vector<Table2Cell> run_table2(const Table2Options& options) {
  check_scale(options.scale);
  std::vector<Table2Cell> cells;
  for (double fr : options.frs) {
    for (std::size_t nominal : options.ns) {
      Table2Cell& cell = cells.emplace_back();
      cell.fr = fr;
      cell.nominal_n = nominal;
      cell.n = scaled(nominal, options.scale);
      cell.rank = options.rank;
      cell.seed = options.seed;
      cell.mu = 5.0 * static_cast<double>(cell.n);
    }
  }

  std::vector<MatrixCompletionProblem> instances(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    Table2Cell& cell = cells[i];
    try {
      instances[i] = problems::gen_mc(cell.n, cell.rank, cell.fr, cell.seed);
      cell.p = instances[i].samples();
      cell.sr = instances[i].sampling_ratio();
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
  }
  std::vector<std::string> job_errors(2 * cells.size());
  parallel_for(2 * cells.size(), options.threads, [&](std::size_t job) {
    Table2Cell& cell = cells[job / 2];
    if (!cell.error.empty()) return;
    SolverConfig config;
    config.mu = cell.mu;
    config.tau = default_tau(TauRule::PaperMC, cell.mu, 1.0);
    config.tau_rule = TauRule::PaperMC;
    config.residual_tol = options.tol;
    config.max_iters = options.max_iters;
    config.objective = ObjectiveKind::Nuclear;
    const bool accelerated = job % 2 == 1;
    try {
      auto outcome = run_once(instances[job / 2], config, accelerated ? Variant::Alb : Variant::Lb);
      (accelerated ? cell.alb : cell.lb) = std::move(outcome);
    } catch (const std::exception& e) {
      job_errors[job] = std::string(accelerated ? "alb: " : "lb: ") + e.what();
    }
  });
  merge_job_errors(cells, job_errors);
  return cells;
}

std::string table1_markdown(const std::vector<Table1Cell>& cells, std::size_t cap) {
  std::ostringstream out;
  out << "Compressed sensing, LB vs ALB (cap " << cap << ")\n\n";
  out << "| matrix | signal | n | m | s | seed | LB iters | LB table 1 | ALB iters | ALB table 1 | ALB ratio"
         " | LB/ALB | LB rel err | LB table 1 | ALB rel err | ALB table 1 | note |\n";
  out << "|---|---|---|---|---|---|---|---|---|---|---|---|---|---|---|---|---|\n";
  for (const Table1Cell& cell : cells) {
    const PublishedTable1Row* published = find_table1(cell.matrix, cell.signal);
    out << "| " << to_string(cell.matrix) << " | " << to_string(cell.signal) << " | " << cell.n << " | "
        << cell.m << " | " << cell.s << " | " << cell.seed << " | " << run_count(cell.lb) << " | "
        << (published ? published_count(published->lb) : "NA") << " | " << run_count(cell.alb) << " | "
        << (published ? published_count(published->alb) : "NA") << " | "
        << count_ratio(cell.alb, published ? &published->alb : nullptr) << " | ";
    if (cell.lb && cell.alb && cell.alb->iterations > 0) {
      out << fixed(static_cast<double>(cell.lb->iterations) / static_cast<double>(cell.alb->iterations), 1);
    } else {
      out << "NA";
    }
    out << " | " << (cell.lb ? sci(cell.lb->rel_error, 4) : "NA") << " | "
        << (published ? sci(published->lb_rel_error, 4) : "NA") << " | "
        << (cell.alb ? sci(cell.alb->rel_error, 4) : "NA") << " | "
        << (published ? sci(published->alb_rel_error, 4) : "NA") << " | " << cell.error << " |\n";
  }
  return out.str();
}

std::string table1_csv(const std::vector<Table1Cell>& cells) {
  std::ostringstream out;
  out << "matrix,signal,n,m,s,seed,tau,lb_iters,lb_converged,lb_rel_error,alb_iters,alb_converged,"
         "alb_rel_error,table1_lb_iters,table1_lb_capped,table1_alb_iters,table1_lb_rel_error,"
         "table1_alb_rel_error,error\n";
  for (const Table1Cell& cell : cells) {
    const PublishedTable1Row* published = find_table1(cell.matrix, cell.signal);
    out << to_string(cell.matrix) << ',' << to_string(cell.signal) << ',' << cell.n << ',' << cell.m << ','
        << cell.s << ',' << cell.seed << ',' << io::format_real(cell.tau) << ',';
    for (const auto* outcome : {&cell.lb, &cell.alb}) {
      if (*outcome) {
        out << (*outcome)->iterations << ',' << ((*outcome)->converged ? 1 : 0) << ','
            << io::format_real((*outcome)->rel_error) << ',';
      } else {
        out << "NA,NA,NA,";
      }
    }
    if (published) {
      out << published->lb.iterations << ',' << (published->lb.capped ? 1 : 0) << ','
          << published->alb.iterations << ',' << published->lb_rel_error << ',' << published->alb_rel_error;
    } else {
      out << "NA,NA,NA,NA,NA";
    }
    out << ',' << (cell.error.empty() ? "" : "\"" + cell.error + "\"") << '\n';
  }
  return out.str();
}

std::string table2_markdown(const std::vector<Table2Cell>& cells, std::size_t cap) {
  std::ostringstream out;
  out << "Matrix completion, LB vs ALB (cap " << cap << ")\n\n";
  out << "| FR | n | r | p | SR | SR table 2 | LB iters | LB table 2 | LB err | LB err table 2 | ALB iters"
         " | ALB table 2 | ALB err | ALB err table 2 | LB ratio | ALB ratio | note |\n";
  out << "|---|---|---|---|---|---|---|---|---|---|---|---|---|---|---|---|---|\n";
  for (const Table2Cell& cell : cells) {
    const PublishedTable2Row* published =
        cell.n == cell.nominal_n ? find_table2(cell.fr, cell.nominal_n) : nullptr;
    out << "| " << fixed(cell.fr, 1) << " | " << cell.n << " | " << cell.rank << " | " << cell.p << " | "
        << fixed(cell.sr, 2) << " | " << (published ? fixed(published->sr, 2) : "NA") << " | "
        << run_count(cell.lb) << " | " << (published ? published_count(published->lb) : "NA") << " | "
        << (cell.lb ? sci(cell.lb->rel_error, 2) : "NA") << " | "
        << (published ? sci(published->lb_rel_error, 2) : "NA") << " | " << run_count(cell.alb) << " | "
        << (published ? published_count(published->alb) : "NA") << " | "
        << (cell.alb ? sci(cell.alb->rel_error, 2) : "NA") << " | "
        << (published ? sci(published->alb_rel_error, 2) : "NA") << " | "
        << count_ratio(cell.lb, published ? &published->lb : nullptr) << " | "
        << count_ratio(cell.alb, published ? &published->alb : nullptr) << " | " << cell.error << " |\n";
  }
  return out.str();
}

std::string table2_csv(const std::vector<Table2Cell>& cells) {
  std::ostringstream out;
  out << "fr,n,rank,p,sr,seed,mu,lb_iters,lb_converged,lb_rel_error,alb_iters,alb_converged,alb_rel_error,"
         "table2_lb_iters,table2_lb_capped,table2_alb_iters,table2_alb_capped,table2_lb_rel_error,"
         "table2_alb_rel_error,error\n";
  for (const Table2Cell& cell : cells) {
    const PublishedTable2Row* published =
        cell.n == cell.nominal_n ? find_table2(cell.fr, cell.nominal_n) : nullptr;
    out << io::format_real(cell.fr) << ',' << cell.n << ',' << cell.rank << ',' << cell.p << ','
        << io::format_real(cell.sr) << ',' << cell.seed << ',' << io::format_real(cell.mu) << ',';
    for (const auto* outcome : {&cell.lb, &cell.alb}) {
      if (*outcome) {
        out << (*outcome)->iterations << ',' << ((*outcome)->converged ? 1 : 0) << ','
            << io::format_real((*outcome)->rel_error) << ',';
      } else {
        out << "NA,NA,NA,";
      }
    }
    if (published) {
      out << published->lb.iterations << ',' << (published->lb.capped ? 1 : 0) << ','
          << published->alb.iterations << ',' << (published->alb.capped ? 1 : 0) << ','
          << published->lb_rel_error << ',' << published->alb_rel_error;
    } else {
      out << "NA,NA,NA,NA,NA,NA";
    }
    out << ',' << (cell.error.empty() ? "" : "\"" + cell.error + "\"") << '\n';
  }
  return out.str();
}

void write_cell_traces(const std::vector<Table1Cell>& cells, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const Table1Cell& cell : cells) {
    if (cell.lb) io::write_file_atomic(dir / (cell_stem(cell) + "_lb.csv"), io::trace_to_csv(cell.lb->trace));
    if (cell.alb) io::write_file_atomic(dir / (cell_stem(cell) + "_alb.csv"), io::trace_to_csv(cell.alb->trace));
  }
}

void write_cell_traces(const std::vector<Table2Cell>& cells, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const Table2Cell& cell : cells) {
    if (cell.lb) io::write_file_atomic(dir / (cell_stem(cell) + "_lb.csv"), io::trace_to_csv(cell.lb->trace));
    if (cell.alb) io::write_file_atomic(dir / (cell_stem(cell) + "_alb.csv"), io::trace_to_csv(cell.alb->trace));
  }
}

}  // namespace bregman::cli
