#include "bregman_cli/commands.hpp"

#include "bregman/errors.hpp"
#include "bregman/serialization.hpp"
#include "bregman/solvers.hpp"
#include "bregman/trace_io.hpp"
#include "bregman_cli/parallel.hpp"
#include "bregman_cli/repro.hpp"
#include "bregman_cli/suites.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace bregman::cli {

namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kVariants{"lb", "alb", "lb-primal", "lb-dual", "alb-primal", "alb-dual",
                                         "bregman", "auglag"};
const std::vector<std::string> kTauRules{"paper-cs", "theory-safe", "paper-mc"};
const std::vector<std::string> kMatrixKinds{"gaussian", "normalized-gaussian", "bernoulli"};
const std::vector<std::string> kSignalKinds{"gaussian", "uniform"};

std::size_t round_size(double value) { return static_cast<std::size_t>(std::llround(value)); }

/// Flags shared by `bp` and `mc`.
struct SolveFlags {
  std::string instance;
  std::uint64_t seed = 0;
  std::string variant = "alb";
  double mu = 0.0;
  std::string tau_rule;
  double tau = 0.0;
  std::string schedule = "tseng";
  double tol = 0.0;
  std::size_t max_iters = 0;
  bool timing = false;
  std::string out;

  CLI::Option* mu_opt = nullptr;
  CLI::Option* tau_opt = nullptr;
  CLI::Option* tau_rule_opt = nullptr;
};

struct BpFlags : SolveFlags {
  std::string matrix = "gaussian";
  std::string signal = "gaussian";
  std::size_t n = 2000;
  std::size_t m = 0;
  std::size_t s = 0;
  bool nonnegative = false;
  std::string objective = "l1";
  bool record_dual = false;
  double inner_tol = 1e-10;
};

struct McFlags : SolveFlags {
  std::size_t n = 100;
  std::size_t rank = 10;
  double fr = 0.2;
  std::string shrink_arg = "tilde";
};

struct GenBpFlags {
  std::string matrix = "gaussian";
  std::string signal = "gaussian";
  std::size_t n = 2000;
  std::size_t m = 0;
  std::size_t s = 0;
  std::uint64_t seed = 0;
  bool nonnegative = false;
  double mu = 0.0;
  std::string out = "bp_instance.bin";
  CLI::Option* mu_opt = nullptr;
};

struct GenMcFlags {
  std::size_t n = 100;
  std::size_t rank = 10;
  double fr = 0.2;
  std::uint64_t seed = 0;
  double mu = 0.0;
  std::string out = "mc_instance.bin";
  CLI::Option* mu_opt = nullptr;
};

struct VerifyFlags {
  std::string suite = "all";
  std::uint64_t seed = 0;
  std::string out;
};

struct Repro1Flags {
  double scale = 1.0;
  std::uint64_t seed = 0;
  double mu = 5.0;
  double tol = 1e-5;
  std::size_t max_iters = 5000;
  std::string out = "repro_table1";
};

struct Repro2Flags {
  double scale = 1.0;
  std::uint64_t seed = 0;
  double tol = 1e-4;
  std::size_t max_iters = 2000;
  std::size_t rank = 10;
  std::vector<std::size_t> ns{100, 200};
  std::vector<double> frs{0.2, 0.3};
  bool full = false;
  std::string out = "repro_table2";
};

void add_solver_flags(CLI::App* app, SolveFlags& flags, const std::vector<std::string>& variants) {
  app->add_option("--instance", flags.instance, "instance file written by `gen`")->check(CLI::ExistingFile);
  app->add_option("--seed", flags.seed, "seed when generating the instance in place");
  app->add_option("--variant", flags.variant, "iteration scheme")->check(CLI::IsMember(variants));
  flags.mu_opt = app->add_option("--mu", flags.mu, "regularization weight mu")->check(CLI::PositiveNumber);
  flags.tau_rule_opt =
      app->add_option("--tau-rule", flags.tau_rule, "step length rule")->check(CLI::IsMember(kTauRules));
  flags.tau_opt = app->add_option("--tau", flags.tau, "explicit step length")->check(CLI::PositiveNumber);
  flags.tau_opt->excludes(flags.tau_rule_opt);
  app->add_option("--schedule", flags.schedule, "extrapolation schedule: tseng or constant:<a>");
  app->add_option("--tol", flags.tol, "stop once the relative residual is below this");
  app->add_option("--max-iters", flags.max_iters, "iteration cap")
      ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()));
  app->add_flag("--timing", flags.timing, "record wall-clock nanoseconds in the trace");
  app->add_option("--out", flags.out, "output directory");
}

void write_run_outputs(const fs::path& dir, const Trace& trace, const std::map<std::string, std::string>& extras) {
  fs::create_directories(dir);
  io::write_file_atomic(dir / "trace.csv", io::trace_to_csv(trace));
  io::write_file_atomic(dir / "summary.json", io::summary_json(trace, extras));
  io::write_file_atomic(dir / "residual.dat", io::plot_residual(trace));
  io::write_file_atomic(dir / "rel_error.dat", io::plot_rel_error(trace));
}

int report_run(const Trace& trace, const fs::path& dir, std::ostream& out) {
  out << "status=" << to_string(trace.status) << " iterations=" << trace.iterations();
  if (const TraceRecord* last = trace.last()) {
    out << " residual_rel=" << io::format_real(last->residual_rel);
    if (last->rel_error) out << " rel_error=" << io::format_real(*last->rel_error);
  }
  out << " out=" << dir.string() << '\n';
  return trace.status == RunStatus::Converged ? kExitConverged : kExitIterCap;
}

int cmd_bp(const BpFlags& flags, std::ostream& out) {
  BasisPursuitProblem problem;
  std::optional<double> file_mu;
  if (!flags.instance.empty()) {
    io::Instance instance = io::read_instance(flags.instance);
    if (!std::holds_alternative<BasisPursuitProblem>(instance.problem)) {
      throw InputError("'" + flags.instance + "' holds a matrix completion instance; use `mc`");
    }
    problem = std::get<BasisPursuitProblem>(std::move(instance.problem));
    file_mu = instance.mu;
  } else {
    const std::size_t m = flags.m ? flags.m : round_size(0.4 * static_cast<double>(flags.n));
    const std::size_t s = flags.s ? flags.s : round_size(0.2 * static_cast<double>(m));
    problem = problems::gen_bp(matrix_kind_from_string(flags.matrix), signal_kind_from_string(flags.signal),
                               flags.n, m, s, flags.seed, flags.nonnegative);
  }

  SolverConfig config;
  config.mu = flags.mu_opt->count() ? flags.mu : file_mu.value_or(5.0);
  config.objective = objective_from_string(flags.objective);
  config.schedule = Schedule::parse(flags.schedule);
  config.residual_tol = flags.tol;
  config.max_iters = flags.max_iters;

  const double norm_a_sq = linalg::spectral_norm_sq(problem.a).value;
  if (flags.tau_opt->count()) {
    config.tau = flags.tau;
    config.tau_rule = TauRule::Explicit;
  } else {
    config.tau_rule = tau_rule_from_string(flags.tau_rule.empty() ? "paper-cs" : flags.tau_rule);
    if (config.tau_rule == TauRule::PaperMC) {
      throw InputError("--tau-rule paper-mc applies to matrix completion; use paper-cs or theory-safe");
    }
    config.tau = default_tau(config.tau_rule, config.mu, norm_a_sq);
  }

  solvers::RunOptions options;
  options.record_dual = flags.record_dual;
  options.record_timing = flags.timing;
  options.inner.tol = flags.inner_tol;
  options.inner.norm_a_sq = norm_a_sq;
  const auto result = solvers::run(problem, config, variant_from_string(flags.variant), StopRule::Residual, options);

  const fs::path dir = flags.out.empty() ? fs::path("bp_out") : fs::path(flags.out);
  write_run_outputs(dir, result.trace,
                    {{"tau", io::format_real(config.tau)},
                     {"norm_a_sq", io::format_real(norm_a_sq)},
                     {"instance", flags.instance.empty() ? std::string("generated") : flags.instance}});
  return report_run(result.trace, dir, out);
}

int cmd_mc(const McFlags& flags, std::ostream& out) {
  MatrixCompletionProblem problem;
  std::optional<double> file_mu;
  if (!flags.instance.empty()) {
    io::Instance instance = io::read_instance(flags.instance);
    if (!std::holds_alternative<MatrixCompletionProblem>(instance.problem)) {
      throw InputError("'" + flags.instance + "' holds a basis pursuit instance; use `bp`");
    }
    problem = std::get<MatrixCompletionProblem>(std::move(instance.problem));
    file_mu = instance.mu;
  } else {
    problem = problems::gen_mc(flags.n, flags.rank, flags.fr, flags.seed);
  }

  SolverConfig config;
  config.mu = flags.mu_opt->count() ? flags.mu : file_mu.value_or(5.0 * static_cast<double>(problem.n));
  config.objective = ObjectiveKind::Nuclear;
  config.schedule = Schedule::parse(flags.schedule);
  config.residual_tol = flags.tol;
  config.max_iters = flags.max_iters;
  config.mc_shrink_arg = mc_shrink_arg_from_string(flags.shrink_arg);
  if (flags.tau_opt->count()) {
    config.tau = flags.tau;
    config.tau_rule = TauRule::Explicit;
  } else {
    config.tau_rule = tau_rule_from_string(flags.tau_rule.empty() ? "paper-mc" : flags.tau_rule);
    // The sampling operator has norm 1.
    config.tau = default_tau(config.tau_rule, config.mu, 1.0);
  }

  solvers::RunOptions options;
  options.record_timing = flags.timing;
  const auto result = solvers::run(problem, config, variant_from_string(flags.variant), StopRule::Residual, options);

  const fs::path dir = flags.out.empty() ? fs::path("mc_out") : fs::path(flags.out);
  write_run_outputs(dir, result.trace,
                    {{"tau", io::format_real(config.tau)},
                     {"instance", flags.instance.empty() ? std::string("generated") : flags.instance}});
  return report_run(result.trace, dir, out);
}

int cmd_gen_bp(const GenBpFlags& flags, std::ostream& out) {
  const std::size_t m = flags.m ? flags.m : round_size(0.4 * static_cast<double>(flags.n));
  const std::size_t s = flags.s ? flags.s : round_size(0.2 * static_cast<double>(m));
  const auto problem = problems::gen_bp(matrix_kind_from_string(flags.matrix),
                                        signal_kind_from_string(flags.signal), flags.n, m, s, flags.seed,
                                        flags.nonnegative);
  const std::optional<double> mu = flags.mu_opt->count() ? std::optional<double>(flags.mu) : std::nullopt;
  io::write_instance(flags.out, problem, mu);
  out << io::instance_digest(problem) << '\n' << "wrote " << flags.out << '\n';
  return kExitConverged;
}

int cmd_gen_mc(const GenMcFlags& flags, std::ostream& out) {
  const auto problem = problems::gen_mc(flags.n, flags.rank, flags.fr, flags.seed);
  const std::optional<double> mu = flags.mu_opt->count() ? std::optional<double>(flags.mu) : std::nullopt;
  io::write_instance(flags.out, problem, mu);
  out << io::instance_digest(problem) << '\n' << "wrote " << flags.out << '\n';
  return kExitConverged;
}

int cmd_verify(const VerifyFlags& flags, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<SuiteReport> reports;
  const bool all = flags.suite == "all";
  if (all || flags.suite == "equivalence") {
    reports.push_back(run_equivalence_suite({.seed = flags.seed}));
    reports.push_back(run_bregman_auglag_suite({.seed = flags.seed}));
  }
  if (all || flags.suite == "rates") {
    reports.push_back(run_rate_suite({.seed = flags.seed}));
    reports.push_back(run_gradient_suite({.seed = flags.seed}));
  }
  if (all || flags.suite == "prox") reports.push_back(run_prox_suite({.seed = flags.seed}));

  const std::string json = reports_json(reports);
  out << json;
  if (!flags.out.empty()) {
    fs::create_directories(flags.out);
    io::write_file_atomic(fs::path(flags.out) / ("verify_" + flags.suite + ".json"), json);
  }
  std::size_t failures = 0;
  for (const SuiteReport& report : reports) {
    for (const std::string& line : report.failures()) {
      err << "FAILED " << line << '\n';
      ++failures;
    }
  }
  err << "verify " << flags.suite << ": " << failures << " failing properties, "
      << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s\n";
  return failures == 0 ? kExitConverged : kExitFailure;
}

template <class Cell>
void report_cell_timing(const std::vector<Cell>& cells, std::ostream& err) {
  double total = 0.0;
  for (const Cell& cell : cells) {
    if (cell.lb) total += cell.lb->seconds;
    if (cell.alb) total += cell.alb->seconds;
    if (!cell.error.empty()) err << "cell failed: " << cell.error << '\n';
  }
  err << "solver time " << total << " s\n";
}

int cmd_repro1(const Repro1Flags& flags, std::ostream& out, std::ostream& err) {
  Table1Options options;
  options.scale = flags.scale;
  options.seed = flags.seed;
  options.mu = flags.mu;
  options.tol = flags.tol;
  options.max_iters = flags.max_iters;
  options.threads = resolve_thread_count();
  const auto cells = run_table1(options);
  const std::string markdown = table1_markdown(cells, flags.max_iters);
  out << markdown;
  const fs::path dir(flags.out);
  fs::create_directories(dir);
  io::write_file_atomic(dir / "table1.md", markdown);
  io::write_file_atomic(dir / "table1.csv", table1_csv(cells));
  write_cell_traces(cells, dir / "traces");
  report_cell_timing(cells, err);
  return kExitConverged;
}

int cmd_repro2(const Repro2Flags& flags, std::ostream& out, std::ostream& err) {
  Table2Options options;
  options.scale = flags.scale;
  options.seed = flags.seed;
  options.tol = flags.tol;
  options.max_iters = flags.max_iters;
  options.rank = flags.rank;
  options.ns = flags.full ? std::vector<std::size_t>{100, 200, 300, 400, 500} : flags.ns;
  options.frs = flags.frs;
  options.threads = resolve_thread_count();
  const auto cells = run_table2(options);
  const std::string markdown = table2_markdown(cells, flags.max_iters);
  out << markdown;
  const fs::path dir(flags.out);
  fs::create_directories(dir);
  io::write_file_atomic(dir / "table2.md", markdown);
  io::write_file_atomic(dir / "table2.csv", table2_csv(cells));
  write_cell_traces(cells, dir / "traces");
  report_cell_timing(cells, err);
  return kExitConverged;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linearized Bregman and accelerated linearized Bregman experiments", "bregman"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "bregman 0.1.0");
  // Accepted before or after the command; a [bp], [mc], ... section of the
  // file configures that command, and command-line flags take precedence.
  app.set_config("--config", "", "TOML or INI file with option values, one section per command");
  app.fallthrough();
  app.allow_config_extras(CLI::config_extras_mode::error);

  GenBpFlags gen_bp;
  GenMcFlags gen_mc;
  auto* gen = app.add_subcommand("gen", "generate an instance file");
  gen->require_subcommand(1);
  auto* gen_bp_cmd = gen->add_subcommand("bp", "basis pursuit instance");
  gen_bp_cmd->add_option("--matrix", gen_bp.matrix)->check(CLI::IsMember(kMatrixKinds));
  gen_bp_cmd->add_option("--signal", gen_bp.signal)->check(CLI::IsMember(kSignalKinds));
  gen_bp_cmd->add_option("--n", gen_bp.n, "signal length");
  gen_bp_cmd->add_option("--m", gen_bp.m, "measurements (default 0.4 n)");
  gen_bp_cmd->add_option("--s", gen_bp.s, "sparsity (default 0.2 m)");
  gen_bp_cmd->add_option("--seed", gen_bp.seed);
  gen_bp_cmd->add_flag("--nonnegative", gen_bp.nonnegative, "nonnegative nonzeros");
  gen_bp.mu_opt = gen_bp_cmd->add_option("--mu", gen_bp.mu, "mu stored in the header")->check(CLI::PositiveNumber);
  gen_bp_cmd->add_option("--out", gen_bp.out, "instance file to write");

  auto* gen_mc_cmd = gen->add_subcommand("mc", "matrix completion instance");
  gen_mc_cmd->add_option("--n", gen_mc.n, "matrix size");
  gen_mc_cmd->add_option("--rank", gen_mc.rank);
  gen_mc_cmd->add_option("--fr", gen_mc.fr, "degrees-of-freedom ratio r(2n-r)/p");
  gen_mc_cmd->add_option("--seed", gen_mc.seed);
  gen_mc.mu_opt = gen_mc_cmd->add_option("--mu", gen_mc.mu, "mu stored in the header")->check(CLI::PositiveNumber);
  gen_mc_cmd->add_option("--out", gen_mc.out, "instance file to write");

  BpFlags bp;
  bp.tol = 1e-5;
  bp.max_iters = 5000;
  auto* bp_cmd = app.add_subcommand("bp", "solve a basis pursuit instance");
  add_solver_flags(bp_cmd, bp, kVariants);
  bp_cmd->add_option("--matrix", bp.matrix, "matrix kind when generating in place")->check(CLI::IsMember(kMatrixKinds));
  bp_cmd->add_option("--signal", bp.signal, "signal kind when generating in place")->check(CLI::IsMember(kSignalKinds));
  bp_cmd->add_option("--n", bp.n, "signal length when generating in place");
  bp_cmd->add_option("--m", bp.m, "measurements (default 0.4 n)");
  bp_cmd->add_option("--s", bp.s, "sparsity (default 0.2 m)");
  bp_cmd->add_flag("--nonnegative", bp.nonnegative, "nonnegative nonzeros");
  bp_cmd->add_option("--objective", bp.objective, "l1, or l1 restricted to x >= 0")->check(CLI::IsMember({"l1", "l1-nonneg"}));
  bp_cmd->add_flag("--record-dual", bp.record_dual, "record G_mu and the Lagrangian");
  bp_cmd->add_option("--inner-tol", bp.inner_tol, "inner solve tolerance for bregman/auglag");

  McFlags mc;
  mc.tol = 1e-4;
  mc.max_iters = 2000;
  auto* mc_cmd = app.add_subcommand("mc", "solve a matrix completion instance");
  add_solver_flags(mc_cmd, mc, {"lb", "alb"});
  mc_cmd->add_option("--n", mc.n, "matrix size when generating in place");
  mc_cmd->add_option("--rank", mc.rank, "rank when generating in place");
  mc_cmd->add_option("--fr", mc.fr, "degrees-of-freedom ratio when generating in place");
  mc_cmd->add_option("--mc-shrink-arg", mc.shrink_arg, "iterates entering the accelerated shrink")->check(CLI::IsMember({"tilde", "as-printed"}));

  VerifyFlags verify;
  auto* verify_cmd = app.add_subcommand("verify", "run property suites");
  verify_cmd->add_option("suite", verify.suite, "equivalence, rates, prox or all")
      ->check(CLI::IsMember({"equivalence", "rates", "prox", "all"}));
  verify_cmd->add_option("--seed", verify.seed);
  verify_cmd->add_option("--out", verify.out, "directory for the JSON report");

  Repro1Flags repro1;
  auto* repro1_cmd = app.add_subcommand("repro-table1", "compressed sensing grid, LB vs ALB");
  repro1_cmd->add_option("--scale", repro1.scale, "factor applied to n, in (0, 1]");
  repro1_cmd->add_option("--seed", repro1.seed);
  repro1_cmd->add_option("--mu", repro1.mu)->check(CLI::PositiveNumber);
  repro1_cmd->add_option("--tol", repro1.tol);
  repro1_cmd->add_option("--max-iters", repro1.max_iters)
      ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()));
  repro1_cmd->add_option("--out", repro1.out, "output directory");

  Repro2Flags repro2;
  auto* repro2_cmd = app.add_subcommand("repro-table2", "matrix completion grid, LB vs ALB");
  repro2_cmd->add_option("--scale", repro2.scale, "factor applied to n, in (0, 1]");
  repro2_cmd->add_option("--seed", repro2.seed);
  repro2_cmd->add_option("--tol", repro2.tol);
  repro2_cmd->add_option("--max-iters", repro2.max_iters)
      ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()));
  repro2_cmd->add_option("--rank", repro2.rank);
  auto* ns_opt = repro2_cmd->add_option("--n", repro2.ns, "matrix sizes")->delimiter(',');
  repro2_cmd->add_option("--fr", repro2.frs, "degrees-of-freedom ratios")->delimiter(',');
  repro2_cmd->add_flag("--full", repro2.full, "all sizes 100..500")->excludes(ns_opt);
  repro2_cmd->add_option("--out", repro2.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == static_cast<int>(CLI::ExitCodes::Success) ? kExitConverged : kExitUsage;
  }

  try {
    if (gen_bp_cmd->parsed()) return cmd_gen_bp(gen_bp, out);
    if (gen_mc_cmd->parsed()) return cmd_gen_mc(gen_mc, out);
    if (bp_cmd->parsed()) return cmd_bp(bp, out);
    if (mc_cmd->parsed()) return cmd_mc(mc, out);
    if (verify_cmd->parsed()) return cmd_verify(verify, out, err);
    if (repro1_cmd->parsed()) return cmd_repro1(repro1, out, err);
    if (repro2_cmd->parsed()) return cmd_repro2(repro2, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace bregman::cli
