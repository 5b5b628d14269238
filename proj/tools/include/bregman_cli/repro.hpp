#pragma once

#include "bregman/problems.hpp"
#include "bregman/trace.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace bregman::cli {

struct RunOutcome {
  std::size_t iterations = 0;
  bool converged = false;
  double residual_rel = 0.0;
  double rel_error = 0.0;
  double seconds = 0.0;
  Trace trace;
};

struct Table1Options {
  double scale = 1.0;         ///< applied to n; m and s follow as 0.4 n and 0.2 m
  std::uint64_t seed = 0;     ///< every cell is generated from this seed
  double mu = 5.0;
  double tol = 1e-5;
  std::size_t max_iters = 5000;
  std::size_t threads = 1;
};

struct Table1Cell {
  MatrixKind matrix = MatrixKind::Gaussian;
  SignalKind signal = SignalKind::Gaussian;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t s = 0;
  std::uint64_t seed = 0;
  double tau = 0.0;
  std::optional<RunOutcome> lb;
  std::optional<RunOutcome> alb;
  std::string error;  ///< non-empty if the cell failed
};

/// Six (matrix, signal) cells, each run with LB and ALB under
/// tau = 2 / (mu ||A||^2).
std::vector<Table1Cell> run_table1(const Table1Options& options);

struct Table2Options {
  double scale = 1.0;  ///< applied to n
  std::uint64_t seed = 0;
  std::vector<std::size_t> ns{100, 200};
  std::vector<double> frs{0.2, 0.3};
  std::size_t rank = 10;
  double tol = 1e-4;
  std::size_t max_iters = 2000;
  std::size_t threads = 1;
};

struct Table2Cell {
  double fr = 0.0;
  std::size_t nominal_n = 0;  ///< n before scaling, used to find the published row
  std::size_t n = 0;
  std::size_t rank = 0;
  std::size_t p = 0;
  double sr = 0.0;
  std::uint64_t seed = 0;
  double mu = 0.0;
  std::optional<RunOutcome> lb;
  std::optional<RunOutcome> alb;
  std::string error;
};

/// LB and ALB on each (fr, n) cell with mu = 5n and tau = 1 / mu.
std::vector<Table2Cell> run_table2(const Table2Options& options);

/// Side-by-side tables. Timing is not included so the text is reproducible.
std::string table1_markdown(const std::vector<Table1Cell>& cells, std::size_t cap);
std::string table1_csv(const std::vector<Table1Cell>& cells);
std::string table2_markdown(const std::vector<Table2Cell>& cells, std::size_t cap);
std::string table2_csv(const std::vector<Table2Cell>& cells);

/// Writes one trace CSV per cell and variant into `dir`.
void write_cell_traces(const std::vector<Table1Cell>& cells, const std::filesystem::path& dir);
void write_cell_traces(const std::vector<Table2Cell>& cells, const std::filesystem::path& dir);

/// "330" or "5000+" for a run stopped at the cap.
std::string format_count(const RunOutcome& outcome);

}  // namespace bregman::cli
