#pragma once

#include "bregman/problems.hpp"

#include <cstddef>
#include <span>

namespace bregman::cli {

/// Iteration count as reported in a published table. `capped` marks entries
/// printed as "<cap>+", meaning the run stopped at the iteration cap.
struct PublishedCount {
  std::size_t iterations = 0;
  bool capped = false;
};

/// One row of Table 1: compressed sensing, n = 2000, m = 800, s = 160,
/// mu = 5, tau = 2 / (mu ||A||^2), tolerance 1e-5, cap 5000.
struct PublishedTable1Row {
  MatrixKind matrix;
  SignalKind signal;
  PublishedCount lb;
  PublishedCount alb;
  double lb_rel_error;
  double alb_rel_error;
};

/// One row of Table 2: matrix completion, rank 10, mu = 5n, tau = 1 / mu,
/// tolerance 1e-4, cap 2000.
struct PublishedTable2Row {
  double fr;
  std::size_t n;
  double sr;
  PublishedCount lb;
  double lb_rel_error;
  PublishedCount alb;
  double alb_rel_error;
};

std::span<const PublishedTable1Row> published_table1();
std::span<const PublishedTable2Row> published_table2();

const PublishedTable1Row* find_table1(MatrixKind matrix, SignalKind signal);
const PublishedTable2Row* find_table2(double fr, std::size_t n);

}  // namespace bregman::cli
