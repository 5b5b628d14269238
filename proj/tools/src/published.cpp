#include "bregman_cli/published.hpp"

#include <array>
#include <cmath>

namespace bregman::cli {

namespace {

constexpr PublishedCount count(std::size_t n) { return {n, false}; }
constexpr PublishedCount capped(std::size_t n) { return {n, true}; }

// Table 1, "Compare linearized Bregman (LB) with accelerated linearized
// Bregman (ALB)".
constexpr std::array<PublishedTable1Row, 6> kTable1{{
    {MatrixKind::Gaussian, SignalKind::Gaussian, capped(5000), count(330), 5.1715e-3, 1.4646e-5},
    {MatrixKind::Gaussian, SignalKind::Uniform, count(1681), count(214), 2.2042e-5, 1.5241e-5},
    {MatrixKind::NormalizedGaussian, SignalKind::Gaussian, count(2625), count(234), 3.2366e-5, 1.2664e-5},
    {MatrixKind::NormalizedGaussian, SignalKind::Uniform, capped(5000), count(292), 1.2621e-2, 1.5629e-5},
    {MatrixKind::Bernoulli, SignalKind::Gaussian, count(2314), count(222), 4.2057e-5, 1.0812e-5},
    {MatrixKind::Bernoulli, SignalKind::Uniform, capped(5000), count(304), 1.6141e-2, 1.5732e-5},
}};

// Table 2, "Comparison between LB and ALB on Matrix Completion Problems".
constexpr std::array<PublishedTable2Row, 10> kTable2{{
    {0.2, 100, 0.95, count(85), 1.07e-4, count(63), 1.11e-4},
    {0.2, 200, 0.49, count(283), 1.62e-4, count(171), 1.58e-4},
    {0.2, 300, 0.33, count(466), 1.64e-4, count(261), 1.60e-4},
    {0.2, 400, 0.25, count(667), 1.79e-4, count(324), 1.65e-4},
    {0.2, 500, 0.20, count(831), 1.76e-4, count(398), 1.65e-4},
    {0.3, 100, 0.63, count(294), 1.75e-4, count(163), 1.65e-4},
    {0.3, 200, 0.33, count(1224), 3.76e-4, count(289), 1.83e-4},
    {0.3, 300, 0.22, capped(2000), 3.59e-3, count(406), 1.93e-4},
    {0.3, 400, 0.17, capped(2000), 1.12e-2, count(455), 1.80e-4},
    {0.3, 500, 0.13, capped(2000), 3.14e-2, count(1016), 7.49e-3},
}};

}  // namespace

std::span<const PublishedTable1Row> published_table1() { return kTable1; }
std::span<const PublishedTable2Row> published_table2() { return kTable2; }

const PublishedTable1Row* find_table1(MatrixKind matrix, SignalKind signal) {
  for (const auto& row : kTable1) {
    if (row.matrix == matrix && row.signal == signal) return &row;
  }
  return nullptr;
}

const PublishedTable2Row* find_table2(double fr, std::size_t n) {
  for (const auto& row : kTable2) {
    if (std::abs(row.fr - fr) < 1e-9 && row.n == n) return &row;
  }
  return nullptr;
}

}  // namespace bregman::cli
