#pragma once

#include "bregman/config.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bregman {

/// One row of a convergence trace, taken after iteration k (k counts from 1).
///
/// For the dual-trackable variants, g_mu is G_mu(y^k) and lagrangian is
/// L_mu(x^k, y_hat) where y_hat is the dual point the k-th step evaluated its
/// gradient at (y^{k-1} for LB, y~^{k-1} for ALB); hence
/// lagrangian_k == -G_mu(y_hat).
struct TraceRecord {
  std::size_t k = 0;
  double residual_rel = 0.0;
  std::optional<double> rel_error;
  std::optional<double> g_mu;
  std::optional<double> lagrangian;
  std::optional<std::int64_t> wall_ns;  ///< cumulative, only when timing is requested

  bool operator==(const TraceRecord&) const = default;
};

enum class RunStatus { Converged, IterCap };

std::string_view to_string(RunStatus status);

struct Trace {
  std::vector<TraceRecord> records;
  RunStatus status = RunStatus::IterCap;
  SolverConfig config;
  Variant variant = Variant::Lb;
  std::map<std::string, std::string> meta;  ///< instance description and seeds

  std::size_t iterations() const { return records.size(); }
  const TraceRecord* last() const { return records.empty() ? nullptr : &records.back(); }
};

}  // namespace bregman
