#pragma once

#include "bregman/trace.hpp"

#include <map>
#include <string>
#include <string_view>

namespace bregman::io {

inline constexpr std::string_view kTraceHeader = "k,residual_rel,rel_error,g_mu,lagrangian,wall_ns";

/// One row per record; reals use 17 significant digits so parsing recovers
/// them exactly, absent fields are written as NA.
std::string trace_to_csv(const Trace& trace);

/// Parses the records of a trace CSV. Status, config and meta are not part of
/// the CSV and keep their defaults. Throws InputError on malformed input.
Trace trace_from_csv(std::string_view csv);

/// Summary document: status, iteration count, final metrics, solver config,
/// variant, instance meta (including seeds) and any caller extras.
std::string summary_json(const Trace& trace, const std::map<std::string, std::string>& extras = {});

/// Two-column plot data "k value", one line per record.
std::string plot_residual(const Trace& trace);
/// Rows without a relative error are skipped.
std::string plot_rel_error(const Trace& trace);

/// Shortest-exact formatting used by every text output.
std::string format_real(double value);

}  // namespace bregman::io
