#include "bregman/trace_io.hpp"

#include "bregman/errors.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

namespace bregman::io {

using nlohmann::ordered_json;

namespace {

constexpr std::string_view kNa = "NA";

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_real(std::string_view field, std::size_t line_no) {
  double value = 0.0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    // from_chars rejects the spellings printf uses for non-finite values.
    if (field == "inf") return std::numeric_limits<double>::infinity();
    if (field == "-inf") return -std::numeric_limits<double>::infinity();
    if (field == "nan" || field == "-nan") return std::numeric_limits<double>::quiet_NaN();
    throw InputError("trace CSV line " + std::to_string(line_no) + ": bad number '" +
                     std::string(field) + "'");
  }
  return value;
}

template <class T>
T parse_integer(std::string_view field, std::size_t line_no) {
  T value{};
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw InputError("trace CSV line " + std::to_string(line_no) + ": bad integer '" +
                     std::string(field) + "'");
  }
  return value;
}

std::optional<double> parse_optional(std::string_view field, std::size_t line_no) {
  if (field == kNa) return std::nullopt;
  return parse_real(field, line_no);
}

void append_optional(std::string& out, const std::optional<double>& value) {
  out.push_back(',');
  if (value) {
    out += format_real(*value);
  } else {
    out += kNa;
  }
}

ordered_json real_or_null(const std::optional<double>& value) {
  if (value && std::isfinite(*value)) return *value;
  return nullptr;
}

}  // namespace

std::string format_real(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string trace_to_csv(const Trace& trace) {
  std::string out(kTraceHeader);
  out.push_back('\n');
  for (const TraceRecord& record : trace.records) {
    out += std::to_string(record.k);
    out.push_back(',');
    out += format_real(record.residual_rel);
    append_optional(out, record.rel_error);
    append_optional(out, record.g_mu);
    append_optional(out, record.lagrangian);
    out.push_back(',');
    if (record.wall_ns) {
      out += std::to_string(*record.wall_ns);
    } else {
      out += kNa;
    }
    out.push_back('\n');
  }
  return out;
}

Trace trace_from_csv(std::string_view csv) {
  Trace trace;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool saw_header = false;
  while (pos < csv.size()) {
    std::size_t end = csv.find('\n', pos);
    if (end == std::string_view::npos) end = csv.size();
    std::string_view line = csv.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != kTraceHeader) throw InputError("trace CSV: unexpected header '" + std::string(line) + "'");
      saw_header = true;
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 6) {
      throw InputError("trace CSV line " + std::to_string(line_no) + ": expected 6 fields");
    }
    TraceRecord record;
    record.k = parse_integer<std::size_t>(fields[0], line_no);
    record.residual_rel = parse_real(fields[1], line_no);
    record.rel_error = parse_optional(fields[2], line_no);
    record.g_mu = parse_optional(fields[3], line_no);
    record.lagrangian = parse_optional(fields[4], line_no);
    if (fields[5] != kNa) record.wall_ns = parse_integer<std::int64_t>(fields[5], line_no);
    trace.records.push_back(record);
  }
  if (!saw_header) throw InputError("trace CSV: missing header");
  return trace;
}

std::string summary_json(const Trace& trace, const std::map<std::string, std::string>& extras) {
  const SolverConfig& config = trace.config;
  ordered_json doc;
  doc["status"] = std::string(to_string(trace.status));
  doc["iterations"] = trace.iterations();

  ordered_json final_metrics;
  if (const TraceRecord* last = trace.last()) {
    final_metrics["residual_rel"] = real_or_null(last->residual_rel);
    final_metrics["rel_error"] = real_or_null(last->rel_error);
    final_metrics["g_mu"] = real_or_null(last->g_mu);
    final_metrics["lagrangian"] = real_or_null(last->lagrangian);
  }
  doc["final"] = final_metrics.is_null() ? ordered_json::object() : final_metrics;

  doc["config"] = {{"variant", std::string(to_string(trace.variant))},
                   {"mu", config.mu},
                   {"tau", config.tau},
                   {"tau_rule", std::string(to_string(config.tau_rule))},
                   {"schedule", config.schedule.describe()},
                   {"tol", config.residual_tol},
                   {"max_iters", config.max_iters},
                   {"objective", std::string(to_string(config.objective))},
                   {"mc_shrink_arg", std::string(to_string(config.mc_shrink_arg))}};

  ordered_json meta = ordered_json::object();
  for (const auto& [key, value] : trace.meta) meta[key] = value;
  doc["instance"] = meta;

  if (!extras.empty()) {
    ordered_json extra = ordered_json::object();
    for (const auto& [key, value] : extras) extra[key] = value;
    doc["extra"] = extra;
  }
  return doc.dump(2) + "\n";
}

std::string plot_residual(const Trace& trace) {
  std::string out;
  for (const TraceRecord& record : trace.records) {
    out += std::to_string(record.k);
    out.push_back(' ');
    out += format_real(record.residual_rel);
    out.push_back('\n');
  }
  return out;
}

std::string plot_rel_error(const Trace& trace) {
  std::string out;
  for (const TraceRecord& record : trace.records) {
    if (!record.rel_error) continue;
    out += std::to_string(record.k);
    out.push_back(' ');
    out += format_real(*record.rel_error);
    out.push_back('\n');
  }
  return out;
}

}  // namespace bregman::io
