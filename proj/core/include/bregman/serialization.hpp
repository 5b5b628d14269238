#pragma once

#include "bregman/problems.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace bregman::io {

/// Instance file layout:
///
///   BREGMAN-INSTANCE 1\n
///   <single-line JSON header>\n
///   <payload>
///
/// The header names the problem kind, dimensions, generator parameters, seed,
/// RNG algorithm and mu, and lists the arrays stored in the payload with
/// their dtype ("f64le" or "i64le"), shape, byte offset from the start of the
/// payload and byte length. Matrices are row-major. The matrix-completion
/// index set is stored as row-major linear indices i * n + j.
inline constexpr std::string_view kInstanceMagic = "BREGMAN-INSTANCE 1";

std::string encode_instance(const BasisPursuitProblem& problem, std::optional<double> mu);
std::string encode_instance(const MatrixCompletionProblem& problem, std::optional<double> mu);

struct Instance {
  std::variant<BasisPursuitProblem, MatrixCompletionProblem> problem;
  std::optional<double> mu;
};

/// Throws InputError on a malformed or truncated file.
Instance decode_instance(std::string_view bytes);

void write_instance(const std::filesystem::path& path, const BasisPursuitProblem& problem,
                    std::optional<double> mu);
void write_instance(const std::filesystem::path& path, const MatrixCompletionProblem& problem,
                    std::optional<double> mu);
Instance read_instance(const std::filesystem::path& path);

/// One-line human summary: dimensions, sampling ratios and seed.
std::string instance_digest(const BasisPursuitProblem& problem);
std::string instance_digest(const MatrixCompletionProblem& problem);

/// Writes through a sibling temporary file and a rename, so readers never
/// observe a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);
std::string read_file(const std::filesystem::path& path);

}  // namespace bregman::io
