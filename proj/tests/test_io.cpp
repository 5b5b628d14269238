#include "bregman/serialization.hpp"
#include "bregman/solvers.hpp"
#include "bregman/trace_io.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>
#include <limits>

namespace bregman {
namespace {

namespace fs = std::filesystem;

TEST(Instance, BasisPursuitRoundTrip) {
  const auto p = problems::gen_bp(MatrixKind::Bernoulli, SignalKind::Uniform, 60, 24, 5, 8, true);
  const std::string bytes = io::encode_instance(p, 5.0);
  const auto back = io::decode_instance(bytes);
  ASSERT_TRUE(std::holds_alternative<BasisPursuitProblem>(back.problem));
  const auto& q = std::get<BasisPursuitProblem>(back.problem);
  EXPECT_EQ(q.a, p.a);
  EXPECT_EQ(q.b, p.b);
  EXPECT_EQ(*q.x_true, *p.x_true);
  EXPECT_EQ(q.meta->matrix, MatrixKind::Bernoulli);
  EXPECT_EQ(q.meta->seed, 8u);
  EXPECT_TRUE(q.meta->nonnegative);
  EXPECT_EQ(back.mu, 5.0);
  EXPECT_EQ(io::encode_instance(q, back.mu), bytes);
}

TEST(Instance, MatrixCompletionRoundTrip) {
  const auto p = problems::gen_mc(20, 2, 0.3, 4);
  const std::string bytes = io::encode_instance(p, std::nullopt);
  const auto back = io::decode_instance(bytes);
  const auto& q = std::get<MatrixCompletionProblem>(back.problem);
  EXPECT_EQ(q.omega, p.omega);
  EXPECT_EQ(q.observed, p.observed);
  EXPECT_EQ(*q.m_true, *p.m_true);
  EXPECT_FALSE(back.mu.has_value());
  EXPECT_EQ(io::encode_instance(q, std::nullopt), bytes);
}

TEST(Instance, RejectsMalformed) {
  const auto p = problems::gen_bp(MatrixKind::Gaussian, SignalKind::Gaussian, 20, 8, 2, 1);
  const std::string bytes = io::encode_instance(p, std::nullopt);
  EXPECT_THROW(io::decode_instance("garbage"), InputError);
  EXPECT_THROW(io::decode_instance(bytes.substr(0, bytes.size() - 8)), InputError);
  std::string wrong = bytes;
  wrong[0] = 'X';
  EXPECT_THROW(io::decode_instance(wrong), InputError);
}

TEST(Instance, HeaderIsSelfDescribing) {
  const auto p = problems::gen_mc(20, 2, 0.3, 4);
  const std::string bytes = io::encode_instance(p, 100.0);
  const auto first = bytes.find('\n');
  const auto second = bytes.find('\n', first + 1);
  const auto header = nlohmann::json::parse(bytes.substr(first + 1, second - first - 1));
  EXPECT_EQ(header["kind"], "matrix-completion");
  EXPECT_EQ(header["n"], 20);
  EXPECT_EQ(header["mu"], 100.0);
  EXPECT_EQ(header["arrays"][0]["name"], "omega");
  EXPECT_EQ(header["arrays"][0]["dtype"], "i64le");
}

TEST(Instance, FileRoundTrip) {
  const fs::path dir = fs::temp_directory_path() / "bregman_io_test";
  fs::create_directories(dir);
  const auto p = problems::gen_bp(MatrixKind::Gaussian, SignalKind::Gaussian, 20, 8, 2, 1);
  io::write_instance(dir / "bp.bin", p, std::nullopt);
  EXPECT_FALSE(fs::exists(dir / "bp.bin.tmp"));
  const auto back = io::read_instance(dir / "bp.bin");
  EXPECT_EQ(std::get<BasisPursuitProblem>(back.problem).a, p.a);
  EXPECT_THROW(io::read_instance(dir / "missing.bin"), InputError);
  fs::remove_all(dir);
}

TEST(Instance, Digest) {
  const auto p = problems::gen_bp(MatrixKind::Gaussian, SignalKind::Uniform, 2000, 800, 160, 0);
  const std::string d = io::instance_digest(p);
  EXPECT_NE(d.find("n=2000"), std::string::npos);
  EXPECT_NE(d.find("m=800"), std::string::npos);
  EXPECT_NE(d.find("s=160"), std::string::npos);
  EXPECT_NE(io::instance_digest(problems::gen_mc(100, 10, 0.2, 0)).find("p=9500"), std::string::npos);
}

TEST(TraceCsv, RoundTrip) {
  const auto p = problems::gen_bp(MatrixKind::Gaussian, SignalKind::Gaussian, 100, 40, 8, 2);
  SolverConfig c;
  c.tau = default_tau(TauRule::PaperCS, c.mu, linalg::spectral_norm_sq(p.a).value);
  c.max_iters = 50;
  solvers::RunOptions opts;
  opts.record_dual = true;
  opts.record_timing = true;
  const auto t = solvers::run(p, c, Variant::Alb, StopRule::Residual, opts).trace;
  const auto back = io::trace_from_csv(io::trace_to_csv(t));
  EXPECT_EQ(back.records, t.records);
}

TEST(TraceCsv, AbsentFieldsAndSpecialValues) {
  Trace t;
  t.records.push_back({1, 0.5, std::nullopt, std::nullopt, std::nullopt, std::nullopt});
  t.records.push_back({2, 0.25, 1e-300, std::numeric_limits<double>::infinity(), -0.1, 12});
  const std::string csv = io::trace_to_csv(t);
  EXPECT_EQ(csv.substr(0, io::kTraceHeader.size()), io::kTraceHeader);
  EXPECT_NE(csv.find("1,0.5,NA,NA,NA,NA"), std::string::npos);
  EXPECT_EQ(io::trace_from_csv(csv).records, t.records);
  EXPECT_THROW(io::trace_from_csv("k,residual_rel\n1,2\n"), InputError);
  EXPECT_THROW(io::trace_from_csv(std::string(io::kTraceHeader) + "\n1,abc,NA,NA,NA,NA\n"), InputError);
}

TEST(Summary, Fields) {
  Trace t;
  t.status = RunStatus::Converged;
  t.records.push_back({1, 1e-6, 2e-5, std::nullopt, std::nullopt, std::nullopt});
  t.meta["seed"] = "3";
  const auto j = nlohmann::json::parse(io::summary_json(t, {{"tau", "0.5"}}));
  EXPECT_EQ(j["status"], "converged");
  EXPECT_EQ(j["iterations"], 1);
  EXPECT_EQ(j["final"]["rel_error"], 2e-5);
  EXPECT_EQ(j["instance"]["seed"], "3");
  EXPECT_EQ(j["extra"]["tau"], "0.5");
}

TEST(PlotData, TwoColumns) {
  Trace t;
  t.records.push_back({1, 0.5, std::nullopt, std::nullopt, std::nullopt, std::nullopt});
  t.records.push_back({2, 0.25, 0.125, std::nullopt, std::nullopt, std::nullopt});
  EXPECT_EQ(io::plot_residual(t), "1 0.5\n2 0.25\n");
  EXPECT_EQ(io::plot_rel_error(t), "2 0.125\n");
}

}  // namespace
}  // namespace bregman
