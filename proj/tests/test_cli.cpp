#include "bregman/errors.hpp"
#include "bregman/serialization.hpp"
#include "bregman/trace_io.hpp"
#include "bregman_cli/commands.hpp"
#include "bregman_cli/parallel.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bregman::cli {
namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
protected:
  fs::path dir;

  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir = fs::temp_directory_path() / (std::string("bregman_cli_") + info->name());
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  std::string path(const std::string& name) const { return (dir / name).string(); }

  CliResult call(std::vector<std::string> args) const {
    args.insert(args.begin(), "bregman");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
  }
};

TEST_F(Cli, NoCommandIsUsageError) { EXPECT_EQ(call({}).code, kExitUsage); }

TEST_F(Cli, UnknownFlagIsUsageError) {
  EXPECT_EQ(call({"bp", "--bogus", "1"}).code, kExitUsage);
  EXPECT_EQ(call({"bp", "--variant", "newton"}).code, kExitUsage);
}

TEST_F(Cli, GenBpDeterministic) {
  const auto a = call({"gen", "bp", "--matrix", "gaussian", "--signal", "uniform", "--n", "200",
                       "--seed", "0", "--out", path("a.bin")});
  const auto b = call({"gen", "bp", "--matrix", "gaussian", "--signal", "uniform", "--n", "200",
                       "--seed", "0", "--out", path("b.bin")});
  ASSERT_EQ(a.code, kExitConverged) << a.err;
  ASSERT_EQ(b.code, kExitConverged) << b.err;
  EXPECT_NE(a.out.find("n=200"), std::string::npos);
  EXPECT_NE(a.out.find("m=80"), std::string::npos);
  EXPECT_NE(a.out.find("s=16"), std::string::npos);
  EXPECT_EQ(io::read_file(path("a.bin")), io::read_file(path("b.bin")));
}

TEST_F(Cli, GenMcSampleCount) {
  const auto r = call({"gen", "mc", "--n", "100", "--rank", "10", "--fr", "0.2", "--out", path("mc.bin")});
  ASSERT_EQ(r.code, kExitConverged) << r.err;
  EXPECT_NE(r.out.find("p=9500"), std::string::npos);
  const auto inst = io::read_instance(path("mc.bin"));
  EXPECT_EQ(std::get<MatrixCompletionProblem>(inst.problem).samples(), 9500u);
}

TEST_F(Cli, GenInvalidDimensions) {
  const auto r = call({"gen", "bp", "--n", "100", "--m", "200", "--out", path("x.bin")});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_FALSE(r.err.empty());
  EXPECT_EQ(call({"gen", "mc", "--n", "10", "--rank", "5", "--fr", "0.5", "--out", path("y.bin")}).code,
            kExitUsage);
}

TEST_F(Cli, SolveExitCodesAndOutputs) {
  ASSERT_EQ(call({"gen", "bp", "--n", "200", "--seed", "1", "--out", path("bp.bin")}).code, 0);
  const auto capped = call({"bp", "--instance", path("bp.bin"), "--variant", "lb", "--max-iters", "20",
                            "--out", path("lb")});
  EXPECT_EQ(capped.code, kExitIterCap);
  EXPECT_NE(capped.out.find("status=iteration-cap"), std::string::npos);
  const auto ok = call({"bp", "--instance", path("bp.bin"), "--variant", "alb", "--out", path("alb")});
  ASSERT_EQ(ok.code, kExitConverged) << ok.err;
  for (const char* f : {"trace.csv", "summary.json", "residual.dat", "rel_error.dat"})
    EXPECT_TRUE(fs::exists(dir / "alb" / f)) << f;
  const auto trace = io::trace_from_csv(io::read_file(dir / "alb" / "trace.csv"));
  const auto summary = nlohmann::json::parse(io::read_file(dir / "alb" / "summary.json"));
  EXPECT_EQ(summary["iterations"], trace.records.size());
  EXPECT_EQ(summary["status"], "converged");
  EXPECT_LT(trace.records.back().residual_rel, 1e-5);
}

TEST_F(Cli, ByteIdenticalReruns) {
  const std::vector<std::string> base{"bp", "--n", "150", "--seed", "3", "--variant", "alb", "--record-dual"};
  auto a = base;
  a.insert(a.end(), {"--out", path("a")});
  auto b = base;
  b.insert(b.end(), {"--out", path("b")});
  ASSERT_EQ(call(a).code, kExitConverged);
  ASSERT_EQ(call(b).code, kExitConverged);
  for (const char* f : {"trace.csv", "residual.dat", "rel_error.dat"})
    EXPECT_EQ(io::read_file(dir / "a" / f), io::read_file(dir / "b" / f)) << f;
  auto sa = nlohmann::json::parse(io::read_file(dir / "a" / "summary.json"));
  auto sb = nlohmann::json::parse(io::read_file(dir / "b" / "summary.json"));
  EXPECT_EQ(sa, sb);
}

TEST_F(Cli, ConstantScheduleMatchesLb) {
  ASSERT_EQ(call({"gen", "bp", "--n", "150", "--seed", "4", "--out", path("bp.bin")}).code, 0);
  call({"bp", "--instance", path("bp.bin"), "--variant", "lb", "--max-iters", "200", "--out", path("lb")});
  call({"bp", "--instance", path("bp.bin"), "--variant", "alb", "--schedule", "constant:1", "--max-iters",
        "200", "--out", path("alb")});
  EXPECT_EQ(io::read_file(dir / "lb" / "trace.csv"), io::read_file(dir / "alb" / "trace.csv"));
}

TEST_F(Cli, SolverMismatchIsUsageError) {
  ASSERT_EQ(call({"gen", "mc", "--n", "20", "--rank", "2", "--fr", "0.3", "--out", path("mc.bin")}).code, 0);
  EXPECT_EQ(call({"bp", "--instance", path("mc.bin"), "--out", path("o")}).code, kExitUsage);
  EXPECT_EQ(call({"mc", "--instance", path("mc.bin"), "--variant", "bregman", "--out", path("o")}).code,
            kExitUsage);
  EXPECT_EQ(call({"bp", "--n", "100", "--tau-rule", "paper-mc", "--out", path("o")}).code, kExitUsage);
  EXPECT_EQ(call({"bp", "--n", "100", "--variant", "lb-primal", "--objective", "l1-nonneg", "--out",
                  path("o")})
                .code,
            kExitUsage);
  EXPECT_EQ(call({"bp", "--instance", path("missing.bin"), "--out", path("o")}).code, kExitUsage);
}

TEST_F(Cli, McSolve) {
  const auto r = call({"mc", "--n", "30", "--rank", "2", "--fr", "0.3", "--variant", "alb", "--out", path("mc")});
  EXPECT_EQ(r.code, kExitConverged) << r.err;
  EXPECT_TRUE(fs::exists(dir / "mc" / "trace.csv"));
  const auto printed = call({"mc", "--n", "30", "--rank", "2", "--fr", "0.3", "--mc-shrink-arg",
                             "as-printed", "--out", path("mc2")});
  EXPECT_NE(printed.code, kExitUsage) << printed.err;
}

TEST_F(Cli, ConfigFileAndFlagPrecedence) {
  io::write_file_atomic(dir / "run.toml", "[bp]\nn = 120\nvariant = \"lb\"\nmax-iters = 7\n");
  const auto from_file = call({"--config", path("run.toml"), "bp", "--out", path("a")});
  EXPECT_EQ(from_file.code, kExitIterCap);
  EXPECT_NE(from_file.out.find("iterations=7 "), std::string::npos) << from_file.out;
  const auto flag_wins =
      call({"--config", path("run.toml"), "bp", "--max-iters", "3", "--out", path("b")});
  EXPECT_NE(flag_wins.out.find("iterations=3 "), std::string::npos) << flag_wins.out;
  io::write_file_atomic(dir / "flat.toml", "tol = 1e-3\n");
  EXPECT_EQ(call({"--config", path("flat.toml"), "bp", "--out", path("c")}).code, kExitUsage);
}

TEST_F(Cli, VerifyProx) {
  const auto r = call({"verify", "prox", "--out", path("v")});
  ASSERT_EQ(r.code, kExitConverged) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.dump().find("shrink-nonexpansive") != std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "v" / "verify_prox.json"));
  EXPECT_EQ(call({"verify", "everything"}).code, kExitUsage);
}

TEST_F(Cli, ReproTable1Smoke) {
  const auto r = call({"repro-table1", "--scale", "0.05", "--out", path("t1")});
  EXPECT_EQ(r.code, kExitConverged) << r.err;
  const std::string md = io::read_file(dir / "t1" / "table1.md");
  EXPECT_NE(md.find("330"), std::string::npos);  // published ALB count shown alongside
  EXPECT_TRUE(fs::exists(dir / "t1" / "table1.csv"));
  EXPECT_FALSE(fs::is_empty(dir / "t1" / "traces"));
}

TEST_F(Cli, ReproTable2RecordsCellFailures) {
  const auto r = call({"repro-table2", "--scale", "0.1", "--n", "100", "--fr", "0.3", "--rank", "20",
                       "--out", path("t2")});
  // rank 20 is not below n = 10, so the single cell fails but the table is still written
  EXPECT_EQ(r.code, kExitConverged) << r.err;
  EXPECT_TRUE(fs::exists(dir / "t2" / "table2.md"));
}

TEST(Parallel, RunsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(100, 4, [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(Parallel, RethrowsLowestIndex) {
  try {
    parallel_for(10, 3, [](std::size_t i) {
      if (i == 7 || i == 4) throw std::runtime_error(std::to_string(i));
    });
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "4");
  }
}

TEST(Parallel, ThreadCountFromEnvironment) {
  ::setenv("BREGMAN_ACCEL_THREADS", "3", 1);
  EXPECT_EQ(resolve_thread_count(), 3u);
  ::setenv("BREGMAN_ACCEL_THREADS", "zero", 1);
  EXPECT_THROW(resolve_thread_count(), bregman::InputError);
  ::unsetenv("BREGMAN_ACCEL_THREADS");
  EXPECT_GE(resolve_thread_count(), 1u);
}

}  // namespace
}  // namespace bregman::cli
