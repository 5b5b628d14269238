#include "bregman/linalg.hpp"
#include "bregman/problems.hpp"
#include "bregman/prox.hpp"
#include "bregman/solvers.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace bregman;

struct CsSetup {
  BasisPursuitProblem problem;
  SolverConfig config;

  explicit CsSetup(std::size_t n) {
    const std::size_t m = n * 2 / 5;
    problem = problems::gen_bp(MatrixKind::Gaussian, SignalKind::Gaussian, n, m, m / 5, 0);
    config.tau = default_tau(TauRule::PaperCS, config.mu, linalg::spectral_norm_sq(problem.a).value);
  }
};

DenseMatrix gaussian_matrix(std::size_t n) {
  linalg::RngStream rng(1);
  DenseMatrix a(n, n);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = rng.gaussian();
  return a;
}

void BM_LbStepVform(benchmark::State& state) {
  const CsSetup s(static_cast<std::size_t>(state.range(0)));
  auto v = solvers::initial_vform(s.problem, s.config.tau);
  for (auto _ : state) {
    auto out = solvers::lb_step_vform(v, s.problem, s.config);
    benchmark::DoNotOptimize(out.w.data());
    v = std::move(out.state);
  }
}
BENCHMARK(BM_LbStepVform)->Arg(500)->Arg(2000);

void BM_AlbStepVform(benchmark::State& state) {
  const CsSetup s(static_cast<std::size_t>(state.range(0)));
  auto v = solvers::initial_alb_vform(s.problem, s.config.tau);
  for (auto _ : state) {
    auto out = solvers::alb_step_vform(v, s.problem, s.config);
    benchmark::DoNotOptimize(out.w.data());
    v = std::move(out.state);
  }
}
BENCHMARK(BM_AlbStepVform)->Arg(500)->Arg(2000);

void BM_ShrinkVec(benchmark::State& state) {
  linalg::RngStream rng(2);
  const RealVector z = linalg::sample_gaussian(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(prox::shrink_vec(z, 0.5).data());
}
BENCHMARK(BM_ShrinkVec)->Arg(2000);

void BM_Svd(benchmark::State& state) {
  const DenseMatrix a = gaussian_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(linalg::svd(a).sigma.data());
}
BENCHMARK(BM_Svd)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_ShrinkMatrix(benchmark::State& state) {
  const DenseMatrix a = gaussian_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(prox::shrink_matrix(a, 5.0).data());
}
BENCHMARK(BM_ShrinkMatrix)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_SpectralNormSq(benchmark::State& state) {
  const CsSetup s(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(linalg::spectral_norm_sq(s.problem.a).value);
}
BENCHMARK(BM_SpectralNormSq)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
