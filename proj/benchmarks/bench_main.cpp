#include <evdep/evdep.hpp>

#include <benchmark/benchmark.h>

namespace {

evdep::PseudoObs gumbel_pobs(std::size_t n) {
  const Eigen::MatrixXd x = evdep::CopulaFamily(evdep::Family::gumbel, 2.0).sample(n, 42);
  return evdep::pseudo_observations(x, evdep::TiesPolicy{});
}

void BM_PseudoObservations(benchmark::State& state) {
  const Eigen::MatrixXd x = evdep::CopulaFamily(evdep::Family::gumbel, 2.0).sample(state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(evdep::pseudo_observations(x, evdep::TiesPolicy{}));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PseudoObservations)->RangeMultiplier(4)->Range(256, 65536)->Complexity();

void BM_EmpiricalCopulaEval(benchmark::State& state) {
  const evdep::EmpiricalCopula c{gumbel_pobs(state.range(0))};
  double u = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(c.eval(u, 1.0 - u));
    u = u > 0.98 ? 0.01 : u + 0.0137;
  }
}
BENCHMARK(BM_EmpiricalCopulaEval)->Arg(200)->Arg(5000);

void BM_S2n(benchmark::State& state) {
  const evdep::PseudoObs u = gumbel_pobs(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(evdep::test_s2n(u.values()));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_S2n)->RangeMultiplier(2)->Range(100, 1600)->Complexity();

void BM_KendallTau(benchmark::State& state) {
  const evdep::PseudoObs u = gumbel_pobs(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(evdep::kendall_tau_fast(u.values()));
}
BENCHMARK(BM_KendallTau)->Arg(1000)->Arg(100000);

void BM_Maxstab(benchmark::State& state) {
  const evdep::PseudoObs u = gumbel_pobs(200);
  evdep::MaxStabConfig cfg;
  cfg.multiplier.replicates = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(evdep::test_maxstab(u, cfg));
}
BENCHMARK(BM_Maxstab)->Arg(250)->Unit(benchmark::kMillisecond);

void BM_PickandsA(benchmark::State& state) {
  const evdep::PseudoObs u = gumbel_pobs(200);
  evdep::MultiplierConfig cfg;
  cfg.replicates = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(evdep::test_pickands_a(u, cfg));
}
BENCHMARK(BM_PickandsA)->Arg(250)->Unit(benchmark::kMillisecond);

void BM_AplotResidual(benchmark::State& state) {
  const evdep::PseudoObs u = gumbel_pobs(200);
  evdep::AplotTestConfig cfg;
  cfg.replicates = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(evdep::test_aplot_residual(u, cfg));
}
BENCHMARK(BM_AplotResidual)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_CfgEstimator(benchmark::State& state) {
  const evdep::PseudoObs u = gumbel_pobs(state.range(0));
  for (auto _ : state) {
    const evdep::PickandsEstimate a = evdep::cfg_estimator(u);
    benchmark::DoNotOptimize(a(0.3));
  }
}
BENCHMARK(BM_CfgEstimator)->Arg(5000);

void BM_SampleFamily(benchmark::State& state) {
  const auto family = static_cast<evdep::Family>(state.range(0));
  const evdep::CopulaFamily c = evdep::CopulaFamily::from_tau(family, 0.5);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(c.sample(1000, ++seed));
  state.SetLabel(evdep::to_string(family));
}
BENCHMARK(BM_SampleFamily)->DenseRange(0, 4);

}  // namespace
BENCHMARK_MAIN();
