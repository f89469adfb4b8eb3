#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "lambdaq/axiom_checks.hpp"
#include "lambdaq/quantile_engine.hpp"
#include "lambdaq/reconstruction.hpp"
#include "lambdaq/sampling.hpp"

namespace {

using namespace lambdaq;

StepCDF large_cdf(std::size_t n) {
  auto rng = sampling::trial_rng(1, 0, n);
  std::vector<double> xs(n);
  std::normal_distribution<double> d(0.0, 3.0);
  for (double& x : xs) x = d(rng);
  return StepCDF::empirical(xs);
}

LambdaSpec many_steps(std::size_t jumps) {
  std::vector<double> bps;
  std::vector<double> vals{0.99};
  for (std::size_t i = 0; i < jumps; ++i) {
    bps.push_back(-8.0 + 16.0 * static_cast<double>(i) / static_cast<double>(jumps));
    vals.push_back(0.99 - 0.98 * static_cast<double>(i + 1) / static_cast<double>(jumps));
  }
  return LambdaSpec::step(bps, vals, Continuity::right);
}

void BM_ClassicQuantile(benchmark::State& state) {
  const StepCDF f = large_cdf(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(classic_quantile(f, 0.95, QuantileSide::minus));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ClassicQuantile)->RangeMultiplier(8)->Range(64, 1 << 18)->Complexity();

void BM_StepLambdaQuantile(benchmark::State& state) {
  const StepCDF f = large_cdf(static_cast<std::size_t>(state.range(0)));
  const LambdaSpec s = many_steps(64);
  for (auto _ : state) benchmark::DoNotOptimize(lambda_quantile(f, s, QuantileKind::q_minus));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_StepLambdaQuantile)->RangeMultiplier(8)->Range(64, 1 << 18)->Complexity();

void BM_PiecewiseLinearQuantile(benchmark::State& state) {
  const StepCDF f = large_cdf(static_cast<std::size_t>(state.range(0)));
  const LambdaSpec s = LambdaSpec::piecewise_linear({{-5.0, 0.99}, {0.0, 0.6}, {5.0, 0.2}});
  for (auto _ : state) benchmark::DoNotOptimize(lambda_quantile(f, s, QuantileKind::q_plus));
}
BENCHMARK(BM_PiecewiseLinearQuantile)->RangeMultiplier(8)->Range(64, 1 << 18);

void BM_TwoLevelClosedForm(benchmark::State& state) {
  const StepCDF f = large_cdf(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(two_level_quantile(f, 0.95, 0.99, 5.0));
}
BENCHMARK(BM_TwoLevelClosedForm)->RangeMultiplier(8)->Range(64, 1 << 18);

void BM_ClassifyDyadic(benchmark::State& state) {
  const auto t = quantile_functional(LambdaSpec::two_level(0.3, 0.7, 2.0), QuantileKind::q_minus);
  for (auto _ : state) benchmark::DoNotOptimize(classify_dyadic(t, 0.5));
}
BENCHMARK(BM_ClassifyDyadic);

void BM_BuildZ(benchmark::State& state) {
  const auto t = quantile_functional(many_steps(8), QuantileKind::q_minus);
  ZOptions o;
  o.grid_n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_z(t, o));
}
BENCHMARK(BM_BuildZ)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_CheckLocality(benchmark::State& state) {
  const auto t = quantile_functional(many_steps(8), QuantileKind::q_minus);
  for (auto _ : state) benchmark::DoNotOptimize(check_locality(t, 500, 1));
}
BENCHMARK(BM_CheckLocality)->Unit(benchmark::kMillisecond);

void BM_CheckOrdinalCovariance(benchmark::State& state) {
  const auto t = classic_functional(0.5, QuantileSide::minus);
  for (auto _ : state) benchmark::DoNotOptimize(check_ordinal_covariance(t, 500, 1));
}
BENCHMARK(BM_CheckOrdinalCovariance)->Unit(benchmark::kMillisecond);

void BM_Reconstruct(benchmark::State& state) {
  const auto t = quantile_functional(LambdaSpec::two_level(0.3, 0.7, 2.0), QuantileKind::q_minus);
  ReconstructOptions o;
  o.verify_trials = 1000;
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct(t, o));
}
BENCHMARK(BM_Reconstruct)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
