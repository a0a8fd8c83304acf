#include "fockbell/fockbell.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

using namespace fockbell;

namespace {

constexpr double kPi = std::numbers::pi;

void BM_BeamsplitterLift(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    BeamsplitterLift lift({0.3, 0.7}, n);
    benchmark::DoNotOptimize(lift.block(n).data());
  }
}
BENCHMARK(BM_BeamsplitterLift)->Arg(12)->Arg(24)->Arg(48);

void BM_MeasuredState(benchmark::State& state) {
  const double alpha = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) {
    const FockVector v = measured_state(0.0, 1.0, {kPi / 4, alpha, 0.4}, {kPi / 4, alpha, -0.2});
    benchmark::DoNotOptimize(v.amplitudes().data());
  }
  state.SetLabel("alpha=" + std::to_string(alpha));
}
BENCHMARK(BM_MeasuredState)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_RateCorrelatorFit(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(rate_correlator_ER(1.0, 0.0, 0.0).amplitude);
}
BENCHMARK(BM_RateCorrelatorFit)->Unit(benchmark::kMillisecond);

void BM_ChClosedForm(benchmark::State& state) {
  const ChSettings s = reference_hardy_settings();
  for (auto _ : state) benchmark::DoNotOptimize(ch_rates_value(s).value);
}
BENCHMARK(BM_ChClosedForm);

void BM_ChFockNumeric(benchmark::State& state) {
  const ChSettings s = reference_hardy_settings();
  for (auto _ : state) benchmark::DoNotOptimize(ch_rates_value(s, ChMethod::fock_numeric).value);
}
BENCHMARK(BM_ChFockNumeric)->Unit(benchmark::kMillisecond);

void BM_PovmRate(benchmark::State& state) {
  const Setting v{3 * kPi / 20, std::sqrt(0.5), 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(povm_rate(v, 4).tail_bound);
}
BENCHMARK(BM_PovmRate);

void BM_HardyOptimize(benchmark::State& state) {
  ChOptimizerConfig cfg;
  cfg.starts = static_cast<int>(state.range(0));
  cfg.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(optimize_ch(ChSearchSpace::hardy(), cfg).best.value);
}
BENCHMARK(BM_HardyOptimize)->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_WitnessRates(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(witness_rates(1.0, kPi / 4, 0.0).value);
}
BENCHMARK(BM_WitnessRates)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
