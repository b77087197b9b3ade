#include <benchmark/benchmark.h>

#include "tsppsd/bounds.hpp"
#include "tsppsd/moment.hpp"
#include "tsppsd/psd.hpp"
#include "tsppsd/spectra.hpp"

using namespace tsppsd;

namespace {

std::vector<int> first(int m) {
  std::vector<int> U;
  for (int v = 1; v <= m; ++v) U.push_back(v);
  return U;
}

void BM_ForEachCycle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    long seen = 0;
    for_each_cycle(n, [&](const HamiltonianCycle&) { ++seen; });
    benchmark::DoNotOptimize(seen);
  }
  state.SetItemsProcessed(state.iterations() * cycle_count(n).get_si());
}
BENCHMARK(BM_ForEachCycle)->DenseRange(7, 10)->Unit(benchmark::kMillisecond);

void BM_ClosedFormK1(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LinearFunctional f = make_subtour(n, first(n / 2));
  for (auto _ : state) benchmark::DoNotOptimize(moment_matrix_closed_form_k1(f));
}
BENCHMARK(BM_ClosedFormK1)->RangeMultiplier(2)->Range(8, 32)->Unit(benchmark::kMillisecond);

void BM_EnumeratedK1(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LinearFunctional f = make_subtour(n, first(n / 2));
  for (auto _ : state) benchmark::DoNotOptimize(moment_matrix_enumerated(f, 1));
}
BENCHMARK(BM_EnumeratedK1)->DenseRange(7, 9)->Unit(benchmark::kMillisecond);

void BM_ExactLdlt(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const MomentMatrix M = moment_matrix_closed_form_k1(make_subtour(n, first(3)));
  for (auto _ : state) benchmark::DoNotOptimize(is_psd_exact(M.entries));
}
BENCHMARK(BM_ExactLdlt)->DenseRange(8, 16, 4)->Unit(benchmark::kMillisecond);

void BM_FloatPsd(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const RealMatrix M = moment_matrix_closed_form_k1_real(make_subtour(n, first(3)));
  for (auto _ : state) benchmark::DoNotOptimize(is_psd_float(M));
}
BENCHMARK(BM_FloatPsd)->RangeMultiplier(2)->Range(10, 40)->Unit(benchmark::kMillisecond);

void BM_EoCounts(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    for (int k = 1; 2 * k <= n; ++k) benchmark::DoNotOptimize(bound_report(n, k));
  }
}
BENCHMARK(BM_EoCounts)->RangeMultiplier(4)->Range(16, 256);

void BM_ClosedFormSpectrum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(closed_form_spectrum(n, n / 2, AValue::sqrt_n()));
}
BENCHMARK(BM_ClosedFormSpectrum)->RangeMultiplier(4)->Range(16, 1024);

}  // namespace
BENCHMARK_MAIN();
