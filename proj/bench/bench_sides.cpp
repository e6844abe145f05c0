#include <benchmark/benchmark.h>

#include "tracelab/quadforms.hpp"
#include "tracelab/trace_geometry.hpp"

using namespace tracelab;
using namespace tracelab::geom;

namespace {

Options exec_options(const benchmark::State& state) {
  Options opt;
  opt.exec = state.range(0) == 0 ? Exec::Serial : Exec::Parallel;
  return opt;
}

void BM_LaplaceSide(benchmark::State& state) {
  const auto f = TestFunction::gaussian(1.0);
  const TruncationBudget b{static_cast<i64>(state.range(1)), 8, 600, 1e-12, 1e9};
  const auto opt = exec_options(state);
  geometric_side_laplace(GroupDescriptor::hecke(6), f, b, opt); // warm the class cache
  for (auto _ : state) benchmark::DoNotOptimize(geometric_side_laplace(GroupDescriptor::hecke(6), f, b, opt));
}

void BM_HeckeSide(benchmark::State& state) {
  const auto f = TestFunction::gaussian(1.0);
  const TruncationBudget b{static_cast<i64>(state.range(1)), 8, 600, 1e-12, 1e9};
  const auto opt = exec_options(state);
  geometric_side_hecke_cocompact(6, 5, f, b, opt);
  for (auto _ : state) benchmark::DoNotOptimize(geometric_side_hecke_cocompact(6, 5, f, b, opt));
}

// Cold cache: dominated by the continued-fraction class data.
void BM_HeckeSideCold(benchmark::State& state) {
  const auto f = TestFunction::gaussian(1.0);
  const TruncationBudget b{static_cast<i64>(state.range(1)), 8, 600, 1e-12, 1e9};
  const auto opt = exec_options(state);
  for (auto _ : state) {
    state.PauseTiming();
    quad::clear_cache();
    state.ResumeTiming();
    benchmark::DoNotOptimize(geometric_side_hecke_cocompact(6, 5, f, b, opt));
  }
}

} // namespace

// Arguments: {0 = serial, 1 = parallel, t_max}.
BENCHMARK(BM_LaplaceSide)->ArgsProduct({{0, 1}, {300, 1000}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HeckeSide)->ArgsProduct({{0, 1}, {500, 2000}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HeckeSideCold)->ArgsProduct({{0, 1}, {2000}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
