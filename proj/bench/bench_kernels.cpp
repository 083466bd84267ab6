// Serial reference against the OpenMP path for each parallel kernel.
// Argument 0 runs serially, 1 in parallel.

#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

#include "homflow/cell_problem.hpp"
#include "homflow/lp.hpp"
#include "homflow/norm_analysis.hpp"
#include "homflow/transport.hpp"

using namespace homflow;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void BM_SampleBall(benchmark::State& state) {
  const CellProblem cell(make_honeycomb());
  for (auto _ : state) benchmark::DoNotOptimize(sample_ball(cell, 256, mode(state)));
}
BENCHMARK(BM_SampleBall)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_DistancesFrom(benchmark::State& state) {
  const RescaledGraph rg(make_triangular(), 48);
  std::vector<std::size_t> sources(256);
  std::iota(sources.begin(), sources.end(), 0);
  for (auto _ : state) benchmark::DoNotOptimize(distances_from(rg, sources, mode(state)));
}
BENCHMARK(BM_DistancesFrom)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

// A dense random transportation LP with 40 sources and 40 sinks.
LinearProgram transportation_lp() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> cost(0.0, 1.0);
  const int n = 40;
  LinearProgram lp;
  for (int i = 0; i < n * n; ++i) lp.add_variable(cost(rng));
  for (int i = 0; i < n; ++i) {
    std::vector<LpTerm> row, col;
    for (int k = 0; k < n; ++k) {
      row.push_back({static_cast<std::size_t>(i * n + k), 1.0});
      col.push_back({static_cast<std::size_t>(k * n + i), 1.0});
    }
    lp.add_row(std::move(row), RowSense::Equal, 1.0);
    if (i + 1 < n) lp.add_row(std::move(col), RowSense::Equal, 1.0);
  }
  return lp;
}

void BM_Simplex(benchmark::State& state) {
  const auto lp = transportation_lp();
  SimplexOptions options;
  options.exec = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(solve_lp(lp, options));
}
BENCHMARK(BM_Simplex)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_W1Coupling(benchmark::State& state) {
  const RescaledGraph rg(make_cubic(2, Neighborhood::Axis), 32);
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::size_t> pick(0, rg.vertex_count() - 1);
  std::vector<double> a(rg.vertex_count(), 0.0), b(rg.vertex_count(), 0.0);
  for (int k = 0; k < 20; ++k) {
    a[pick(rng)] += 1.0;
    b[pick(rng)] += 1.0;
  }
  const DiscreteMeasure m0(a), m1(b);
  for (auto _ : state) benchmark::DoNotOptimize(w1_coupling(rg, m0, m1, mode(state)));
}
BENCHMARK(BM_W1Coupling)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
