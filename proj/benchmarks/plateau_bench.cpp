#include "plateau/driver.hpp"
#include "plateau/measure.hpp"
#include "plateau/optimizer.hpp"
#include "plateau/projection.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace plateau;

namespace {

Complex square_grid(int cells, double stride) {
  DyadicGridSpec spec;
  spec.stride = stride;
  spec.frame = Frame::axis_aligned(2);
  Index hi(2);
  hi << cells, cells;
  spec.index_set = DyadicGridSpec::block(Index::Zero(2), hi);
  return build_dyadic(spec);
}

void BM_BuildDyadic(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(square_grid(m, 1.0 / m));
  state.SetComplexityN(m * m);
}
BENCHMARK(BM_BuildDyadic)->RangeMultiplier(2)->Range(4, 32)->Complexity();

void BM_Cascade(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const Complex s = square_grid(m, 1.0 / m);
  SimplicialSet e(1, 2);
  e.add({make_point({0.03, 0.11}), make_point({0.97, 0.83})});
  for (auto _ : state) benchmark::DoNotOptimize(ff_cascade(s, e, 1));
}
BENCHMARK(BM_Cascade)->RangeMultiplier(2)->Range(4, 32);

void BM_WeightedMeasure(benchmark::State& state) {
  const auto h = DensityField::radial(make_point({0.5, 0.5}), {{0.0, 3.0}, {0.5, 1.0}});
  SimplicialSet e(1, 2);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < state.range(0); ++i) e.add({make_point({u(rng), u(rng)}), make_point({u(rng), u(rng)})});
  for (auto _ : state) benchmark::DoNotOptimize(weighted_measure(e, h));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_WeightedMeasure)->Range(8, 512);

void BM_SeparationOptimize(benchmark::State& state) {
  const Complex s = square_grid(6, 1.0);
  std::map<std::vector<int>, double> table;
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> q(4, 12);
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y) table[{x, y}] = q(rng) / 4.0;
  const auto h = DensityField::cellwise(make_point({0, 0}), 1.0, table, 1.0);
  const auto oracle = ConstraintOracle::separation(
      {{s.locate_cell(make_point({1.5, 2.5})), s.locate_cell(make_point({4.5, 3.5}))}});
  const auto& edges = s.faces_of_dim(1);
  const Skeleton init{{edges.begin(), edges.end()}, {}};
  for (auto _ : state) benchmark::DoNotOptimize(optimize(s, init, oracle, h, 1));
}
BENCHMARK(BM_SeparationOptimize)->Unit(benchmark::kMillisecond);

void BM_LDomainRun(benchmark::State& state) {
  ProblemSpec spec;
  spec.domain = Box{make_point({-2, -2}), make_point({2, 2})};
  spec.obstacles = {Box{make_point({-1, -1}), make_point({1, 1})}};
  spec.terminals = {make_point({1, -2}), make_point({1, 2})};
  spec.levels = static_cast<int>(state.range(0));
  spec.probe_trials = 20;
  for (auto _ : state) benchmark::DoNotOptimize(run(spec));
}
BENCHMARK(BM_LDomainRun)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
