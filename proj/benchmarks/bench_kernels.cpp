#include <benchmark/benchmark.h>

#include "zpindex/config_space.hpp"
#include "zpindex/index_lab.hpp"
#include "zpindex/symbolic.hpp"

using namespace zpindex;

static void BM_HomologySubdividedSphere(benchmark::State& state) {
  const auto x = subdivide_times(e_n_zp(2, 2), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(homology(x.complex(), 2, false));
  state.counters["vertices"] = static_cast<double>(x.complex().vertex_count());
}
BENCHMARK(BM_HomologySubdividedSphere)->Arg(0)->Arg(1)->Arg(2);

static void BM_HomologyE3Z3(benchmark::State& state) {
  const auto x = e_n_zp(3, 3);
  for (auto _ : state) benchmark::DoNotOptimize(homology(x.complex(), 3, true));
}
BENCHMARK(BM_HomologyE3Z3);

static void BM_SearchBorsukUlam(benchmark::State& state) {
  // No equivariant map from sd(S^2) to S^1: the search must exhaust.
  const auto source = e_n_zp(2, 2);
  const auto target = e_n_zp(1, 2);
  const SearchOptions options{static_cast<int>(state.range(0)), 200'000'000};
  for (auto _ : state) benchmark::DoNotOptimize(search_equivariant_map(source, target, options));
}
BENCHMARK(BM_SearchBorsukUlam)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_SearchCoindX(benchmark::State& state) {
  const auto x = cubical_to_simplicial(
      build_Pp_Xm(1, Rational(3, 10), 1, 3, GridSpec{1, 6, false}));
  for (auto _ : state) benchmark::DoNotOptimize(coindex_lower(x, 0));
}
BENCHMARK(BM_SearchCoindX)->Unit(benchmark::kMillisecond);

static void BM_PeriodicPoints(benchmark::State& state) {
  const auto sigma = make_sigma();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(periodic_points(sigma, n));
}
BENCHMARK(BM_PeriodicPoints)->Arg(8)->Arg(12)->Arg(14)->Unit(benchmark::kMillisecond);

static void BM_BuildXm(benchmark::State& state) {
  const int G = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(build_Pp_Xm(1, Rational(1, 3), 2, 5, GridSpec{1, G, false}));
}
BENCHMARK(BM_BuildXm)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_BuildZ(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(build_Pp_YZ(SpaceKind::Z, 3, GridSpec{1, 4, true}));
}
BENCHMARK(BM_BuildZ)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
