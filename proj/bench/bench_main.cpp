// Serial vs OpenMP timings of the data-parallel kernels. Both variants
// produce bit-identical output (see the unit tests).
#include <benchmark/benchmark.h>

#include <cmath>

#include "slidekit/envelope.hpp"
#include "slidekit/flatness.hpp"
#include "slidekit/paraboloid.hpp"

using namespace slidekit;

namespace {

Exec exec_of(const benchmark::State& s) { return s.range(1) ? Exec::parallel : Exec::serial; }

GridFunction wavy(const Grid& g) {
  return GridFunction::sample(g, [](const Point& x) { return std::sin(3 * x[0]) * std::cos(2 * x[1]) + dot(x, x); });
}

void BM_JensenEnvelope(benchmark::State& state) {
  const Grid g(2, static_cast<int>(state.range(0)));
  const GridFunction u = wavy(g);
  for (auto _ : state) benchmark::DoNotOptimize(jensen_envelope(u, 0.1, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.size()));
}

void BM_ContactSet(benchmark::State& state) {
  const Grid g(2, static_cast<int>(state.range(0)));
  const GridFunction u = wavy(g);
  const Mask V = Mask::ball(g, Point{}, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(contact_set(u, 2.0, V, exec_of(state)));
}

void BM_ClassifySingularSet(benchmark::State& state) {
  const Grid g(2, static_cast<int>(state.range(0)));
  const GridFunction u = GridFunction::sample(g, [](const Point& x) { return 0.01 * x[0] * std::abs(x[0]); });
  const GridFunction f = GridFunction::sample(g, [](const Point& x) { return 0.02 * ((x[0] > 0) - (x[0] < 0)); });
  const OperatorSpec F = make_operator("trace", 2);
  FlatnessConfig cfg;
  cfg.cauchy_C = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(classify_singular_set(u, f, F, cfg, 4, exec_of(state)));
}

void BM_WeightedSeminorms(benchmark::State& state) {
  const Grid g(2, static_cast<int>(state.range(0)));
  const GridFunction u = wavy(g);
  for (auto _ : state) benchmark::DoNotOptimize(weighted_seminorms(u, 0.9, 2, exec_of(state)));
}

}  // namespace

BENCHMARK(BM_JensenEnvelope)->ArgsProduct({{257, 1025}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ContactSet)->ArgsProduct({{257, 1025}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassifySingularSet)->ArgsProduct({{129, 257}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WeightedSeminorms)->ArgsProduct({{33, 65}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
