#include <benchmark/benchmark.h>

#include <cmath>

#include "homog/elliptic.hpp"
#include "homog/oscillation.hpp"

using namespace homog;

namespace {

PeriodicProfile two_layer() {
  return PeriodicProfile::piecewise({{0.5, Mat2::Identity()}, {0.5, 4.0 * Mat2::Identity()}});
}

void BM_Assemble(benchmark::State& state) {
  const Grid g(int(state.range(0)));
  const MatrixField a = sample_oscillating(two_layer(), 0.25, g);
  const EllipticProblem p{a, ScalarField(g, Sampling::cells),
                          ScalarField::sample_nodes(g, [](double x, double) { return x; })};
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble(p));
  }
  state.SetItemsProcessed(state.iterations() * g.num_cells());
}
BENCHMARK(BM_Assemble)->Arg(64)->Arg(128)->Arg(256);

void BM_SolveDirichlet(benchmark::State& state) {
  const Grid g(int(state.range(0)));
  const MatrixField a = sample_oscillating(two_layer(), 0.25, g);
  const EllipticProblem p{a, ScalarField(g, Sampling::cells),
                          ScalarField::sample_nodes(g, [](double x, double) { return x; })};
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_dirichlet(p));
  }
  state.SetItemsProcessed(state.iterations() * g.num_cells());
}
BENCHMARK(BM_SolveDirichlet)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Flux(benchmark::State& state) {
  const Grid g(int(state.range(0)));
  const MatrixField a = sample_oscillating(two_layer(), 0.25, g);
  const ScalarField u = ScalarField::sample_nodes(
      g, [](double x, double y) { return x + 0.1 * std::sin(3.0 * x) * y; });
  for (auto _ : state) {
    benchmark::DoNotOptimize(flux(a, u));
  }
  state.SetItemsProcessed(state.iterations() * g.num_cells());
}
BENCHMARK(BM_Flux)->Arg(128)->Arg(256);

}  // namespace
