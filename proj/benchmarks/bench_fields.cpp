#include <benchmark/benchmark.h>

#include "homog/oscillation.hpp"
#include "homog/quotient.hpp"

using namespace homog;

namespace {

PeriodicProfile offdiag_layers() {
  Mat2 b1, b2;
  b1 << 2, 1, 1, 3;
  b2 << 4, 0, 0, 1;
  return PeriodicProfile::piecewise({{0.5, b1}, {0.5, b2}});
}

void BM_SampleOscillating(benchmark::State& state) {
  const Grid g(int(state.range(0)));
  const PeriodicProfile p = offdiag_layers();
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_oscillating(p, 0.125, g));
  }
  state.SetItemsProcessed(state.iterations() * g.num_cells());
}
BENCHMARK(BM_SampleOscillating)->Arg(256);

void BM_StratifiedQuotient(benchmark::State& state) {
  const Grid g(int(state.range(0)));
  const MatrixField a = sample_oscillating(offdiag_layers(), 0.125, g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(stratified_quotient(a));
  }
  state.SetItemsProcessed(state.iterations() * g.num_cells());
}
BENCHMARK(BM_StratifiedQuotient)->Arg(128)->Arg(256);

void BM_WeakPairingErrors(benchmark::State& state) {
  const Grid g(int(state.range(0)));
  const PeriodicProfile p = offdiag_layers();
  const HomogenizedLaminate hom = homogenized_laminate(p);
  const TestFunctionFamily fam = TestFunctionFamily::tensor_poly_plus_sines(3);
  std::vector<std::pair<double, MatrixField>> seq;
  seq.emplace_back(0.125, stratified_quotient(sample_oscillating(p, 0.125, g)).factor);
  const MatrixField limit = MatrixField::constant(g, hom.factor_mean);
  for (auto _ : state) {
    benchmark::DoNotOptimize(weak_pairing_errors(seq, limit, fam));
  }
  state.SetItemsProcessed(state.iterations() * g.num_cells());
}
BENCHMARK(BM_WeakPairingErrors)->Arg(128)->Arg(256);

void BM_QuotientResiduals(benchmark::State& state) {
  const Grid g(int(state.range(0)));
  const QuotientPair q = stratified_quotient(sample_oscillating(offdiag_layers(), 0.125, g));
  for (auto _ : state) {
    benchmark::DoNotOptimize(quotient_residuals(q));
  }
  state.SetItemsProcessed(state.iterations() * g.num_cells());
}
BENCHMARK(BM_QuotientResiduals)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
