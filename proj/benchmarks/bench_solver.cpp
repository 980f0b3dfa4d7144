#include <benchmark/benchmark.h>

#include "chsplit/energy.hpp"
#include "chsplit/fourier.hpp"
#include "chsplit/initial_data.hpp"
#include "chsplit/kernels.hpp"
#include "chsplit/propagators.hpp"

using namespace chsplit;

namespace {

SpectralField sample_field(const Grid2D& g) {
  InitialDataSpec spec;
  spec.kind = InitialDataSpec::Kind::random_band_limited;
  spec.seed = 1;
  spec.band = 8;
  spec.h1_target = 2.0;
  return realize(spec, g);
}

SolverParams params(int n, SplitOrder order) {
  SolverParams p;
  p.n = n;
  p.order = order;
  return p;
}

void BM_Step(benchmark::State& state) {
  const SplitOrder order = state.range(1) == 0 ? SplitOrder::LN : SplitOrder::NL;
  SplittingScheme scheme(params(static_cast<int>(state.range(0)), order));
  SpectralField u = sample_field(scheme.grid());
  for (auto _ : state) {
    u = scheme.step(u);
    benchmark::DoNotOptimize(u.coeffs().data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Step)->ArgsProduct({{64, 128, 256}, {0, 1}})->ArgNames({"n", "NL"});

void BM_ModifiedEnergy(benchmark::State& state) {
  const SolverParams p = params(static_cast<int>(state.range(0)), SplitOrder::LN);
  const ModifiedEnergy energy(p);
  const SpectralField uh = sample_field(p.grid());
  const RealField u = inverse(uh);
  for (auto _ : state) benchmark::DoNotOptimize(energy.report(uh, u).e1_total);
}
BENCHMARK(BM_ModifiedEnergy)->Arg(64)->Arg(128)->Arg(256);

void BM_Forward(benchmark::State& state) {
  const Grid2D g(static_cast<int>(state.range(0)));
  const RealField u = inverse(sample_field(g));
  for (auto _ : state) benchmark::DoNotOptimize(forward(u).coeffs().data());
}
BENCHMARK(BM_Forward)->Arg(64)->Arg(128)->Arg(256);

void BM_BuildKernel(benchmark::State& state) {
  const double beta = 1e-3;
  const int n = kernel_study_resolution(beta);
  for (auto _ : state) benchmark::DoNotOptimize(build_kernel(beta, KernelVariant::mean_zero, n).values().data());
}
BENCHMARK(BM_BuildKernel);

}  // namespace

BENCHMARK_MAIN();
