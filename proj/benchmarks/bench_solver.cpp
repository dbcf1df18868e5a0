#include <benchmark/benchmark.h>

#include "shg2d/analysis.hpp"
#include "shg2d/potentials.hpp"
#include "shg2d/solver.hpp"

namespace {

using namespace shg2d;

const geometry::StarBoundary& trefoil() {
  static const auto b = geometry::build_boundary(1.0, 0.05, {{3, 1.0}});
  return b;
}

void BM_SingleLayerAssembly(benchmark::State& state) {
  const auto g = geometry::sample_grid(trefoil(), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(potentials::single_layer_matrix(g));
}
BENCHMARK(BM_SingleLayerAssembly)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_OperatorBuild(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(solver::BoundaryOperators::build(trefoil(), static_cast<int>(state.range(0))));
}
BENCHMARK(BM_OperatorBuild)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Pipeline(benchmark::State& state) {
  const solver::PipelineConfig cfg{trefoil(), background::HarmonicBackground::uniform(1.0), 2.0, 3.0, 1.0, 0.5,
                                   static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(solver::shg_pipeline(cfg));
}
BENCHMARK(BM_Pipeline)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_PipelineReusedOperators(benchmark::State& state) {
  const solver::PipelineConfig cfg{trefoil(), background::HarmonicBackground::uniform(1.0), 2.0, 3.0, 1.0, 0.5, 256};
  const auto ops = solver::BoundaryOperators::build(cfg.boundary, cfg.grid_n);
  for (auto _ : state) benchmark::DoNotOptimize(solver::shg_pipeline(cfg, ops));
}
BENCHMARK(BM_PipelineReusedOperators)->Unit(benchmark::kMillisecond);

void BM_MultipoleMoments(benchmark::State& state) {
  const auto res = solver::shg_pipeline(
      {trefoil(), background::HarmonicBackground::uniform(1.0), 2.0, 3.0, 1.0, 0.5, 256});
  for (auto _ : state) benchmark::DoNotOptimize(analysis::multipole_moments(res.sh, 32));
}
BENCHMARK(BM_MultipoleMoments)->Unit(benchmark::kMicrosecond);

void BM_NumericScan(benchmark::State& state) {
  const solver::PipelineConfig cfg{geometry::build_boundary(1.0, 1e-3, {{3, 1.0}}),
                                   background::HarmonicBackground::uniform(1.0), 2.0, 3.0, 1.0, 0.0, 128};
  const std::vector<double> deltas{1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
  for (auto _ : state)
    benchmark::DoNotOptimize(analysis::resonance_scan(cfg, analysis::Channel::Omega, deltas, analysis::ScanPath::Numeric,
                                                      static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_NumericScan)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
BENCHMARK_MAIN();
