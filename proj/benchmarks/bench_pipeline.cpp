// Microbenchmarks for the main pipeline stages at a few mesh resolutions.

#include "mqsfeti/pipeline.hpp"

#include <benchmark/benchmark.h>

using namespace mqsfeti;

namespace {

RunConfig config_for(int n) {
  RunConfig c;
  c.geometry.conductor_max = {0.5, 1, 1};
  c.geometry.resolution = n;
  c.materials.omega = 2.0 * M_PI * 50.0;
  c.source.kind = "conductor_loop";
  c.source.center = {0.25, 0.5, 0.5};
  c.source.axis = {0, 0, 1};
  c.source.radius = 0.15;
  return c;
}

void BM_BuildMesh(benchmark::State& state) {
  const auto c = config_for(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto mesh = build_box_mesh(c.geometry);
    benchmark::DoNotOptimize(mesh.edges.data());
  }
}

void BM_BuildWorkspace(benchmark::State& state) {
  const auto c = config_for(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto ws = build_workspace(c);
    benchmark::DoNotOptimize(ws.blocks.K.valuePtr());
  }
}

void BM_SolveMono(benchmark::State& state) {
  const auto c = config_for(static_cast<int>(state.range(0)));
  const auto ws = build_workspace(c);
  for (auto _ : state) {
    auto sol = solve_monolithic(ws.blocks, ws.materials, 1e-10);
    benchmark::DoNotOptimize(sol.A.data());
  }
}

void BM_SolveFetiDirect(benchmark::State& state) {
  const auto c = config_for(static_cast<int>(state.range(0)));
  const auto ws = build_workspace(c);
  for (auto _ : state) {
    auto sol = solve_feti_direct(ws.blocks, ws.materials, 1e-10);
    benchmark::DoNotOptimize(sol.lambda.data());
  }
}

void BM_SolveFetiDual(benchmark::State& state) {
  const auto c = config_for(static_cast<int>(state.range(0)));
  const auto ws = build_workspace(c);
  for (auto _ : state) {
    auto sol = solve_feti_dual(ws.blocks, ws.materials, 1e-10, 1000);
    benchmark::DoNotOptimize(sol.lambda.data());
  }
}

} // namespace

BENCHMARK(BM_BuildMesh)->Arg(2)->Arg(4)->Arg(8);
BENCHMARK(BM_BuildWorkspace)->Arg(2)->Arg(4);
BENCHMARK(BM_SolveMono)->Arg(2)->Arg(4)->Arg(6);
BENCHMARK(BM_SolveFetiDirect)->Arg(2)->Arg(4)->Arg(6);
BENCHMARK(BM_SolveFetiDual)->Arg(2)->Arg(4)->Arg(6);

BENCHMARK_MAIN();
