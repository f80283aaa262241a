#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "nonlocal/fd.hpp"
#include "nonlocal/fft.hpp"
#include "nonlocal/kernel.hpp"
#include "nonlocal/multiplier_table.hpp"
#include "nonlocal/multipliers.hpp"
#include "nonlocal/torus_grid.hpp"

namespace {

using nonlocal::KernelParams;

// direct evaluation; cost grows roughly like sqrt(r delta)
void BM_MultiplierDirect(benchmark::State& state) {
  const auto p = KernelParams::validate(2, 0.5, 1.2);
  const double r = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(nonlocal::multiplier(p, r));
}
BENCHMARK(BM_MultiplierDirect)->Arg(1)->Arg(100)->Arg(1000)->Arg(10000);

void BM_TableLookup(benchmark::State& state) {
  const auto p = KernelParams::validate(2, 0.5, 1.2);
  const auto table = nonlocal::MultiplierTable::build(p, 1000.0, 1024, 8192);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(0.0, 1000.0);
  std::vector<double> probes(4096);
  for (double& x : probes) x = dist(rng);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(table(probes[i]));
    i = (i + 1) & 4095;
  }
}
BENCHMARK(BM_TableLookup);

void BM_LatticeViaTable800(benchmark::State& state) {
  const auto p = KernelParams::validate(2, 3.0, 1.0);
  const auto grid = nonlocal::TorusGrid::uniform(2, 20.0, 800);
  const double K = std::sqrt(2.0) * 400.0 * 2.0 * M_PI / 20.0 * (1 + 1e-9);
  const auto table = nonlocal::MultiplierTable::build(p, K, 256, 4096);
  for (auto _ : state) benchmark::DoNotOptimize(nonlocal::eigenvalue_lattice(table, grid));
  state.SetItemsProcessed(state.iterations() * 800 * 800);
}
BENCHMARK(BM_LatticeViaTable800)->Unit(benchmark::kMillisecond);

void BM_Fft2D(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const nonlocal::FftPlan plan({n, n});
  std::vector<std::complex<double>> data(n * n, {1.0, 0.5});
  for (auto _ : state) {
    plan.forward(data);
    plan.inverse(data);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_Fft2D)->Arg(400)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_StencilApply(benchmark::State& state) {
  const std::size_t points = 1000;
  const auto r = static_cast<std::size_t>(state.range(0));
  const double dx = 20.0 / points;
  const auto s = nonlocal::FDStencil::build(KernelParams::validate(1, 1.0 / 3.0, r * dx), r, dx);
  const nonlocal::StencilOperator op(s, points);
  std::vector<double> u(points), out(points);
  for (std::size_t i = 0; i < points; ++i) u[i] = std::sin(2.0 * M_PI * static_cast<double>(i) / points);
  for (auto _ : state) {
    op.apply(u, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_StencilApply)->Arg(3)->Arg(64)->Arg(250);

}  // namespace

BENCHMARK_MAIN();
