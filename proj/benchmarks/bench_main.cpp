#include <benchmark/benchmark.h>

#include <cmath>

#include "layerwave/coeffs.hpp"
#include "layerwave/directsolver.hpp"
#include "layerwave/effsolver.hpp"
#include "layerwave/fastfield.hpp"

using namespace layerwave;

static void BM_ChainPiecewise(benchmark::State& st) {
  const auto m = Medium::piecewise(0.625, 2.5, 1.6, 0.4);
  for (auto _ : st) benchmark::DoNotOptimize(compute_coefficients(solve_fastvars(m, 6)));
}
BENCHMARK(BM_ChainPiecewise);

static void BM_ChainSinusoid(benchmark::State& st) {
  const auto m = Medium::sinusoidal(0.625, 2.5);
  FastFieldOptions o;
  o.n_samples = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(compute_coefficients(solve_fastvars(m, 6, o)));
}
BENCHMARK(BM_ChainSinusoid)->Arg(1024)->Arg(4096);

static void BM_FVStep(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  Grid2D g;
  g.nx = g.ny = n;
  g.Lx = g.Ly = static_cast<double>(n) / 32.0;
  const auto fg = FVGrid::from_medium(Medium::piecewise(1, 1, 8 + std::sqrt(56.0), 8 - std::sqrt(56.0)), g);
  WaveField q(fg.grid());
  for (std::size_t k = 0; k < q.p.size(); ++k) q.p[k] = std::sin(0.01 * static_cast<double>(k));
  const double dt = fv_time_step(fg, 0.9);
  bool xf = true;
  for (auto _ : st) {
    step_fv(fg, q, dt, Limiter::mc, xf);
    xf = !xf;
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(q.p.size()));
}
BENCHMARK(BM_FVStep)->Arg(256)->Arg(512);

static void BM_EffRhs(benchmark::State& st) {
  const auto m = Medium::sinusoidal(0.625, 2.5);
  const auto c = compute_coefficients(solve_fastvars(m, 6));
  const auto avg = averages(m);
  const auto n = static_cast<std::size_t>(st.range(0));
  Grid2D g;
  g.nx = g.ny = n;
  g.Lx = g.Ly = 40;
  WaveField q(g);
  for (std::size_t k = 0; k < q.p.size(); ++k) q.p[k] = std::cos(0.003 * static_cast<double>(k));
  for (auto _ : st) benchmark::DoNotOptimize(rhs_2d(q, c, avg, 4));
}
BENCHMARK(BM_EffRhs)->Arg(128)->Arg(256);
BENCHMARK_MAIN();
