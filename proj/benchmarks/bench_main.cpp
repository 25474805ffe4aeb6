#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "centralkit/central_solvers.hpp"
#include "centralkit/oracles.hpp"
#include "centralkit/problems.hpp"
#include "centralkit/spectral.hpp"
#include "centralkit/sv_solver.hpp"

using namespace centralkit;

namespace {

constexpr double kPi = std::numbers::pi;

CellAverages sine_data(std::size_t n) {
  return BurgersSineSolution(0.5, 0.3).cell_averages(Grid1D(-kPi, kPi, n), 0.0);
}

FourierProjection step_projection(std::size_t N) {
  std::vector<double> v;
  for (double x : collocation_points(N)) v.push_back(step_function(x));
  return project(v);
}

void BM_KtStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto u = sine_data(n);
  const auto f = burgers();
  const double dt = kKtDefaultCfl * u.grid().h() / max_wave_speed(u, *f);
  for (auto _ : state) benchmark::DoNotOptimize(kt_step(u, *f, dt, 2));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}
BENCHMARK(BM_KtStep)->RangeMultiplier(4)->Range(256, 16384);

void BM_NtDoubleStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto u = sine_data(n);
  const auto f = burgers();
  const CflPolicy policy{kNtDefaultCfl, std::nullopt};
  for (auto _ : state) benchmark::DoNotOptimize(nt_double_step(u, *f, policy));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}
BENCHMARK(BM_NtDoubleStep)->RangeMultiplier(4)->Range(256, 16384);

void BM_EulerKtStep(benchmark::State& state) {
  const auto u = sod_initial(Grid1D(0.0, 1.0, static_cast<std::size_t>(state.range(0)),
                                    Boundary::ZeroGradient));
  const auto f = euler_1d(1.4);
  const double dt = kKtDefaultCfl * u.grid().h() / max_wave_speed(u, *f);
  for (auto _ : state) benchmark::DoNotOptimize(kt_step(u, *f, dt, 2));
}
BENCHMARK(BM_EulerKtStep)->Arg(400)->Arg(4000);

void BM_SvRhs(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  const auto p = step_projection(N);
  const SvConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(sv_rhs(p, cfg));
}
BENCHMARK(BM_SvRhs)->RangeMultiplier(4)->Range(64, 4096);

void BM_EdgeDetect(benchmark::State& state) {
  const auto p = step_projection(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(minmod_edge_detect(p, 0.1));
}
BENCHMARK(BM_EdgeDetect)->Arg(64)->Arg(256);

void BM_AdaptiveMollifier(benchmark::State& state) {
  const auto p = step_projection(static_cast<std::size_t>(state.range(0)));
  const DistanceFunction d({-kPi / 2, kPi / 2});
  const AdaptiveMollifier m(p);
  const auto x = equispaced_points(256);
  for (auto _ : state) {
    double acc = 0.0;
    for (double xi : x) {
      if (d(xi) > 0.0) acc += m(xi, d);
    }
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_AdaptiveMollifier)->Arg(64)->Arg(256);

}  // namespace
BENCHMARK_MAIN();
