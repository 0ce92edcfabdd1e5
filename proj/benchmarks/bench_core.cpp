#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "pfiber/fiber.hpp"
#include "pfiber/hartree.hpp"
#include "pfiber/minimize.hpp"
#include "pfiber/rayleigh.hpp"

using namespace pfiber;

static void BM_HartreePotential(benchmark::State& state) {
  RadialGrid grid(40.0, static_cast<std::size_t>(state.range(0)));
  const auto u = RadialFunction::sample(grid, [](double r) { return std::exp(-0.5 * r * r); });
  for (auto _ : state) benchmark::DoNotOptimize(hartree_potential(u));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HartreePotential)->RangeMultiplier(4)->Range(1024, 16384)->Complexity(benchmark::oN);

static void BM_Integrals(benchmark::State& state) {
  RadialGrid grid;
  const auto u = RadialFunction::sample(grid, [](double r) { return std::exp(-0.5 * r * r); });
  for (auto _ : state) benchmark::DoNotOptimize(integrals_of(u, 3.2));
}
BENCHMARK(BM_Integrals);

static void BM_Dilate(benchmark::State& state) {
  RadialGrid grid;
  const auto u = RadialFunction::sample(grid, [](double r) { return std::exp(-0.5 * r * r); });
  for (auto _ : state) benchmark::DoNotOptimize(dilate(u, 1.7));
}
BENCHMARK(BM_Dilate);

static void BM_ClassifyFiber(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> L(-3.0, 3.0);
  std::vector<FiberCoefficients> sets;
  for (int k = 0; k < 64; ++k)
    sets.push_back({std::exp(L(rng)), std::exp(L(rng)), std::exp(L(rng)), std::exp(L(rng)), 1, 1, 3.2});
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(classify_fiber(sets[i++ % sets.size()]));
}
BENCHMARK(BM_ClassifyFiber);

static void BM_GroundState(benchmark::State& state) {
  RadialGrid grid(400.0, 4096);
  const auto init = gaussian_init(grid, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(minimize_on_sphere({2.5, 1, 1, 1}, init));
}
BENCHMARK(BM_GroundState)->Unit(benchmark::kMillisecond);

static void BM_RayleighSearch(benchmark::State& state) {
  RadialGrid grid;
  const auto fam = TrialFamily::gaussian_mixture(3);
  for (auto _ : state) {
    std::mt19937_64 rng(7);
    benchmark::DoNotOptimize(minimize_rayleigh(1, 1, 3.2, fam, {300, 1}, rng, grid));
  }
}
BENCHMARK(BM_RayleighSearch)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
