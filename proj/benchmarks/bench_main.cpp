#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "carleson/dyadic.hpp"
#include "carleson/embed.hpp"
#include "carleson/measure.hpp"
#include "carleson/transforms.hpp"

using namespace carleson;

namespace {

HalfPlaneMeasure cloud(int n, std::uint64_t seed = 7) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> lx(std::log(0.05), std::log(20.0)), y(-10, 10), m(0.1, 1);
  std::vector<Atom> atoms;
  for (int i = 0; i < n; ++i) atoms.push_back({{std::exp(lx(g)), y(g)}, m(g)});
  return HalfPlaneMeasure::from_atoms(atoms);
}

void BM_RatioSup(benchmark::State& state) {
  const HalfPlaneMeasure mu = cloud(int(state.range(0)));
  const SquareFamily family = adapted_family(mu, default_sides(mu));
  for (auto _ : state) benchmark::DoNotOptimize(carleson_ratio_sup(mu, linear_gauge(), family).constant);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RatioSup)->RangeMultiplier(4)->Range(8, 256)->Complexity();

void BM_ClassicalCheck(benchmark::State& state) {
  const HalfPlaneMeasure mu = cloud(int(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_classical_carleson(mu).square.constant);
}
BENCHMARK(BM_ClassicalCheck)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Decompose(benchmark::State& state) {
  const RadialMeasure nu = RadialMeasure::lebesgue();
  const AdaptedSequence a = build_adapted_sequence(nu, -1, 1);
  const RefinedSequence r = refine_sequence(a, a.n_first);
  double L = 0;
  for (std::size_t j = 0; j + 1 < r.b.size(); ++j) L = std::max(L, generation_size(r.b[j + 1], r.b.front()));
  double extent = 2 * L;
  while (extent < 2 * a.at(a.n_last())) extent *= 2;
  const TileSet tiles = build_tiles(r, extent);
  std::mt19937_64 g(11);
  std::uniform_real_distribution<double> x(a.at(a.n_first), a.at(a.n_last()) * (1 - 1e-9)),
      y(-extent / 2, extent / 2 * (1 - 1e-9));
  std::vector<Atom> atoms;
  for (int i = 0; i < state.range(0); ++i) atoms.push_back({{x(g), y(g)}, 1});
  HalfPlaneMeasure mu = HalfPlaneMeasure::from_atoms(atoms);
  mu = scale_measure(mu, 0.9 / family_domination(mu, tiles, a).constant);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(mu, nu, tiles, a).parts.size());
}
BENCHMARK(BM_Decompose)->Arg(16)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_PaleyWiener(benchmark::State& state) {
  const RadialMeasure nu = RadialMeasure::power_law(1);
  for (auto _ : state) benchmark::DoNotOptimize(paley_wiener_check(nu, MonomialExponential{2, {1, 0}}).gap);
}
BENCHMARK(BM_PaleyWiener)->Unit(benchmark::kMillisecond);

void BM_SobolevNorm(benchmark::State& state) {
  Sampled f;
  const int n = int(state.range(0));
  for (int i = 0; i <= n; ++i) {
    const double t = 16.0 * i / n;
    f.t.push_back(t);
    f.values.push_back(std::exp(-(t - 8) * (t - 8) / 2));
  }
  for (auto _ : state) benchmark::DoNotOptimize(sobolev_norm(f, 0.5).norm);
}
BENCHMARK(BM_SobolevNorm)->RangeMultiplier(4)->Range(256, 16384);

void BM_Counterexample(benchmark::State& state) {
  CounterexampleOptions opt;
  opt.U = {10, 100};
  for (auto _ : state) benchmark::DoNotOptimize(counterexample_suite(opt).best_lower_bound);
}
BENCHMARK(BM_Counterexample)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
