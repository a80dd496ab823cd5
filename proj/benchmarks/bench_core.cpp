#include <benchmark/benchmark.h>

#include <random>

#include "gti/analysis.hpp"
#include "gti/characterization.hpp"
#include "gti/fourier.hpp"
#include "gti/systems.hpp"

using namespace gti;

namespace {

Signal noise(const GroupSpec& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  Signal f(g);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = Complex(d(rng), d(rng));
  return f;
}

SuperSystemDescriptor gabor(std::int64_t n, std::int64_t a, std::int64_t b, std::uint64_t seed) {
  const auto g = make_group({n});
  GaborSpec spec{{{noise(g, seed)}}, subgroup_from_generators(g, {{a}}), subgroup_from_generators(g, {{b}})};
  return gabor_system(spec);
}

void BM_DftFast(benchmark::State& state) {
  const auto g = make_group({state.range(0)});
  const auto f = noise(g, 1);
  for (auto _ : state) benchmark::DoNotOptimize(dft(f));
}
BENCHMARK(BM_DftFast)->Arg(64)->Arg(256)->Arg(1024)->Arg(4096)->Arg(4093);

void BM_DftNaive(benchmark::State& state) {
  const auto g = make_group({state.range(0)});
  const auto f = noise(g, 1);
  for (auto _ : state) benchmark::DoNotOptimize(dft_naive(f));
}
BENCHMARK(BM_DftNaive)->Arg(64)->Arg(256)->Arg(1024);

void BM_TAlphaTable(benchmark::State& state) {
  const auto n = state.range(0);
  const auto F = gabor(n, 2, 2, 2);
  const auto H = gabor(n, 2, 2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(t_alpha_table(F, H));
}
BENCHMARK(BM_TAlphaTable)->Arg(16)->Arg(32)->Arg(64);

void BM_MixedDualGramian(benchmark::State& state) {
  const auto n = state.range(0);
  const auto F = gabor(n, 2, 2, 2);
  const auto H = gabor(n, 2, 2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(mixed_dual_gramian(F, H));
}
BENCHMARK(BM_MixedDualGramian)->Arg(16)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
