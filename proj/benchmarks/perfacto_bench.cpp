#include <benchmark/benchmark.h>

#include <random>

#include "perfacto/colimit.hpp"
#include "perfacto/linalg.hpp"
#include "perfacto/random.hpp"
#include "perfacto/resolution.hpp"

using namespace perfacto;

namespace {

Matrix random_integer_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> entry(-9, 9);
  std::vector<std::vector<long>> rows(n, std::vector<long>(n));
  for (auto& row : rows)
    for (auto& x : row) x = entry(rng);
  return Matrix::from_rows(Ring::integers(), rows);
}

void BM_SmithNormalForm(benchmark::State& state) {
  auto a = random_integer_matrix(static_cast<std::size_t>(state.range(0)), 42);
  for (auto _ : state) benchmark::DoNotOptimize(snf(a));
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_Homology(benchmark::State& state) {
  DeskGenerator gen(Ring::integers_mod(6), 7);
  auto c = gen.complex(0, static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(homology_report(c));
}
BENCHMARK(BM_Homology)->Arg(2)->Arg(4)->Arg(8);

void BM_LiftChainMap(benchmark::State& state) {
  DeskGenerator gen(Ring::integers_mod(6), 11);
  auto n = gen.complex(0, 2, 2);
  auto x = gen.complex(0, 2, 2);
  auto y = gen.complex(0, 2, 2);
  auto alpha = gen.chain_map(x, y);
  auto phi = alpha * gen.chain_map(n, x);
  for (auto _ : state) benchmark::DoNotOptimize(lift_chain_map(phi, alpha));
}
BENCHMARK(BM_LiftChainMap);

void BM_Contraction(benchmark::State& state) {
  DeskGenerator gen(Ring::integers_mod(6), 13);
  auto m = gen.complex(0, static_cast<int>(state.range(0)), 2);
  auto c = cone(ChainMap::identity(m)).complex;
  for (auto _ : state) benchmark::DoNotOptimize(contraction(c));
}
BENCHMARK(BM_Contraction)->Arg(1)->Arg(3)->Arg(5);

void BM_FactorThroughPerfect(benchmark::State& state) {
  auto z2 = ChainComplex::concentrated(PresentedModule::cyclic(Ring::integers_mod(6), 2), 0);
  auto id = ChainMap::identity(z2);
  for (auto _ : state) benchmark::DoNotOptimize(factor_through_perfect(id));
}
BENCHMARK(BM_FactorThroughPerfect);

}  // namespace

BENCHMARK_MAIN();
