#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>

#include "mui/essential.hpp"
#include "mui/invariants.hpp"
#include "mui/linalg.hpp"
#include "mui/sampling.hpp"
#include "mui/steenrod.hpp"

namespace {

// Accumulates random terms until the element has `terms` of them (or the
// whole degree).
mui::Element dense_element(const mui::Ring& ring, std::uint64_t d, std::size_t terms, std::mt19937_64& rng) {
  terms = std::min<std::size_t>(terms, mui::monomial_count(ring, d));
  mui::Element y(ring);
  while (y.size() < terms) y += mui::random_element(ring, d, rng, 1);
  return y;
}

void BM_Multiply(benchmark::State& state) {
  const mui::Ring ring(3, static_cast<int>(state.range(0)));
  std::mt19937_64 rng(1);
  const auto u = dense_element(ring, 9, 10, rng);
  const auto v = dense_element(ring, 8, 10, rng);
  for (auto _ : state) benchmark::DoNotOptimize(u * v);
}
BENCHMARK(BM_Multiply)->Arg(2)->Arg(3)->Arg(4);

void BM_PowerOperation(benchmark::State& state) {
  const mui::Ring ring(3, 3);
  const auto M = mui::mui_invariant(ring, 2);
  for (auto _ : state) benchmark::DoNotOptimize(mui::power_operation(static_cast<std::uint64_t>(state.range(0)), M));
}
BENCHMARK(BM_PowerOperation)->Arg(1)->Arg(3)->Arg(9);

void BM_MuiTable(benchmark::State& state) {
  const mui::Ring ring(3, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mui::MuiTable::build(ring));
}
BENCHMARK(BM_MuiTable)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_EssBasis(benchmark::State& state) {
  const mui::Ring ring(3, 3);
  const auto d = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mui::ess_basis(ring, d));
}
BENCHMARK(BM_EssBasis)->Arg(10)->Arg(18)->Arg(26)->Unit(benchmark::kMillisecond);

void BM_Closure(benchmark::State& state) {
  const mui::Ring ring(3, 3);
  const auto seed = mui::parse_element(ring, "a1a2a3");
  for (auto _ : state) {
    benchmark::DoNotOptimize(mui::steenrod_closure(seed, static_cast<std::uint64_t>(state.range(0))));
  }
}
BENCHMARK(BM_Closure)->Arg(14)->Arg(20)->Arg(26)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
