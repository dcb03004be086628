// Microbenchmarks for the hot paths: prime sieving, binomial table
// construction, weighted sums, sequence generation, per-prime entry checks,
// and whole-range sweeps.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "supercong/conjdsl.hpp"
#include "supercong/harness.hpp"

using namespace supercong;

namespace {

std::uint64_t nth_prime_at_least(std::uint64_t lo) {
  std::vector<std::uint64_t> ps = sieve_primes(lo, lo + 200);
  return ps.front();
}

void BM_Sieve(benchmark::State& state) {
  const std::uint64_t hi = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sieve_primes(3, hi));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(hi));
}
BENCHMARK(BM_Sieve)->Arg(10000)->Arg(100000)->Arg(1000000);

void BM_BinomTables(benchmark::State& state) {
  const std::uint64_t p = nth_prime_at_least(static_cast<std::uint64_t>(state.range(0)));
  Modulus mod(p, static_cast<unsigned>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_binom_tables(mod));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(p));
}
BENCHMARK(BM_BinomTables)->Args({500, 3})->Args({500, 5})->Args({5000, 3});

void BM_WeightedSum(benchmark::State& state) {
  static const std::vector<ConjectureSpec> spec = parse_registry(
      "conjecture \"bench\" {\n"
      "  define s = sum(k, 0, p-1, (4*k+1)*cb2(k)^3/(-64)^k);\n"
      "  case all: s === 0 (mod p^1);\n"
      "}\n",
      "bench");
  const SumSpec& sum = spec[0].defines[0].second->sum;
  const std::uint64_t p = nth_prime_at_least(static_cast<std::uint64_t>(state.range(0)));
  Modulus mod(p, static_cast<unsigned>(state.range(1)));
  BinomTables tables = build_binom_tables(mod);
  for (auto _ : state) {
    benchmark::DoNotOptimize(weighted_sum(mod, tables, sum));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(p));
}
BENCHMARK(BM_WeightedSum)->Args({500, 3})->Args({500, 5})->Args({5000, 5});

void BM_SequenceRecurrence(benchmark::State& state) {
  const std::uint64_t p = nth_prime_at_least(static_cast<std::uint64_t>(state.range(0)));
  Modulus mod(p, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(seq_by_recurrence(mod, Seq::A, p));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(p));
}
BENCHMARK(BM_SequenceRecurrence)->Arg(500)->Arg(5000);

void BM_CheckAllEntriesOnePrime(benchmark::State& state) {
  const std::uint64_t p = nth_prime_at_least(static_cast<std::uint64_t>(state.range(0)));
  Modulus mod(p, 5);
  const std::vector<ConjectureSpec>& registry = builtin_registry();
  std::int64_t records = 0;
  for (auto _ : state) {
    EvalContext ctx(mod);
    for (const ConjectureSpec& spec : registry)
      records += static_cast<std::int64_t>(check_conjecture(ctx, spec, 5).size());
  }
  state.SetItemsProcessed(records);
}
BENCHMARK(BM_CheckAllEntriesOnePrime)->Arg(100)->Arg(500)->Arg(2000);

void BM_Sweep(benchmark::State& state) {
  SweepConfig config;
  config.lo = 3;
  config.hi = static_cast<std::uint64_t>(state.range(0));
  config.exponent_cap = 5;
  config.jobs = static_cast<unsigned>(state.range(1));
  std::int64_t records = 0;
  for (auto _ : state) {
    Report report = run_sweep(config);
    records += static_cast<std::int64_t>(report.records.size());
  }
  state.SetItemsProcessed(records);
}
BENCHMARK(BM_Sweep)->Args({199, 1})->Args({199, 4})->Args({499, 4})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
