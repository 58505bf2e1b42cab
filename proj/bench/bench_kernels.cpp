// Windowed OpenMP kernels against the serial whole-range reference.
//
//   primebias_bench --benchmark_filter=Census

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "primebias/kernels.hpp"
#include "primebias/pair_census.hpp"
#include "primebias/prime_engine.hpp"
#include "primebias/reference.hpp"

namespace {

using namespace primebias;

void BM_PhiWindowKernel(benchmark::State& state) {
  const auto limit = static_cast<std::uint64_t>(state.range(0));
  const auto base = primes_up_to(isqrt(limit) + 1);
  const std::size_t length = default_segment_length;
  std::vector<std::uint64_t> phi(length), scratch(length);
  for (auto _ : state) {
    for (std::uint64_t lo = 1; lo < limit; lo += length) {
      const std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(length, limit - lo));
      kernels::fill_phi(lo, std::span(phi).first(n), std::span(scratch).first(n), base);
    }
    benchmark::DoNotOptimize(phi.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * limit));
}

void BM_PhiTableReference(benchmark::State& state) {
  const auto limit = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    auto table = reference::phi_table(limit);
    benchmark::DoNotOptimize(table.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * limit));
}

const std::int64_t kGaps[] = {2, 4, 6, 8, 10, 30};

void BM_CensusWindowed(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  CensusOptions options;
  options.threads = static_cast<int>(state.range(1));
  for (auto _ : state) {
    auto results = census(kGaps, CensusScope::first_primes(n), options);
    benchmark::DoNotOptimize(results.data());
  }
}

void BM_CensusReference(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    auto results = reference::census(kGaps, CensusScope::first_primes(n));
    benchmark::DoNotOptimize(results.data());
  }
}

}  // namespace

BENCHMARK(BM_PhiWindowKernel)->Arg(1 << 22)->Arg(1 << 24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PhiTableReference)->Arg(1 << 22)->Arg(1 << 24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CensusWindowed)
    ->ArgsProduct({{100'000, 1'000'000}, {1, 2, 4}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CensusReference)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
