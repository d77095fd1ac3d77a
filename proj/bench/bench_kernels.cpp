// Compares the OpenMP kernels against their serial reference implementations
// across sizes that straddle the parallel grain.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "rrk/burgers.hpp"
#include "rrk/kernels.hpp"

namespace {

std::vector<double> random_vector(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

void bm_dot_serial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = random_vector(n, 1);
  const auto y = random_vector(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(rrk::kernels::serial::dot(x, y));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}

void bm_dot_parallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = random_vector(n, 1);
  const auto y = random_vector(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(rrk::kernels::dot(x, y));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}

void bm_add_scaled_serial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto u = random_vector(n, 3);
  const auto d = random_vector(n, 4);
  std::vector<double> out(n);
  for (auto _ : state) {
    rrk::kernels::serial::add_scaled(out, u, 0.125, d);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}

void bm_add_scaled_parallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto u = random_vector(n, 3);
  const auto d = random_vector(n, 4);
  std::vector<double> out(n);
  for (auto _ : state) {
    rrk::kernels::add_scaled(out, u, 0.125, d);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}

void bm_burgers_rhs_serial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto u = random_vector(n, 5);
  std::vector<double> out(n);
  const double dx = 1.0 / static_cast<double>(n);
  for (auto _ : state) {
    rrk::burgers::serial::ec_rhs(u, dx, out);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}

void bm_burgers_rhs_parallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto u = random_vector(n, 5);
  std::vector<double> out(n);
  const double dx = 1.0 / static_cast<double>(n);
  for (auto _ : state) {
    rrk::burgers::ec_rhs(u, dx, out);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}

}  // namespace

BENCHMARK(bm_dot_serial)->RangeMultiplier(16)->Range(1 << 10, 1 << 22);
BENCHMARK(bm_dot_parallel)->RangeMultiplier(16)->Range(1 << 10, 1 << 22);
BENCHMARK(bm_add_scaled_serial)->RangeMultiplier(16)->Range(1 << 10, 1 << 22);
BENCHMARK(bm_add_scaled_parallel)->RangeMultiplier(16)->Range(1 << 10, 1 << 22);
BENCHMARK(bm_burgers_rhs_serial)->RangeMultiplier(16)->Range(1 << 10, 1 << 22);
BENCHMARK(bm_burgers_rhs_parallel)->RangeMultiplier(16)->Range(1 << 10, 1 << 22);

BENCHMARK_MAIN();
