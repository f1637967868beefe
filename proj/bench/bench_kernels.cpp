// Serial reference vs OpenMP kernels on the shapes the experiments use.
// The thread argument only affects the kernels variant.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <vector>

#include "hm/kernels.hpp"
#include "hm/numerics.hpp"
#include "hm/reference.hpp"

namespace {

using namespace hm;

WeightMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  RngStream rng = make_rng(seed, 0);
  WeightMatrix w(rows, cols);
  for (std::size_t c = 0; c < cols; ++c)
    for (std::size_t r = 0; r < rows; ++r) w(r, c) = rng.uniform() - 0.5;
  return w;
}

PointSet random_points(std::size_t n, std::size_t d, std::uint64_t seed, bool binary = false) {
  RngStream rng = make_rng(seed, 1);
  PointSet p(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (double& v : p[i]) v = binary ? (rng.uniform() < 0.2 ? 1.0 : 0.0) : rng.uniform();
  return p;
}

std::vector<std::uint32_t> random_active(std::size_t n, std::uint64_t seed) {
  RngStream rng = make_rng(seed, 2);
  std::vector<std::uint8_t> bits(n);
  for (auto& b : bits) b = rng.uniform() < 0.2 ? 1 : 0;
  return kernels::active_units(bits);
}

// Recognition pass 784 -> 625, the widest layer of the probe architecture.
template <bool Parallel>
void BM_affine_binary(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  const auto w = random_matrix(625, 785, 1);
  const auto active = random_active(784, 2);
  std::vector<double> out(625);
  for (auto _ : state) {
    if constexpr (Parallel) kernels::affine_binary(w, active, out);
    else reference::affine_binary(w, active, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_delta_update(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  auto w = random_matrix(625, 785, 3);
  const auto active = random_active(784, 4);
  const std::vector<double> err(625, 1e-6);
  for (auto _ : state) {
    if constexpr (Parallel) kernels::delta_update(w, err, active);
    else reference::delta_update(w, err, active);
    benchmark::ClobberMemory();
  }
}

// 1-NN of 1000 test images against 1000 train images.
template <bool Parallel>
void BM_nearest_batch(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  const auto queries = random_points(1000, 784, 5, true);
  const auto pool = random_points(1000, 784, 6, true);
  for (auto _ : state) {
    auto r = Parallel ? kernels::nearest_batch(queries, pool) : reference::nearest_batch(queries, pool);
    benchmark::DoNotOptimize(r.data());
  }
}

// Queries are pool rows with 5% of pixels flipped, so a close match exists
// and most candidates are abandoned early, as on real digit images.
template <bool Parallel>
void BM_nearest_batch_close(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  const auto pool = random_points(1000, 784, 9, true);
  PointSet queries = pool;
  RngStream rng = make_rng(10, 0);
  for (std::size_t q = 0; q < queries.size(); ++q)
    for (double& v : queries[q])
      if (rng.uniform() < 0.05) v = 1.0 - v;
  for (auto _ : state) {
    auto r = Parallel ? kernels::nearest_batch(queries, pool) : reference::nearest_batch(queries, pool);
    benchmark::DoNotOptimize(r.data());
  }
}

// One probe gradient step on 2000 samples of 625 features.
template <bool Parallel>
void BM_probe_step(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  const auto x = random_points(2000, 625, 7);
  const auto weights = random_points(10, 626, 8);
  PointSet scores(2000, 10), grad(10, 626);
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::class_scores(x, weights, scores);
      kernels::class_gradient(x, scores, grad);
    } else {
      reference::class_scores(x, weights, scores);
      reference::class_gradient(x, scores, grad);
    }
    benchmark::ClobberMemory();
  }
}

void thread_args(benchmark::internal::Benchmark* b) {
  for (int t : {1, 2, 4}) b->Arg(t);
  b->ArgName("threads");
}

}  // namespace

BENCHMARK(BM_affine_binary<false>)->Arg(1)->ArgName("threads");
BENCHMARK(BM_affine_binary<true>)->Apply(thread_args);
BENCHMARK(BM_delta_update<false>)->Arg(1)->ArgName("threads");
BENCHMARK(BM_delta_update<true>)->Apply(thread_args);
BENCHMARK(BM_nearest_batch<false>)->Arg(1)->ArgName("threads")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_nearest_batch<true>)->Apply(thread_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_nearest_batch_close<false>)->Arg(1)->ArgName("threads")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_nearest_batch_close<true>)->Apply(thread_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_probe_step<false>)->Arg(1)->ArgName("threads")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_probe_step<true>)->Apply(thread_args)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
