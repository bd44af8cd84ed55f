// Serial reference vs OpenMP kernels.
#include <benchmark/benchmark.h>

#include <random>

#include "edcp/kernels.hpp"
#include "edcp/scan.hpp"

namespace {

edcp::Series normal_series(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  std::vector<double> x(n);
  for (double& v : x) v = z(rng);
  return edcp::Series::scalar(std::move(x));
}

void BM_DistanceSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto s = normal_series(n, 1);
  std::vector<double> out(n * n);
  for (auto _ : state) {
    edcp::kernels::serial::fill_distance_matrix(s, 1.0, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_DistanceOmp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto s = normal_series(n, 1);
  std::vector<double> out(n * n);
  for (auto _ : state) {
    edcp::kernels::omp::fill_distance_matrix(s, 1.0, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_Replicates(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto dist = edcp::distance_matrix(normal_series(n, 2));
  const auto obs = edcp::scan(dist, 0.1);
  const edcp::kernels::ScanWindow w{obs.candidates.front(), obs.candidates.back(), obs.scale.s_psi};
  for (auto _ : state) {
    auto reps = Parallel ? edcp::kernels::omp::permutation_replicates(dist, w, {}, 7, 999)
                         : edcp::kernels::serial::permutation_replicates(dist, w, {}, 7, 999);
    benchmark::DoNotOptimize(reps.data());
  }
  state.SetItemsProcessed(state.iterations() * 999);
}

}  // namespace

BENCHMARK(BM_DistanceSerial)->Arg(200)->Arg(1000)->Arg(4000);
BENCHMARK(BM_DistanceOmp)->Arg(200)->Arg(1000)->Arg(4000);
BENCHMARK(BM_Replicates<false>)->Arg(50)->Arg(100)->Arg(200);
BENCHMARK(BM_Replicates<true>)->Arg(50)->Arg(100)->Arg(200);

BENCHMARK_MAIN();
