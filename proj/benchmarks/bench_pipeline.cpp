#include <benchmark/benchmark.h>

#include "mixedisc/dcmm.hpp"
#include "mixedisc/eigs.hpp"
#include "mixedisc/laplacian.hpp"
#include "mixedisc/metrics.hpp"
#include "mixedisc/pipeline.hpp"

using namespace mixedisc;

namespace {

AdjacencyMatrix benchmark_network() {
  static const AdjacencyMatrix a = [] {
    const DcmmParams p = experiment_params(3, 0.4, 1);
    return sample_adjacency(p, 2);
  }();
  return a;
}

void BM_sample_adjacency(benchmark::State& state) {
  const DcmmParams p = experiment_params(3, 0.4, 1);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_adjacency(p, seed++));
  }
}
BENCHMARK(BM_sample_adjacency)->Unit(benchmark::kMillisecond);

void BM_regularized_laplacian(benchmark::State& state) {
  const AdjacencyMatrix a = benchmark_network();
  const double tau = default_tau(a, 0.1, DMode::midrange);
  for (auto _ : state) {
    benchmark::DoNotOptimize(regularized_laplacian(a, tau));
  }
}
BENCHMARK(BM_regularized_laplacian)->Unit(benchmark::kMillisecond);

void BM_top_eigs_dense(benchmark::State& state) {
  const AdjacencyMatrix a = benchmark_network();
  const Eigen::MatrixXd l(regularized_laplacian(a, default_tau(a, 0.1, DMode::midrange)).values);
  for (auto _ : state) {
    benchmark::DoNotOptimize(top_eigs(l, 4));
  }
}
BENCHMARK(BM_top_eigs_dense)->Unit(benchmark::kMillisecond);

void BM_top_eigs_lanczos(benchmark::State& state) {
  const AdjacencyMatrix a = benchmark_network();
  const auto l = regularized_laplacian(a, default_tau(a, 0.1, DMode::midrange));
  TopEigsOptions opts;
  opts.dense_threshold = 1;  // force the iterative path
  for (auto _ : state) {
    benchmark::DoNotOptimize(top_eigs(l.values, 4, opts));
  }
}
BENCHMARK(BM_top_eigs_lanczos)->Unit(benchmark::kMillisecond);

void BM_kmeans(benchmark::State& state) {
  const AdjacencyMatrix a = benchmark_network();
  const SpectralEmbedding emb = isc_embed(a, 3, 0.1, DMode::midrange);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kmeans_pp(emb.x_star, 3));
  }
}
BENCHMARK(BM_kmeans)->Unit(benchmark::kMillisecond);

void BM_kmedian(benchmark::State& state) {
  const AdjacencyMatrix a = benchmark_network();
  const SpectralEmbedding emb = isc_embed(a, 3, 0.1, DMode::midrange);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kmedian(emb.x_star, 3));
  }
}
BENCHMARK(BM_kmedian)->Unit(benchmark::kMillisecond);

void BM_mixed_isc_end_to_end(benchmark::State& state) {
  const AdjacencyMatrix a = benchmark_network();
  for (auto _ : state) {
    benchmark::DoNotOptimize(mixed_isc(a, 3));
  }
}
BENCHMARK(BM_mixed_isc_end_to_end)->Unit(benchmark::kMillisecond);

void BM_mixed_hamming(benchmark::State& state) {
  const DcmmParams p = experiment_params(3, 0.4, 1);
  const AdjacencyMatrix a = benchmark_network();
  const MixedIscResult res = mixed_isc(a, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mixed_hamming(res.estimate.pi_hat, p.pi));
  }
}
BENCHMARK(BM_mixed_hamming)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
