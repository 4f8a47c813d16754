#include <benchmark/benchmark.h>

#include "klent/knn.hpp"
#include "klent/rng.hpp"

namespace {

klent::PointCloud gaussian_cloud(std::size_t n, std::size_t d) {
    klent::RngStream rng(1234, 0);
    klent::PointCloud cloud;
    cloud.n = n;
    cloud.d = d;
    cloud.data.resize(n * d);
    for (auto& x : cloud.data) x = rng.normal();
    return cloud;
}

void BM_KnnTree(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto d = static_cast<std::size_t>(state.range(1));
    const auto cloud = gaussian_cloud(n, d);
    for (auto _ : state) {
        auto nd = klent::all_knn_distances(cloud, 5, klent::KnnBackend::tree);
        benchmark::DoNotOptimize(nd.rho.data());
    }
    state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}

void BM_KnnBrute(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto d = static_cast<std::size_t>(state.range(1));
    const auto cloud = gaussian_cloud(n, d);
    for (auto _ : state) {
        auto nd = klent::all_knn_distances(cloud, 5, klent::KnnBackend::brute);
        benchmark::DoNotOptimize(nd.rho.data());
    }
}

}  // namespace

BENCHMARK(BM_KnnTree)->Args({1000, 2})->Args({10000, 2})->Args({10000, 5})->Args({50000, 3})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KnnBrute)->Args({1000, 2})->Args({5000, 5})->Unit(benchmark::kMillisecond);
