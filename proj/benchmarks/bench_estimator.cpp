#include <benchmark/benchmark.h>

#include "klent/estimator.hpp"
#include "klent/knn.hpp"
#include "klent/rng.hpp"
#include "klent/weights.hpp"

namespace {

void BM_WeightedEstimate(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const std::size_t d = 4;
    const int k = 8;
    klent::RngStream rng(99, 0);
    klent::PointCloud cloud;
    cloud.n = n;
    cloud.d = d;
    cloud.data.resize(n * d);
    for (auto& x : cloud.data) x = rng.normal();

    const auto nd = klent::all_knn_distances(cloud, k, klent::KnnBackend::tree);
    const auto xi = klent::xi_values(nd, n, d);
    const auto w = klent::canonical_weights(k, static_cast<int>(d));

    for (auto _ : state) {
        double h = klent::weighted_estimate_from_xi(xi, w);
        benchmark::DoNotOptimize(h);
    }
}

}  // namespace

BENCHMARK(BM_WeightedEstimate)->Arg(1000)->Arg(10000)->Arg(100000)
    ->Unit(benchmark::kMicrosecond);
