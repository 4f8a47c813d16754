#include <benchmark/benchmark.h>

#include "klent/inflation.hpp"

namespace {

void BM_BallIntersection(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    double acc = 0.0;
    for (auto _ : state) {
        for (double r = 0.1; r < 4.0; r += 0.13) {
            acc += klent::ball_intersection_alpha(r, 1.7, 2.3, d);
        }
        benchmark::DoNotOptimize(acc);
    }
}

void BM_TkKernel(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    double acc = 0.0;
    for (auto _ : state) {
        for (double r = 0.05; r < 6.0; r += 0.11) {
            acc += klent::t_k(r, 1.9, 2.7, k, 3);
        }
        benchmark::DoNotOptimize(acc);
    }
}

void BM_InflationValue(benchmark::State& state) {
    klent::InflationSpec spec;
    spec.d = static_cast<int>(state.range(0));
    spec.k = static_cast<int>(state.range(1));
    spec.rel_tol = 2e-3;
    for (auto _ : state) {
        auto res = klent::inflation_value(spec);
        benchmark::DoNotOptimize(res.value);
    }
}

}  // namespace

BENCHMARK(BM_BallIntersection)->Arg(1)->Arg(3)->Arg(10);
BENCHMARK(BM_TkKernel)->Arg(1)->Arg(3)->Arg(5);
BENCHMARK(BM_InflationValue)->Args({1, 1})->Args({3, 3})->Unit(benchmark::kMillisecond);
