#include <benchmark/benchmark.h>

#include <cmath>

#include "photostat/decomposition.hpp"
#include "photostat/distributions.hpp"
#include "photostat/random.hpp"

namespace photostat {
namespace {

// Occupation n_bar = 1 throughout, so every sampler draws from the same law.
constexpr double b_half = 0.5;

void BM_BoseDirect(benchmark::State& state) {
    Rng rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_geometric_ratio(b_half, rng));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_BoseDirect);

void BM_BoseViaMultiplets(benchmark::State& state) {
    const auto set = poisson_multiplet_params(b_half);
    Rng rng(2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_bose_via_multiplets(set, rng));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_BoseViaMultiplets);

void BM_BoseViaBinary(benchmark::State& state) {
    const auto set = binary_photon_params(b_half);
    Rng rng(3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_bose_via_binary(set, rng));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_BoseViaBinary);

void BM_Poisson(benchmark::State& state) {
    const double lambda = static_cast<double>(state.range(0));
    Rng rng(4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_poisson(lambda, rng));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Poisson)->Arg(1)->Arg(30)->Arg(1000);

// Decomposition bookkeeping cost grows with the number of retained components as b -> 1.
void BM_DecomposeBinary(benchmark::State& state) {
    const double b = 1.0 - std::ldexp(1.0, -static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(decompose_binary(b));
    }
}
BENCHMARK(BM_DecomposeBinary)->DenseRange(1, 9, 4);

void BM_DecomposeMultiplets(benchmark::State& state) {
    const double b = 1.0 - std::ldexp(1.0, -static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(decompose_multiplets(b));
    }
}
BENCHMARK(BM_DecomposeMultiplets)->DenseRange(1, 9, 4);

}  // namespace
}  // namespace photostat
