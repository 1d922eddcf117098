#include <benchmark/benchmark.h>

#include <cstdint>

#include "photostat/combinatorics.hpp"
#include "photostat/kinetics.hpp"
#include "photostat/quantized_string.hpp"
#include "photostat/random.hpp"
#include "photostat/wavefield.hpp"

namespace photostat {
namespace {

// Fock dimension is cutoff^modes; range(0) is the mode count.
void BM_StringBudget(benchmark::State& state) {
    BhjConfig c;
    c.modes.clear();
    for (std::int64_t k = 0; k < state.range(0); ++k) {
        c.modes.push_back(40 + static_cast<std::uint64_t>(k));
    }
    c.cutoff = 12;
    c.kT = 105.0;
    c.leakage_bound = 1e-3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(phase_averaged_fluctuation(c));
    }
}
BENCHMARK(BM_StringBudget)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_GillespieStep(benchmark::State& state) {
    auto cavity = CavityState::make(static_cast<std::size_t>(state.range(0)), 0.6931471805599453, 100.0);
    Rng rng(5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(step_gillespie(cavity, rate_table(cavity), rng));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_GillespieStep)->Arg(1)->Arg(8)->Arg(64);

void BM_CountIdentities(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_count_identities(n, n));
    }
}
BENCHMARK(BM_CountIdentities)->DenseRange(4, 16, 4)->Unit(benchmark::kMicrosecond);

void BM_PlanckW(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(planck_W(n, n));
    }
}
BENCHMARK(BM_PlanckW)->Arg(100)->Arg(10000);

// One realization at observation time over pulse duration R = range(0).
void BM_PulseTrain(benchmark::State& state) {
    const double R = static_cast<double>(state.range(0));
    PulseTrainConfig c;
    c.tau = 1.0 / R;
    c.n0 = static_cast<std::uint64_t>(1.6e5 * R);
    c.spread = static_cast<std::uint64_t>(21.0 * R);
    c.pulses = static_cast<std::size_t>(4.0 * R);
    Rng rng(6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(pulse_train_fluctuation(c, rng));
    }
}
BENCHMARK(BM_PulseTrain)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace photostat
