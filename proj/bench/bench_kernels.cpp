// Serial reference loops against the OpenMP kernels, plus one full FKdV step.
// Sizes straddle kParallelThreshold, below which the parallel path runs inline.

#include <benchmark/benchmark.h>

#include <random>

#include "hylo/evolution.hpp"
#include "hylo/kernels.hpp"
#include "hylo/soliton.hpp"

namespace k = hylo::kernels;
using hylo::cd;

namespace {

std::vector<cd> random_data(std::size_t n, unsigned seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> nd;
    std::vector<cd> v(n);
    for (auto& x : v) x = {nd(gen), nd(gen)};
    return v;
}

template <bool Parallel>
void multiply(benchmark::State& st) {
    auto a = random_data(st.range(0), 1);
    const auto b = random_data(st.range(0), 2);
    for (auto _ : st) {
        if constexpr (Parallel) k::parallel::multiply(a, b);
        else k::serial::multiply(a, b);
        benchmark::ClobberMemory();
    }
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <bool Parallel>
void dot(benchmark::State& st) {
    const auto a = random_data(st.range(0), 1);
    const auto b = random_data(st.range(0), 2);
    for (auto _ : st) {
        cd r = Parallel ? k::parallel::dot(a, b) : k::serial::dot(a, b);
        benchmark::DoNotOptimize(r);
    }
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <bool Parallel>
void nonlinear_map(benchmark::State& st) {
    const auto a = random_data(st.range(0), 1);
    std::vector<cd> out(a.size());
    const auto w = hylo::Nonlinearity::gpe();
    auto op = [&](cd v) { return w.derivative_over_r(std::abs(v)) * v; };
    for (auto _ : st) {
        if constexpr (Parallel) k::parallel::map(a, out, op);
        else k::serial::map(a, out, op);
        benchmark::ClobberMemory();
    }
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

void fkdv_step(benchmark::State& st) {
    const hylo::Grid g(400.0, static_cast<std::size_t>(st.range(0)));
    hylo::FkdvStepper stepper(g, 1e-3, 0.5, hylo::Nonlinearity::bo(), true);
    const auto u0 = hylo::exact_bo_soliton(-1.0, 0.0, g, 10);
    std::vector<cd> spec(u0.spectrum().begin(), u0.spectrum().end());
    for (auto _ : st) {
        stepper.advance(spec);
        benchmark::ClobberMemory();
    }
}

}  // namespace

#define SIZES RangeMultiplier(8)->Range(1 << 10, 1 << 22)

BENCHMARK(multiply<false>)->SIZES;
BENCHMARK(multiply<true>)->SIZES;
BENCHMARK(dot<false>)->SIZES;
BENCHMARK(dot<true>)->SIZES;
BENCHMARK(nonlinear_map<false>)->SIZES;
BENCHMARK(nonlinear_map<true>)->SIZES;
BENCHMARK(fkdv_step)->RangeMultiplier(4)->Range(1 << 12, 1 << 18);

BENCHMARK_MAIN();
