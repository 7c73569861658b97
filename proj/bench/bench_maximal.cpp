// Parallel sweep vs the serial per-cell reference vs brute force.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "strongmax/maximal.hpp"
#include "strongmax/oracle.hpp"

namespace {

strongmax::GridFunction random_grid(int dim, std::size_t cells) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::size_t total = 1;
    for (int k = 0; k < dim; ++k) total *= cells;
    std::vector<double> values(total);
    for (auto& v : values) v = u(rng);
    const auto d = static_cast<std::size_t>(dim);
    return {std::vector<double>(d, -1.0), std::vector<double>(d, 1.0), std::vector<std::size_t>(d, cells),
            std::move(values)};
}

void BM_Sweep2D(benchmark::State& state) {
    const auto f = random_grid(2, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(strongmax::strong_maximal_grid(f, strongmax::Variant::uncentered,
                                                                strongmax::Kernel::sweep));
    }
    state.SetComplexityN(state.range(0));
}

void BM_PerCell2D(benchmark::State& state) {
    const auto f = random_grid(2, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(strongmax::reference::strong_maximal_per_cell(f, strongmax::Variant::uncentered));
    }
    state.SetComplexityN(state.range(0));
}

void BM_BruteForce2D(benchmark::State& state) {
    const auto f = random_grid(2, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(strongmax::brute_force_maximal(f, strongmax::Variant::uncentered));
    }
}

void BM_Sweep3D(benchmark::State& state) {
    const auto f = random_grid(3, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(strongmax::strong_maximal_grid(f, strongmax::Variant::uncentered,
                                                                strongmax::Kernel::sweep));
    }
}

void BM_PerCell3D(benchmark::State& state) {
    const auto f = random_grid(3, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(strongmax::reference::strong_maximal_per_cell(f, strongmax::Variant::uncentered));
    }
}

void BM_BilinearSweep2D(benchmark::State& state) {
    const auto f = random_grid(2, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(strongmax::bilinear_maximal_grid(f, f, strongmax::Kernel::sweep));
    }
}

void BM_BilinearPerCell2D(benchmark::State& state) {
    const auto f = random_grid(2, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(strongmax::reference::bilinear_per_cell(f, f));
    }
}

}  // namespace

BENCHMARK(BM_Sweep2D)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PerCell2D)->RangeMultiplier(2)->Range(8, 32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForce2D)->RangeMultiplier(2)->Range(8, 16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sweep3D)->DenseRange(4, 12, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PerCell3D)->DenseRange(4, 12, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BilinearSweep2D)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BilinearPerCell2D)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
