#include <benchmark/benchmark.h>

#include "bousslab/besov.hpp"
#include "bousslab/paraproduct.hpp"
#include "bousslab/random_fields.hpp"

using namespace bousslab;

static void BM_PartitionBuild(benchmark::State& state) {
    const Grid grid(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        DyadicPartition part(grid);
        benchmark::DoNotOptimize(part.q_max());
    }
}
BENCHMARK(BM_PartitionBuild)->RangeMultiplier(2)->Range(64, 512);

static void BM_BlockApply(benchmark::State& state) {
    const Grid grid(static_cast<int>(state.range(0)));
    const DyadicPartition part(grid);
    RandomFieldSpec spec;
    spec.seed = 1;
    const SpectralField f = random_field(grid, spec);
    const int q = part.q_max() / 2;
    for (auto _ : state) {
        SpectralField out = part.block(f, q);
        benchmark::DoNotOptimize(out.coeffs().data());
    }
}
BENCHMARK(BM_BlockApply)->RangeMultiplier(2)->Range(64, 512);

static void BM_BesovNorm(benchmark::State& state) {
    const Grid grid(static_cast<int>(state.range(0)));
    const DyadicPartition part(grid);
    RandomFieldSpec spec;
    spec.seed = 2;
    const SpectralField f = random_field(grid, spec);
    const BesovIndex idx{0.5, 2.0, 1.0};
    f.to_physical(); // plan warmup
    for (auto _ : state)
        benchmark::DoNotOptimize(besov_norm(f, idx, part));
}
BENCHMARK(BM_BesovNorm)->RangeMultiplier(2)->Range(64, 256);

static void BM_BonyDecompose(benchmark::State& state) {
    const Grid grid(static_cast<int>(state.range(0)));
    const DyadicPartition part(grid);
    RandomFieldSpec spec;
    spec.seed = 3;
    const SpectralField u = random_field(grid, spec);
    spec.seed = 4;
    const SpectralField v = random_field(grid, spec);
    u.to_physical(); // plan warmup
    for (auto _ : state) {
        BonyDecomposition bd = bony_decompose(part, u, v);
        benchmark::DoNotOptimize(bd.remainder.coeffs().data());
    }
}
BENCHMARK(BM_BonyDecompose)->RangeMultiplier(2)->Range(64, 256);

BENCHMARK_MAIN();
