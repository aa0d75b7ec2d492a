#include <benchmark/benchmark.h>

#include "bousslab/fourier_ops.hpp"
#include "bousslab/norms.hpp"
#include "bousslab/random_fields.hpp"

using namespace bousslab;

static void BM_TransformRoundTrip(benchmark::State& state) {
    const Grid grid(static_cast<int>(state.range(0)));
    RandomFieldSpec spec;
    spec.seed = 1;
    const SpectralField f = random_field(grid, spec);
    f.to_physical(); // build the transform plan outside the timed region
    for (auto _ : state) {
        const std::vector<double> phys = f.to_physical();
        SpectralField back = SpectralField::from_physical(grid, phys);
        benchmark::DoNotOptimize(back.coeffs().data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TransformRoundTrip)->RangeMultiplier(2)->Range(64, 512)->Complexity();

static void BM_FractionalLaplacian(benchmark::State& state) {
    const Grid grid(static_cast<int>(state.range(0)));
    RandomFieldSpec spec;
    spec.seed = 2;
    const SpectralField f = random_field(grid, spec);
    const FractionalOrder alpha(1.5);
    for (auto _ : state) {
        SpectralField out = fractional_laplacian(f, alpha);
        benchmark::DoNotOptimize(out.coeffs().data());
    }
}
BENCHMARK(BM_FractionalLaplacian)->RangeMultiplier(2)->Range(64, 512);

static void BM_DealiasedProduct(benchmark::State& state) {
    const Grid grid(static_cast<int>(state.range(0)));
    RandomFieldSpec spec;
    spec.seed = 3;
    const SpectralField a = random_field(grid, spec);
    spec.seed = 4;
    const SpectralField b = random_field(grid, spec);
    a.to_physical(); // plan warmup
    for (auto _ : state) {
        SpectralField out = multiply(a, b);
        benchmark::DoNotOptimize(out.coeffs().data());
    }
}
BENCHMARK(BM_DealiasedProduct)->RangeMultiplier(2)->Range(64, 256);

static void BM_LpNorm(benchmark::State& state) {
    const Grid grid(256);
    RandomFieldSpec spec;
    spec.seed = 5;
    const SpectralField f = random_field(grid, spec);
    const double p = state.range(0) == 0 ? kInfinity
                                         : static_cast<double>(state.range(0));
    f.to_physical(); // plan warmup
    for (auto _ : state)
        benchmark::DoNotOptimize(lp_norm(f, p));
}
BENCHMARK(BM_LpNorm)->Arg(0)->Arg(2)->Arg(3);

BENCHMARK_MAIN();
