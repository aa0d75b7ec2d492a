#include <benchmark/benchmark.h>

#include "bousslab/presets.hpp"
#include "bousslab/random_fields.hpp"

using namespace bousslab;

static void BM_Advect(benchmark::State& state) {
    const Grid grid(static_cast<int>(state.range(0)));
    RandomFieldSpec spec;
    spec.seed = 1;
    const SpectralField omega = random_field(grid, spec);
    const VectorField v = biot_savart(omega);
    spec.seed = 2;
    const SpectralField theta = random_field(grid, spec);
    theta.to_physical(); // plan warmup
    for (auto _ : state) {
        SpectralField out = advect(v, theta);
        benchmark::DoNotOptimize(out.coeffs().data());
    }
}
BENCHMARK(BM_Advect)->RangeMultiplier(2)->Range(128, 512);

static void BM_EvaluateSource(benchmark::State& state) {
    const Grid grid(static_cast<int>(state.range(0)));
    RandomFieldSpec spec;
    spec.seed = 3;
    const SpectralField theta = random_field(grid, spec);
    const SourceFunction F = SourceFunction::cubic();
    theta.to_physical(); // plan warmup
    for (auto _ : state) {
        SpectralField out = evaluate_source(theta, F);
        benchmark::DoNotOptimize(out.coeffs().data());
    }
}
BENCHMARK(BM_EvaluateSource)->RangeMultiplier(2)->Range(128, 512);

static void BM_BoussinesqStep(benchmark::State& state) {
    const Grid grid(static_cast<int>(state.range(0)));
    const SpectralField omega0 = preset_euler_eigen(grid);
    const SpectralField theta0 = preset_gaussian_bump(grid);
    IntegratorConfig cfg;
    cfg.dt = 0.01;
    cfg.t_end = 0.01; // one step, diagnostics included
    theta0.to_physical(); // plan warmup
    for (auto _ : state) {
        Trajectory traj = solve_boussinesq(omega0, theta0,
                                           SourceFunction::linear(),
                                           FractionalOrder(1.5), cfg);
        benchmark::DoNotOptimize(traj.scalars.times.data());
    }
}
BENCHMARK(BM_BoussinesqStep)->RangeMultiplier(2)->Range(128, 256);

BENCHMARK_MAIN();
