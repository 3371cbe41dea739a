#include <benchmark/benchmark.h>

#include "pdtomo/anisotropy.hpp"
#include "pdtomo/det_coupled.hpp"
#include "pdtomo/noise.hpp"
#include "pdtomo/phantom.hpp"

using namespace pdt;

namespace {

void BM_DerivativeAssembly(benchmark::State& state) {
    const Grid grid(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        DerivativeOps ops(grid);
        benchmark::DoNotOptimize(ops.dx().nonZeros());
    }
}
BENCHMARK(BM_DerivativeAssembly)->Arg(64)->Arg(128)->Arg(256);

void BM_GradientApply(benchmark::State& state) {
    const Grid grid(static_cast<int>(state.range(0)));
    const DerivativeOps ops(grid);
    const ScalarField f = ScalarField::sample(grid, [](double x, double y) { return x * y; });
    for (auto _ : state) {
        VectorField g = ops.gradient(f);
        benchmark::DoNotOptimize(g.x.values().data());
    }
}
BENCHMARK(BM_GradientApply)->Arg(128)->Arg(256);

void BM_PoissonFactorize(benchmark::State& state) {
    const Grid grid(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        PoissonSolver poisson(grid);
        benchmark::DoNotOptimize(&poisson);
    }
}
BENCHMARK(BM_PoissonFactorize)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_ForwardSolve(benchmark::State& state) {
    const Grid grid(static_cast<int>(state.range(0)));
    const DerivativeOps ops(grid);
    const ConductivityField c = make_phantom("smooth", grid);
    const ForwardSolver solver(c, ops);
    const auto gs = triplet_standard();
    for (auto _ : state) {
        ScalarField u = solver.solve(gs[0]);
        benchmark::DoNotOptimize(u.values().data());
    }
}
BENCHMARK(BM_ForwardSolve)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_TripletFrames(benchmark::State& state) {
    const Grid grid(static_cast<int>(state.range(0)));
    const DerivativeOps ops(grid);
    const ConductivityField c = make_phantom("smooth", grid);
    const PowerDensitySet H =
        power_densities(c, solve_illuminations(c, triplet_standard(), ops), ops);
    for (auto _ : state) {
        TripletData td = triplet_data(H, ops);
        benchmark::DoNotOptimize(td.D.inner_xy.values().data());
    }
}
BENCHMARK(BM_TripletFrames)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_PointwiseRecon(benchmark::State& state) {
    const Grid grid(static_cast<int>(state.range(0)));
    const DerivativeOps ops(grid);
    const ConductivityField c = make_phantom("smooth", grid);
    const PowerDensitySet H =
        power_densities(c, solve_illuminations(c, triplet_standard(), ops), ops);
    const TripletData td = triplet_data(H, ops);
    for (auto _ : state) {
        MaskedAnisotropy rec = reconstruct_pointwise(td.D);
        benchmark::DoNotOptimize(rec.fields.xi.values().data());
    }
}
BENCHMARK(BM_PointwiseRecon)->Arg(128);

void BM_NoiseField(benchmark::State& state) {
    const Grid grid(static_cast<int>(state.range(0)));
    PowerDensitySet H(grid, 2);
    H.at(0, 0) = ScalarField::constant(grid, 1.0);
    H.at(0, 1) = ScalarField::constant(grid, 0.1);
    H.at(1, 1) = ScalarField::constant(grid, 1.0);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        PowerDensitySet noisy = add_noise(H, NoiseSpec{10.0, ++seed});
        benchmark::DoNotOptimize(noisy.at(0, 0).values().data());
    }
}
BENCHMARK(BM_NoiseField)->Arg(128);

void BM_CoupledSolve(benchmark::State& state) {
    const Grid grid(static_cast<int>(state.range(0)));
    const DerivativeOps ops(grid);
    const ConductivityField c = make_phantom("rough", grid);
    const PowerDensitySet H = power_densities(c, solve_illuminations(c, pair_xy(), ops), ops);
    const ScalarField g1 = ScalarField::sample(grid, [](double x, double) { return x; });
    const ScalarField g2 = ScalarField::sample(grid, [](double, double y) { return y; });
    for (auto _ : state) {
        CoupledSolution sol = solve_coupled(c.aniso, H, g1, g2, ops);
        benchmark::DoNotOptimize(sol.u1.values().data());
    }
}
BENCHMARK(BM_CoupledSolve)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
