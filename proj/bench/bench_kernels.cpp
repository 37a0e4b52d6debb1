#include "tumorbif/modes.hpp"
#include "tumorbif/spectral.hpp"

#include <benchmark/benchmark.h>

using namespace tumorbif;

namespace {

const PeriodicOrbit& orbit()
{
    static const PeriodicOrbit o = [] {
        ModelParams p;
        p.mu = 1.0;
        p.sigma_tilde = 0.5;
        p.nutrient = PeriodicNutrient::fourier(1.0, 1.0, {{1, 0.25, 0.0}});
        return find_periodic(p);
    }();
    return o;
}

std::vector<double> indices(int n)
{
    std::vector<double> js;
    for (int j = 1; j <= n; ++j)
        js.push_back(j);
    return js;
}

void BM_GammaTableParallel(benchmark::State& state)
{
    const auto js = indices(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(gamma_table(orbit(), js));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_GammaTableSerial(benchmark::State& state)
{
    const auto js = indices(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(gamma_table_serial(orbit(), js));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SurfaceParallel(benchmark::State& state)
{
    const BranchAtlas atlas = assemble_atlas(5, gamma(orbit(), 5.0).gamma_j);
    const int nx = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(sample_surface(orbit(), atlas, 0, 0.05, nx, 32));
}

void BM_SurfaceSerial(benchmark::State& state)
{
    const BranchAtlas atlas = assemble_atlas(5, gamma(orbit(), 5.0).gamma_j);
    const int nx = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(sample_surface_serial(orbit(), atlas, 0, 0.05, nx, 32));
}

} // namespace

BENCHMARK(BM_GammaTableParallel)->Arg(50)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GammaTableSerial)->Arg(50)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SurfaceParallel)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SurfaceSerial)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
