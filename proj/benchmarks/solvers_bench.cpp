#include <benchmark/benchmark.h>

#include "geolab/bergman.hpp"
#include "geolab/envelope.hpp"
#include "geolab/geodesic.hpp"
#include "geolab/samples.hpp"

namespace {

using namespace geolab;

std::pair<SymmetricPotential, SymmetricPotential> translate_pair(int nx, int nt) {
    const GridSpec g = GridSpec::make(GridSpec::default_radius, nx, nt);
    return {samples::fubini_study_potential(g),
            SymmetricPotential::sample(g, [](double x) { return fubini_study(x - 1.0); })};
}

void BM_GeodesicLegendre(benchmark::State& state) {
    const auto [a, b] = translate_pair(static_cast<int>(state.range(0)), 33);
    for (auto _ : state) benchmark::DoNotOptimize(geodesic_legendre(a, b));
}
BENCHMARK(BM_GeodesicLegendre)->Arg(1025)->Arg(4097)->Unit(benchmark::kMillisecond);

void BM_GeodesicHull(benchmark::State& state) {
    const auto [a, b] = translate_pair(static_cast<int>(state.range(0)), 33);
    for (auto _ : state) benchmark::DoNotOptimize(geodesic_hull(a, b));
}
BENCHMARK(BM_GeodesicHull)->Arg(1025)->Arg(4097)->Unit(benchmark::kMillisecond);

void BM_GeodesicSweep(benchmark::State& state) {
    const auto [a, b] = translate_pair(static_cast<int>(state.range(0)), 33);
    SweepOptions opt;
    opt.update = state.range(1) == 0 ? SweepUpdate::line_envelope : SweepUpdate::pointwise;
    for (auto _ : state) benchmark::DoNotOptimize(geodesic_sweep(a, b, opt));
}
BENCHMARK(BM_GeodesicSweep)->Args({257, 0})->Args({1025, 0})->Args({257, 1})->Unit(benchmark::kMillisecond);

void BM_PshEnvelope(benchmark::State& state) {
    const GridSpec g = GridSpec::make(GridSpec::default_radius, static_cast<int>(state.range(0)));
    samples::Rng rng(7);
    const ObstacleFamily family = samples::random_smooth_family(g, rng, 3, 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(psh_envelope(family));
}
BENCHMARK(BM_PshEnvelope)->Arg(1025)->Arg(16385)->Unit(benchmark::kMicrosecond);

void BM_BergmanDensity(benchmark::State& state) {
    const GridSpec g = GridSpec::make(GridSpec::default_radius, 2049);
    const auto psi = samples::fubini_study_potential(g);
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(bergman_density(psi, k));
}
BENCHMARK(BM_BergmanDensity)->Arg(25)->Arg(200)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
