#include <benchmark/benchmark.h>

#include "nanoeit/modes.hpp"
#include "nanoeit/oracle.hpp"
#include "nanoeit/response.hpp"

namespace {

using namespace nanoeit;

SystemParams dual_system() {
    return SystemParams::dual(0.05, {1.0, 1e-7}, 0.03, {1.5, 1e-7}, 0.05, 20, 1.0);
}

void BM_ScanSpectrum(benchmark::State& state) {
    const SystemParams s = dual_system();
    const MaterialParams mat = default_material();
    const FrequencyGrid grid{0.5, 2.0, static_cast<int>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(scan_spectrum(s, mat, grid));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ScanSpectrum)->Arg(3001)->Arg(30001);

void BM_FeatureExtraction(benchmark::State& state) {
    const Spectrum sp = scan_spectrum(dual_system(), default_material(), FrequencyGrid{0.5, 2.0, 3001});
    for (auto _ : state) {
        const auto peaks = find_peaks(sp);
        benchmark::DoNotOptimize(find_windows(sp, peaks));
    }
}
BENCHMARK(BM_FeatureExtraction);

void BM_Eigenfrequencies(benchmark::State& state) {
    const SystemParams s = dual_system();
    for (auto _ : state) benchmark::DoNotOptimize(eigenfrequencies(s));
}
BENCHMARK(BM_Eigenfrequencies);

void BM_ExactSpectrum(benchmark::State& state) {
    ExactModel m;
    m.n_spins = static_cast<int>(state.range(0));
    m.resonator_omega = {1.0};
    m.couplings = {0.05};
    m.boson_cutoff = 7;
    for (auto _ : state) benchmark::DoNotOptimize(exact_spectrum(m));
}
BENCHMARK(BM_ExactSpectrum)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_TimeDomainAmplitude(benchmark::State& state) {
    const SystemParams s = dual_system().with_damping_floor(1e-4);
    for (auto _ : state) benchmark::DoNotOptimize(time_domain_amplitude(s, 1.0));
}
BENCHMARK(BM_TimeDomainAmplitude)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
