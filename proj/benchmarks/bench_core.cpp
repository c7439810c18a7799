#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "hexpdc/constants.hpp"
#include "hexpdc/ensemble.hpp"
#include "hexpdc/fock.hpp"
#include "hexpdc/mode_systems.hpp"

using namespace hexpdc;

static void BM_Bogoliubov(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> ug(0.0, 2.0), ud(-20.0, 20.0);
    for (auto _ : state) {
        const auto c = bogoliubov(ug(rng), std::sqrt(2.0), ud(rng), 0.7);
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_Bogoliubov);

static void BM_MismatchD(benchmark::State& state) {
    const auto models = builtin_litao3_e();
    const auto lattice = LatticeConfig::hexagonal(8.3e-6, 17e-12);
    const double omega_p = wavelength_to_omega(527.5e-9);
    const double omega_s = tune_signal_carrier(models, omega_p, lattice, 0.0, 0.62, 0.90);
    const DispersionSet disp{models, WaveTriplet::from_pump_signal(omega_p, omega_s)};
    const PumpConfig pump{-0.3 * lattice.G_x, 0.0, 0.010};
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> uq(-3e5, 3e5), uo(-2e13, 2e13);
    for (auto _ : state) {
        ModeCoordinate w{uq(rng), uq(rng), uo(rng), WaveRole::signal};
        benchmark::DoNotOptimize(mismatch_D(disp, lattice, pump, w, Branch::G01));
    }
}
BENCHMARK(BM_MismatchD);

static void BM_ThreeModeSolve(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_three_mode({0.0, 2.0, 1.0}, 0.5));
    }
}
BENCHMARK(BM_ThreeModeSolve);

static void BM_TmsvSplitState(benchmark::State& state) {
    const auto coeff = bogoliubov(1.0, std::sqrt(2.0), 0.0, 1.0);
    const auto amps = tmsv_amplitudes(coeff, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(split_idler_state(amps.c, static_cast<int>(state.range(0))));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TmsvSplitState)->Arg(20)->Arg(40)->Arg(60)->Complexity();

static void BM_PropagateStep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto lattice = LatticeConfig::hexagonal(8.3e-6, 17e-12);
    GridSpec grid{n, 4, n, 2.0 * M_PI / (lattice.G_x / 2.0), 4 * 20e-6, n * 0.2e-12};
    const double omega_p = wavelength_to_omega(527.5e-9);
    PropagationMedium medium{
        DispersionSet{builtin_toy(2.2, 2.15, 2.1),
                      WaveTriplet::from_pump_signal(omega_p, 0.78 * omega_p)},
        lattice, 0.010, 10.0, false};
    PumpPulse pulse;
    pulse.duration_fwhm = grid.T / 8.0;
    pulse.waist_x = grid.Lx / 5.0;
    pulse.waist_y = grid.Ly / 5.0;
    pulse.g0_lc = 1.0;
    FieldGrid fields(grid);
    fields.seed_vacuum(pulse, 1);
    Propagator prop(medium, grid, SpectralMask::full(grid));
    for (auto _ : state) {
        prop.nonlinear_step(fields, 1e-5);
        prop.linear_step(fields, 1e-5);
    }
    state.SetItemsProcessed(state.iterations() * grid.size());
}
BENCHMARK(BM_PropagateStep)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
