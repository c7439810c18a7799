#include <cmath>
#include <cstdio>
#include <random>

#include "hexpdc/constants.hpp"
#include "hexpdc/fock.hpp"
#include "hexpdc/mode_systems.hpp"

// Fast analytic subset of the acceptance checks, wired into the CLI so a
// deployed binary can prove its own numerics (exit code 4 on failure).
int hexpdc_selfcheck(bool verbose) {
    using namespace hexpdc;
    int failures = 0;
    auto check = [&](bool ok, const char* name) {
        if (!ok) ++failures;
        if (verbose || !ok) std::printf("[%s] %s\n", ok ? "ok" : "FAIL", name);
    };

    {
        std::mt19937_64 rng(12345);
        std::uniform_real_distribution<double> ug(0.0, 2.0), ud(-20.0, 20.0), ul(0.1, 1.0);
        const double gammas[4] = {1.0, std::sqrt(2.0), kGoldenRatio, -1.0 / kGoldenRatio};
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const auto c = bogoliubov(ug(rng), gammas[i % 4], ud(rng), ul(rng));
            worst = std::max(worst, std::abs(std::norm(c.U) - std::norm(c.V) - 1.0));
        }
        check(worst < 1e-12, "Bogoliubov canonicality |U|^2-|V|^2 = 1");
    }
    {
        PumpConfig pump{0.0, 2.0, 1.0};
        const auto a = solve_three_mode(pump, 1.0);
        const auto o = integrate_ode_oracle(ModeSystem::three_mode, pump, 1.0, 10000);
        const double diff = (a.covariance() - o.covariance()).cwiseAbs().maxCoeff();
        check(diff < 1e-8, "3-mode analytic vs covariance ODE");
    }
    {
        PumpConfig pump{0.0, 3.0, 1.0};
        const auto a = solve_four_mode_resonant(pump, 0.0);
        const auto o = integrate_ode_oracle(ModeSystem::four_mode, pump, 0.0, 10000);
        const double diff = (a.covariance() - o.covariance()).cwiseAbs().maxCoeff();
        check(diff < 1e-8, "4-mode analytic vs covariance ODE");
    }
    {
        PumpConfig lo{0.0, 1e-3, 1.0}, hi{0.0, 5.0, 1.0};
        const auto sl = solve_four_mode_resonant(lo, 0.0);
        const auto sh = solve_four_mode_resonant(hi, 0.0);
        const double r_lo = sl.mean_photon_number(0) / sl.mean_photon_number(1);
        const double r_hi = sh.mean_photon_number(0) / sh.mean_photon_number(1);
        check(std::abs(r_lo - 2.0) < 1e-4, "spontaneous intensity ratio -> 2");
        check(std::abs(r_hi - kGoldenRatio * kGoldenRatio) < 1e-3,
              "stimulated intensity ratio -> phi^2");
    }
    {
        const auto traj = quadrature_fibonacci(20.0, 4000);
        check(std::abs(traj.final_ratio - kGoldenRatio) < 1e-8, "B/C -> phi at z = 20");
        const auto seq = fibonacci_integers(8);
        check(seq[6].F == 13 && seq[5].F == 8, "integer Fibonacci sequence");
    }
    {
        const auto c = bogoliubov(1.0, std::sqrt(2.0), 0.0, 1.0);
        const auto amps = tmsv_amplitudes(c, 40);
        const auto split = split_idler_state(amps.c, 40);
        const auto cond = condition_on_signal(split, 1);
        const double a01 = std::abs(cond.at({0, 1}));
        const double a10 = std::abs(cond.at({1, 0}));
        check(std::abs(a01 - 1.0 / std::sqrt(2.0)) < 1e-12 && std::abs(a10 - a01) < 1e-12,
              "N = 1 conditional path-entangled state");
    }
    if (failures) std::printf("%d selfcheck failure(s)\n", failures);
    else if (verbose) std::printf("all selfchecks passed\n");
    return failures;
}
