#pragma once

#include <cstdint>
#include <vector>

#include "hexpdc/gaussian_state.hpp"
#include "hexpdc/qpm.hpp"

namespace hexpdc {

/// Three coupled modes away from superresonance: the shared signal s0 and
/// its two idlers i1, i2 at -/+ G_x. Built as a two-mode squeezer with
/// gamma = sqrt(2) on (s0, i+), identity on i-, then the 50:50 splitter
/// a_{i1,2} = (a_{i+} +/- a_{i-})/sqrt(2). Labels: [s0, i1, i2].
GaussianModeState solve_three_mode(const PumpConfig& pump, double D);

/// Four coupled modes at superresonance q_p = +/- G_x (caller enforces; the
/// dynamics depends on D only). Two independent squeezers with gamma = phi on
/// (sigma_s, sigma_i) and gamma = -1/phi on (delta_s, delta_i), then the
/// golden splitter b_j = t delta_j + r sigma_j, c_j = -r delta_j + t sigma_j.
/// Labels: [b_s, c_s, b_i, c_i].
GaussianModeState solve_four_mode_resonant(const PumpConfig& pump, double D);

enum class ModeSystem { three_mode, four_mode };

/// Coupling pattern of the linear mode equations
/// d a_j / dz = g0 e^{-iDz} sum_k c_{jk} a_k^dag, in the analytic modules'
/// mode ordering ([s0,i1,i2] resp. [b_s,c_s,b_i,c_i]).
Eigen::MatrixXd coupling_matrix(ModeSystem system);

/// Independent verification oracle: integrates the covariance evolution
/// dSigma/dz = K(z) Sigma + Sigma K(z)^T implied by the mode equations with a
/// classic 4th-order Runge-Kutta scheme, no canonical-transformation
/// shortcut. steps >= 1.
GaussianModeState integrate_ode_oracle(ModeSystem system, const PumpConfig& pump, double D,
                                       int steps);

/// Conjugating the four-mode coupling matrix with the golden transformation
/// (per (b,c) pair) and permuting to [delta_s, delta_i, sigma_s, sigma_i]
/// ordering. Exactly block diagonal: the delta block couples with -g0/phi,
/// the sigma block with +g0*phi.
Eigen::MatrixXd golden_decoupled_coupling(double g0);

/// Quadrature model of the resonant four-mode amplitudes:
///   dB/dz = B + C,  dC/dz = B   (z normalized to 1/g0)
/// with eigenvalues phi and -1/phi. Also carries the Fibonacci-like discrete
/// recursion B_{n+1} = (2 + dz) B_n + (dz^2 - 1 - dz) B_{n-1} obtained from
/// the forward-Euler discretization of the same system.
struct FibonacciTrajectory {
    std::vector<double> z;        // normalized z values
    std::vector<double> B;
    std::vector<double> C;
    std::vector<double> B_recursion;  // same z grid, discrete recursion
    double final_ratio;           // B/C at z_max
    Eigen::Vector2d eigenvalues;  // {phi, -1/phi}
};

FibonacciTrajectory quadrature_fibonacci(double z_max, int steps, double B0 = 1.0, double C0 = 0.0);

/// The classic rabbit-population recursion F_{n+1} = F_n + N_n, N_{n+1} = F_n.
/// Index 0 holds the initial pair (F0, N0) = (1, 0).
struct FibonacciPair {
    std::uint64_t F;
    std::uint64_t N;
};
std::vector<FibonacciPair> fibonacci_integers(int n_terms, std::uint64_t F0 = 1,
                                              std::uint64_t N0 = 0);

}  // namespace hexpdc
