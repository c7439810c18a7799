#include "hexpdc/mode_systems.hpp"

#include <cmath>
#include <stdexcept>

#include "hexpdc/constants.hpp"

namespace hexpdc {

GaussianModeState solve_three_mode(const PumpConfig& pump, double D) {
    pump.validate();
    const auto coeff = bogoliubov(pump.g0, std::sqrt(2.0), D, pump.l_c);

    // internal ordering [s0, i+, i-]
    auto state = GaussianModeState::vacuum({"s0", "i1", "i2"});
    state.apply_symplectic(embed_two_mode(two_mode_squeezer_symplectic(coeff.U, coeff.V), 3, 0, 1));

    Eigen::Matrix2d back;  // a_i1 = (a_+ + a_-)/sqrt2, a_i2 = (a_+ - a_-)/sqrt2
    back << 1.0, 1.0, 1.0, -1.0;
    back /= std::sqrt(2.0);
    state.apply_symplectic(mode_mixer_symplectic(back, 3, 1, 2));
    return state;
}

GaussianModeState solve_four_mode_resonant(const PumpConfig& pump, double D) {
    pump.validate();
    const double phi = kGoldenRatio;
    const auto sigma = bogoliubov(pump.g0, phi, D, pump.l_c);
    const auto delta = bogoliubov(pump.g0, -1.0 / phi, D, pump.l_c);

    // internal ordering [sigma_s, delta_s, sigma_i, delta_i]
    auto state = GaussianModeState::vacuum({"b_s", "c_s", "b_i", "c_i"});
    state.apply_symplectic(embed_two_mode(two_mode_squeezer_symplectic(sigma.U, sigma.V), 4, 0, 2));
    state.apply_symplectic(embed_two_mode(two_mode_squeezer_symplectic(delta.U, delta.V), 4, 1, 3));

    const GoldenRatioSplit g;
    Eigen::Matrix2d back;  // b = r sigma + t delta ; c = t sigma - r delta
    back << g.r, g.t, g.t, -g.r;
    state.apply_symplectic(mode_mixer_symplectic(back, 4, 0, 1));
    state.apply_symplectic(mode_mixer_symplectic(back, 4, 2, 3));
    return state;
}

Eigen::MatrixXd coupling_matrix(ModeSystem system) {
    if (system == ModeSystem::three_mode) {
        Eigen::MatrixXd c(3, 3);
        c << 0, 1, 1,
             1, 0, 0,
             1, 0, 0;
        return c;
    }
    Eigen::MatrixXd c(4, 4);  // [b_s, c_s, b_i, c_i]
    c << 0, 0, 1, 1,
         0, 0, 1, 0,
         1, 1, 0, 0,
         1, 0, 0, 0;
    return c;
}

namespace {

/// K(z) of dR/dz = K R for the quadrature vector R = (x1,p1,...) implied by
/// d a_j/dz = f(z) sum_k c_jk a_k^dag with f = g0 e^{-iDz}.
Eigen::MatrixXd quadrature_generator(const Eigen::MatrixXd& c, double g0, double D, double z) {
    const int n = static_cast<int>(c.rows());
    const double fr = g0 * std::cos(D * z);
    const double fi = -g0 * std::sin(D * z);
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            if (c(j, k) == 0.0) continue;
            K(2 * j, 2 * k) += c(j, k) * fr;
            K(2 * j, 2 * k + 1) += c(j, k) * fi;
            K(2 * j + 1, 2 * k) += c(j, k) * fi;
            K(2 * j + 1, 2 * k + 1) -= c(j, k) * fr;
        }
    return K;
}

}  // namespace

GaussianModeState integrate_ode_oracle(ModeSystem system, const PumpConfig& pump, double D,
                                       int steps) {
    if (steps < 1) throw std::invalid_argument("integrate_ode_oracle: steps must be >= 1");
    pump.validate();
    const Eigen::MatrixXd c = coupling_matrix(system);
    auto state = (system == ModeSystem::three_mode)
                     ? GaussianModeState::vacuum({"s0", "i1", "i2"})
                     : GaussianModeState::vacuum({"b_s", "c_s", "b_i", "c_i"});
    Eigen::MatrixXd Sigma = state.covariance();
    const double h = pump.l_c / steps;

    auto rhs = [&](double z, const Eigen::MatrixXd& S) {
        const Eigen::MatrixXd K = quadrature_generator(c, pump.g0, D, z);
        return Eigen::MatrixXd(K * S + S * K.transpose());
    };
    double z = 0.0;
    for (int i = 0; i < steps; ++i) {
        const Eigen::MatrixXd k1 = rhs(z, Sigma);
        const Eigen::MatrixXd k2 = rhs(z + 0.5 * h, Sigma + 0.5 * h * k1);
        const Eigen::MatrixXd k3 = rhs(z + 0.5 * h, Sigma + 0.5 * h * k2);
        const Eigen::MatrixXd k4 = rhs(z + h, Sigma + h * k3);
        Sigma += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        z += h;
    }
    state.covariance() = Sigma;
    return state;
}

Eigen::MatrixXd golden_decoupled_coupling(double g0) {
    const GoldenRatioSplit g;
    const Eigen::MatrixXd c4 = g0 * coupling_matrix(ModeSystem::four_mode);
    // (delta_j, sigma_j) = T (b_j, c_j), T rows are the eigenvectors of the
    // 2x2 Fibonacci block [[1,1],[1,0]]
    Eigen::Matrix2d T;
    T << g.t, -g.r,
         g.r, g.t;
    Eigen::MatrixXd TT = Eigen::MatrixXd::Zero(4, 4);
    TT.block<2, 2>(0, 0) = T;  // acts on (b_s, c_s)
    TT.block<2, 2>(2, 2) = T;  // acts on (b_i, c_i)
    Eigen::MatrixXd conj = TT * c4 * TT.transpose();
    // permute [delta_s, sigma_s, delta_i, sigma_i] -> [delta_s, delta_i, sigma_s, sigma_i]
    Eigen::Vector4i perm(0, 2, 1, 3);
    Eigen::MatrixXd out(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out(i, j) = conj(perm(i), perm(j));
    return out;
}

FibonacciTrajectory quadrature_fibonacci(double z_max, int steps, double B0, double C0) {
    if (steps < 1) throw std::invalid_argument("quadrature_fibonacci: steps must be >= 1");
    FibonacciTrajectory out;
    out.z.resize(steps + 1);
    out.B.resize(steps + 1);
    out.C.resize(steps + 1);
    out.B_recursion.resize(steps + 1);
    const double h = z_max / steps;

    // RK4 on dB = B + C, dC = B
    double B = B0, C = C0;
    out.z[0] = 0.0;
    out.B[0] = B;
    out.C[0] = C;
    for (int i = 0; i < steps; ++i) {
        auto f = [](double b, double c) { return std::pair<double, double>{b + c, b}; };
        auto [k1b, k1c] = f(B, C);
        auto [k2b, k2c] = f(B + 0.5 * h * k1b, C + 0.5 * h * k1c);
        auto [k3b, k3c] = f(B + 0.5 * h * k2b, C + 0.5 * h * k2c);
        auto [k4b, k4c] = f(B + h * k3b, C + h * k3c);
        B += h / 6.0 * (k1b + 2 * k2b + 2 * k3b + k4b);
        C += h / 6.0 * (k1c + 2 * k2c + 2 * k3c + k4c);
        out.z[i + 1] = (i + 1) * h;
        out.B[i + 1] = B;
        out.C[i + 1] = C;
    }
    out.final_ratio = B / C;

    // discrete layer: forward Euler is B_{n+1} = (1+dz) B_n + dz C_n,
    // C_{n+1} = C_n + dz B_n, which collapses to the two-term recursion below
    out.B_recursion[0] = B0;
    if (steps >= 1) out.B_recursion[1] = (1.0 + h) * B0 + h * C0;
    for (int n = 1; n < steps; ++n)
        out.B_recursion[n + 1] =
            (2.0 + h) * out.B_recursion[n] + (h * h - 1.0 - h) * out.B_recursion[n - 1];

    out.eigenvalues = Eigen::Vector2d(kGoldenRatio, -1.0 / kGoldenRatio);
    return out;
}

std::vector<FibonacciPair> fibonacci_integers(int n_terms, std::uint64_t F0, std::uint64_t N0) {
    std::vector<FibonacciPair> seq;
    seq.reserve(n_terms);
    std::uint64_t F = F0, N = N0;
    for (int i = 0; i < n_terms; ++i) {
        seq.push_back({F, N});
        const std::uint64_t Fn = F + N;
        N = F;
        F = Fn;
    }
    return seq;
}

}  // namespace hexpdc
