#include <doctest.h>

#include <cmath>
#include <complex>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "hexpdc/constants.hpp"
#include "hexpdc/errors.hpp"
#include "hexpdc/fock.hpp"
#include "hexpdc/mode_systems.hpp"

using namespace hexpdc;

namespace {
BogoliubovCoefficients coeff_for_r(double r) {
    // gamma = 1, D = 0: squeeze parameter equals g0*l_c
    return bogoliubov(r, 1.0, 0.0, 1.0);
}
}  // namespace

TEST_CASE("vacuum amplitudes at zero gain") {
    const auto amps = tmsv_amplitudes(coeff_for_r(0.0), 10);
    CHECK(std::abs(amps.c[0] - 1.0) < 1e-14);
    for (int N = 1; N <= 10; ++N) CHECK(std::abs(amps.c[N]) == doctest::Approx(0.0));
    CHECK(amps.norm_deficit == doctest::Approx(0.0));
}

TEST_CASE("geometric thermal law: |c_{N+1}/c_N| = tanh r") {
    const double r = 0.8;
    const auto amps = tmsv_amplitudes(coeff_for_r(r), 20);
    for (int N = 0; N < 20; ++N)
        CHECK(std::abs(amps.c[N + 1] / amps.c[N]) == doctest::Approx(std::tanh(r)).epsilon(1e-12));
}

TEST_CASE("norm sum matches the closed-form geometric series") {
    const double r = 1.0;
    const auto amps = tmsv_amplitudes(coeff_for_r(r), 50);
    double sum = 0.0;
    for (const auto& c : amps.c) sum += std::norm(c);
    CHECK(sum == doctest::Approx(1.0 - std::pow(std::tanh(r), 102)).epsilon(1e-12));
    CHECK(amps.norm_deficit == doctest::Approx(std::pow(std::tanh(r), 102)).epsilon(1e-12));
}

TEST_CASE("split state: the N = 1 sector is the balanced superposition") {
    const auto amps = tmsv_amplitudes(coeff_for_r(0.6), 12);
    const auto st = split_idler_state(amps.c, 12);
    const auto a01 = st.at({1, 0, 1});
    const auto a10 = st.at({1, 1, 0});
    CHECK(std::abs(a01 - a10) < 1e-14);
    CHECK(std::abs(a01) == doctest::Approx(std::abs(amps.c[1]) / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("split state: pair production parity (signal count = i1 + i2 count)") {
    const int Nmax = 8;
    const auto amps = tmsv_amplitudes(coeff_for_r(0.9), Nmax);
    const auto st = split_idler_state(amps.c, Nmax);
    for (int N = 0; N <= Nmax; ++N)
        for (int k1 = 0; k1 <= Nmax; ++k1)
            for (int k2 = 0; k2 <= Nmax; ++k2)
                if (k1 + k2 != N) CHECK(std::abs(st.at({N, k1, k2})) == doctest::Approx(0.0));
}

TEST_CASE("split state: idler marginal within an N sector is Binomial(N, 1/2)") {
    const int Nmax = 10;
    const auto amps = tmsv_amplitudes(coeff_for_r(0.7), Nmax);
    const auto st = split_idler_state(amps.c, Nmax);
    for (int N : {2, 5, 10}) {
        const auto exact = conditional_distribution_exact(N);
        const double PN = std::norm(amps.c[N]);
        for (int k = 0; k <= N; ++k) {
            const double p = std::norm(st.at({N, k, N - k}));
            const double expect =
                PN * static_cast<double>(exact[k].first) / static_cast<double>(exact[k].second);
            CHECK(p == doctest::Approx(expect).epsilon(1e-11));
        }
    }
}

TEST_CASE("conditioning on one signal photon gives the path-entangled state") {
    const auto amps = tmsv_amplitudes(coeff_for_r(1.1), 30);
    const auto st = split_idler_state(amps.c, 30);
    const auto cond = condition_on_signal(st, 1);
    CHECK(std::abs(cond.at({0, 1}) - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(cond.at({1, 0}) - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(cond.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("conditioning on two signal photons: amplitudes (1/2, 1/sqrt2, 1/2)") {
    const auto amps = tmsv_amplitudes(coeff_for_r(0.9), 30);
    const auto st = split_idler_state(amps.c, 30);
    const auto cond = condition_on_signal(st, 2);
    CHECK(std::abs(cond.at({2, 0})) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(cond.at({1, 1})) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::abs(cond.at({0, 2})) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("conditioned photon-number difference variance equals N") {
    const auto amps = tmsv_amplitudes(coeff_for_r(1.0), 40);
    const auto st = split_idler_state(amps.c, 40);
    for (int N : {1, 4, 9, 16}) {
        const auto cond = condition_on_signal(st, N);
        // Var(k1 - k2) = Var(2k - N) = 4 Var(k); brute-force over amplitudes
        double m1 = 0.0, m2 = 0.0;
        for (int k = 0; k <= N; ++k) {
            const double p = std::norm(cond.at({k, N - k}));
            const double diff = 2.0 * k - N;
            m1 += diff * p;
            m2 += diff * diff * p;
        }
        CHECK(m1 == doctest::Approx(0.0));
        CHECK(m2 - m1 * m1 == doctest::Approx(static_cast<double>(N)).epsilon(1e-10));
    }
}

TEST_CASE("conditioned states are normalized") {
    const auto amps = tmsv_amplitudes(coeff_for_r(1.3), 40);
    const auto st = split_idler_state(amps.c, 40);
    for (int N : {0, 3, 7, 15})
        CHECK(condition_on_signal(st, N).norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero-probability conditioning raises an error") {
    const auto amps = tmsv_amplitudes(coeff_for_r(0.0), 10);  // vacuum
    const auto st = split_idler_state(amps.c, 10);
    CHECK_THROWS_AS(condition_on_signal(st, 1), ConditioningError);
    CHECK_THROWS_AS(condition_on_signal(st, 11), ConditioningError);
}

TEST_CASE("exact rational conditional distribution is Binomial(N, 1/2) for N <= 20") {
    for (int N = 0; N <= 20; ++N) {
        const auto exact = conditional_distribution_exact(N);
        // exact integer identities: numerators are the Pascal row and sum to 2^N
        std::uint64_t sum = 0;
        std::uint64_t C = 1;  // C(N, 0)
        for (int k = 0; k <= N; ++k) {
            CHECK(exact[k].first == C);
            CHECK(exact[k].second == (std::uint64_t(1) << N));
            sum += exact[k].first;
            if (k < N) C = C * (N - k) / (k + 1);  // exact: product of consecutive ratios
        }
        CHECK(sum == (std::uint64_t(1) << N));
    }
}

TEST_CASE("floating-point conditional distribution matches the exact rationals") {
    const auto amps = tmsv_amplitudes(coeff_for_r(1.2), 40);
    const auto st = split_idler_state(amps.c, 40);
    for (int N : {1, 2, 5, 12, 20}) {
        const auto cond = condition_on_signal(st, N);
        const auto exact = conditional_distribution_exact(N);
        for (int k = 0; k <= N; ++k) {
            const double p = std::norm(cond.at({k, N - k}));
            const double pr =
                static_cast<double>(exact[k].first) / static_cast<double>(exact[k].second);
            CHECK(p == doctest::Approx(pr).epsilon(1e-12));
        }
    }
}

TEST_CASE("unconditioned idler pair: sector populations and PSD reduced state") {
    const int Nmax = 4;
    const auto amps = tmsv_amplitudes(coeff_for_r(0.8), Nmax);
    const auto st = split_idler_state(amps.c, Nmax);
    // signal marginal = |c_N|^2 (thermal-like)
    const auto marg = st.marginal_distribution(0);
    for (int N = 0; N <= Nmax; ++N)
        CHECK(marg[N] == doctest::Approx(std::norm(amps.c[N])).epsilon(1e-12));
    // reduced two-idler density matrix: rho = sum_N <N|psi><psi|N>
    const int d = Nmax + 1;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d * d, d * d);
    for (int N = 0; N <= Nmax; ++N)
        for (int k1 = 0; k1 <= Nmax; ++k1)
            for (int k2 = 0; k2 <= Nmax; ++k2)
                for (int l1 = 0; l1 <= Nmax; ++l1)
                    for (int l2 = 0; l2 <= Nmax; ++l2)
                        rho(k1 * d + k2, l1 * d + l2) +=
                            st.at({N, k1, k2}) * std::conj(st.at({N, l1, l2}));
    // no coherence between different total-photon-number sectors
    for (int k1 = 0; k1 <= Nmax; ++k1)
        for (int k2 = 0; k2 <= Nmax; ++k2)
            for (int l1 = 0; l1 <= Nmax; ++l1)
                for (int l2 = 0; l2 <= Nmax; ++l2)
                    if (k1 + k2 != l1 + l2)
                        CHECK(std::abs(rho(k1 * d + k2, l1 * d + l2)) < 1e-14);
    // positive semidefinite
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    CHECK(es.eigenvalues().minCoeff() > -1e-12);
}

TEST_CASE("spontaneous four-mode state carries three equal pair amplitudes") {
    const auto res = spontaneous_four_mode_state(0.01, 0.0, 1.0);
    CHECK(res.perturbative);
    const auto& st = res.state;
    const auto a1 = st.at({1, 0, 0, 1});  // b_s c_i
    const auto a2 = st.at({1, 0, 1, 0});  // b_s b_i
    const auto a3 = st.at({0, 1, 1, 0});  // c_s b_i
    CHECK(std::abs(a1 - a2) < 1e-15);
    CHECK(std::abs(a2 - a3) < 1e-15);
    CHECK(std::abs(a1) == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(std::abs(st.at({0, 1, 0, 1})) == doctest::Approx(0.0));  // c_s c_i exactly zero
    CHECK(std::abs(st.at({0, 0, 0, 0}) - 1.0) < 1e-15);
}

TEST_CASE("spontaneous four-mode populations: b modes twice the c modes") {
    const auto res = spontaneous_four_mode_state(0.02, 0.5, 1.0);
    const auto& st = res.state;
    // first-order populations from the unnormalized amplitudes
    double nb = 0.0, nc = 0.0;
    for (int cs = 0; cs < 2; ++cs)
        for (int bi = 0; bi < 2; ++bi)
            for (int ci = 0; ci < 2; ++ci) {
                nb += std::norm(st.at({1, cs, bi, ci}));
                nc += std::norm(st.at({cs, 1, bi, ci}));
            }
    CHECK(nb == doctest::Approx(2.0 * nc).epsilon(1e-12));
}

TEST_CASE("spontaneous amplitudes vanish at the sinc node D l_c = 2 pi") {
    const auto res = spontaneous_four_mode_state(0.01, 2.0 * M_PI, 1.0);
    CHECK(std::abs(res.state.at({1, 0, 1, 0})) < 1e-17);
}

TEST_CASE("above the perturbative bound the flag drops but the state is kept") {
    const auto res = spontaneous_four_mode_state(0.2, 0.0, 1.0);
    CHECK(!res.perturbative);
    CHECK(std::abs(res.state.at({1, 0, 1, 0})) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("spontaneous amplitude phase matches g0l sinc e^{-iDl/2}") {
    const double g0l = 0.03, D = 1.7, lc = 1.0;
    const auto res = spontaneous_four_mode_state(g0l, D, lc);
    const double x = 0.5 * D * lc;
    const std::complex<double> expect =
        g0l * (std::sin(x) / x) * std::exp(std::complex<double>(0.0, -x));
    CHECK(std::abs(res.state.at({1, 0, 1, 0}) - expect) < 1e-15);
    // first-order consistency with the Bogoliubov V at gamma = 1
    const auto c = bogoliubov(g0l, 1.0, D, lc);
    CHECK(std::abs(res.state.at({1, 0, 1, 0}) - c.V) < 1e-3 * std::abs(c.V));
}

TEST_CASE("fock moments agree with the Gaussian layer") {
    // truncated sums alone reach 1e-9 at r = 1.0
    {
        const double r = 1.0;
        const auto amps = tmsv_amplitudes(coeff_for_r(r), 60);
        const auto st = split_idler_state(amps.c, 60);
        const double n_expect = std::sinh(r) * std::sinh(r);
        CHECK(std::abs(st.mean_photon_number(0) - n_expect) < 1e-9);
        CHECK(std::abs(st.photon_number_variance(0) - (n_expect + n_expect * n_expect)) < 1e-8);
        CHECK(std::abs(st.mean_photon_number(1) - 0.5 * n_expect) < 1e-9);
    }
    // with the analytic geometric tail the agreement holds through r = 1.5
    for (double r : {0.5, 1.0, 1.25, 1.5}) {
        const auto coeff = coeff_for_r(r);
        const auto amps = tmsv_amplitudes(coeff, 60);
        const double t2 = std::pow(std::abs(coeff.V) / std::abs(coeff.U), 2);
        const auto m = tmsv_moments(amps, t2);
        const double n = std::sinh(r) * std::sinh(r);
        CHECK(std::abs(m.mean_signal - n) < 1e-6);
        CHECK(std::abs(m.var_signal - (n + n * n)) < 1e-6 * (1 + n + n * n));
        CHECK(std::abs(m.mean_split_idler - 0.5 * n) < 1e-6);
        // Gaussian layer: Var(n_i1) = n/2 + n^2/4
        CHECK(std::abs(m.var_split_idler - (0.5 * n + 0.25 * n * n)) <
              1e-6 * (1 + 0.5 * n + 0.25 * n * n));
    }
}

TEST_CASE("fock state container basics") {
    TruncatedFockState st({"a", "b"}, {3, 2});
    st.at({2, 1}) = {0.5, 0.0};
    st.at({0, 0}) = {0.5, 0.5};
    CHECK(st.norm_squared() == doctest::Approx(0.75));
    CHECK_THROWS_AS(st.at({3, 0}), std::out_of_range);
    CHECK_THROWS_AS(st.at({0}), std::invalid_argument);
    CHECK_THROWS_AS(TruncatedFockState({"a"}, {0}), std::invalid_argument);
}
