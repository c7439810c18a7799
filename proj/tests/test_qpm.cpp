#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "hexpdc/constants.hpp"
#include "hexpdc/errors.hpp"
#include "hexpdc/qpm.hpp"

using namespace hexpdc;

namespace {

struct Setup {
    SellmeierSet models;
    LatticeConfig lattice;
    DispersionSet disp;
    PumpConfig pump;
};

Setup litao3_setup(double q_p_over_Gx) {
    Setup s;
    s.models = builtin_litao3_e();
    s.lattice = LatticeConfig::hexagonal(8.3e-6, 17e-12);
    const double omega_p = wavelength_to_omega(527.5e-9);
    const double q_p = q_p_over_Gx * s.lattice.G_x;
    const double omega_s = tune_signal_carrier(s.models, omega_p, s.lattice, q_p, 0.62, 0.90);
    s.disp = DispersionSet{s.models, WaveTriplet::from_pump_signal(omega_p, omega_s)};
    s.pump = PumpConfig{q_p, 0.0, 0.010};
    return s;
}

Setup toy_setup(double q_p) {
    Setup s;
    s.models = builtin_toy(2.2, 2.15, 2.1);
    s.lattice = LatticeConfig::hexagonal(8.3e-6, 17e-12);
    const double omega_p = wavelength_to_omega(527.5e-9);
    // 0.78/0.22 split keeps k_s + k_i above k_p - G_z so QPM closes at a
    // transverse q_y root reachable on the scan grid
    s.disp = DispersionSet{s.models, WaveTriplet::from_pump_signal(omega_p, 0.78 * omega_p)};
    s.pump = PumpConfig{q_p, 0.0, 0.010};
    return s;
}

}  // namespace

TEST_CASE("lattice constructor ties G_x, G_z, d01 to the poling period") {
    const auto lat = LatticeConfig::hexagonal(8.3e-6, 17e-12);
    CHECK(lat.G_z == doctest::Approx(2 * M_PI / 8.3e-6).epsilon(1e-14));
    CHECK(lat.G_x == doctest::Approx(lat.G_z / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(lat.d01 == doctest::Approx(0.29 * 17e-12).epsilon(1e-14));
    CHECK_NOTHROW(lat.validate());
    LatticeConfig broken = lat;
    broken.G_x *= 1.01;
    broken.d33 = 0.0;
    try {
        broken.validate();
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.failures.size() == 2);  // both violations reported at once
    }
}

TEST_CASE("mismatch_D matches a from-scratch evaluation of the QPM function") {
    const auto s = litao3_setup(-0.3);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uq(-3e5, 3e5), uo(-2e13, 2e13);
    for (int i = 0; i < 100; ++i) {
        ModeCoordinate w{uq(rng), uq(rng), uo(rng), WaveRole::signal};
        for (Branch b : {Branch::G01, Branch::G10}) {
            const double kick = b == Branch::G01 ? -s.lattice.G_x : s.lattice.G_x;
            const double expect =
                s.disp.kz(WaveRole::signal, w.q_x, w.q_y, w.Omega) +
                s.disp.kz(WaveRole::idler, s.pump.q_p - w.q_x + kick, -w.q_y, -w.Omega) -
                s.disp.kz(WaveRole::pump, s.pump.q_p, 0.0, 0.0) + s.lattice.G_z;
            CHECK(mismatch_D(s.disp, s.lattice, s.pump, w, b) ==
                  doctest::Approx(expect).epsilon(1e-14));
        }
    }
}

TEST_CASE("constant-index toy model: hand-evaluated mismatch") {
    const auto s = toy_setup(-1.2e5);
    ModeCoordinate w{-1.2e5, 0.7e5, 1.5e13, WaveRole::signal};
    // independent evaluation in closed form: k_j = n_j (omega_j + Om)/c
    const double om_s = s.disp.carriers.omega_s, om_i = s.disp.carriers.omega_i,
                 om_p = s.disp.carriers.omega_p;
    auto kz_of = [](double n, double om, double qx, double qy) {
        const double k = n * om / kSpeedOfLight;
        return std::sqrt(k * k - qx * qx - qy * qy);
    };
    const double expect = kz_of(2.15, om_s + w.Omega, w.q_x, w.q_y) +
                          kz_of(2.1, om_i - w.Omega, s.pump.q_p - w.q_x - s.lattice.G_x, -w.q_y) -
                          kz_of(2.2, om_p, s.pump.q_p, 0.0) + s.lattice.G_z;
    CHECK(mismatch_D(s.disp, s.lattice, s.pump, w, Branch::G01) ==
          doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("at q_x = q_p both processes have the same mismatch") {
    const auto s = litao3_setup(-0.3);
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> uq(-3e5, 3e5), uo(-2e13, 2e13);
    for (int i = 0; i < 100; ++i) {
        ModeCoordinate w{s.pump.q_p, uq(rng), uo(rng), WaveRole::signal};
        const double d1 = mismatch_D(s.disp, s.lattice, s.pump, w, Branch::G01);
        const double d2 = mismatch_D(s.disp, s.lattice, s.pump, w, Branch::G10);
        CHECK(d1 == doctest::Approx(d2).epsilon(1e-13));
    }
}

TEST_CASE("mirror symmetry about the lattice axis") {
    // For an axial pump the map q_x -> -q_x swaps the two branches exactly.
    const auto s = litao3_setup(0.0);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uq(-3e5, 3e5), uo(-2e13, 2e13);
    for (int i = 0; i < 100; ++i) {
        ModeCoordinate w{uq(rng), uq(rng), uo(rng), WaveRole::signal};
        ModeCoordinate wm{-w.q_x, w.q_y, w.Omega, WaveRole::signal};
        CHECK(mismatch_D(s.disp, s.lattice, s.pump, w, Branch::G01) ==
              doctest::Approx(mismatch_D(s.disp, s.lattice, s.pump, wm, Branch::G10))
                  .epsilon(1e-13));
    }
    // With a tilted pump the exact statement reflects the tilt as well:
    // D_1(q_x; q_p) = D_2(-q_x; -q_p).
    const auto st = litao3_setup(-0.3);
    auto flipped = st;
    flipped.pump.q_p = -st.pump.q_p;
    for (int i = 0; i < 100; ++i) {
        ModeCoordinate w{uq(rng), uq(rng), uo(rng), WaveRole::signal};
        ModeCoordinate wm{-w.q_x, w.q_y, w.Omega, WaveRole::signal};
        CHECK(mismatch_D(st.disp, st.lattice, st.pump, w, Branch::G01) ==
              doctest::Approx(mismatch_D(flipped.disp, flipped.lattice, flipped.pump, wm,
                                         Branch::G10))
                  .epsilon(1e-13));
    }
}

TEST_CASE("full mismatch reduces to the parametric limit at w_p = (q_p, 0, 0)") {
    const auto s = litao3_setup(-0.3);
    ModeCoordinate w_p{s.pump.q_p, 0.0, 0.0, WaveRole::pump};
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> uq(-3e5, 3e5), uo(-2e13, 2e13);
    for (int i = 0; i < 50; ++i) {
        ModeCoordinate w{uq(rng), uq(rng), uo(rng), WaveRole::signal};
        for (Branch b : {Branch::G01, Branch::G10})
            CHECK(full_mismatch_DD(s.disp, s.lattice, w, w_p, b) ==
                  doctest::Approx(mismatch_D(s.disp, s.lattice, s.pump, w, b)).epsilon(1e-14));
    }
}

TEST_CASE("full mismatch is symmetric under the signal/idler relabeling") {
    // DD_1(w_s, w_p) evaluated with the conjugate coordinate
    // w_i = w_p - w_s - G_x e_x as the scanned (idler-role) mode gives the
    // same value back (verified by direct evaluation on random points).
    const auto s = litao3_setup(-0.3);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> uq(-3e5, 3e5), uo(-1.5e13, 1.5e13);
    for (int i = 0; i < 100; ++i) {
        ModeCoordinate w{uq(rng), uq(rng), uo(rng), WaveRole::signal};
        ModeCoordinate w_p{uq(rng) * 0.1, uq(rng) * 0.1, uo(rng) * 0.1, WaveRole::pump};
        ModeCoordinate w_i{w_p.q_x - w.q_x - s.lattice.G_x, w_p.q_y - w.q_y, w_p.Omega - w.Omega,
                           WaveRole::idler};
        CHECK(full_mismatch_DD(s.disp, s.lattice, w, w_p, Branch::G01) ==
              doctest::Approx(full_mismatch_DD(s.disp, s.lattice, w_i, w_p, Branch::G01))
                  .epsilon(1e-13));
    }
}

TEST_CASE("toy-model collinear point has the closed-form value") {
    const auto s = toy_setup(0.0);
    ModeCoordinate w{0.0, 0.0, 0.0, WaveRole::signal};
    const double ks = 2.15 * s.disp.carriers.omega_s / kSpeedOfLight;
    const double ki_full = 2.1 * s.disp.carriers.omega_i / kSpeedOfLight;
    const double kiz = std::sqrt(ki_full * ki_full - s.lattice.G_x * s.lattice.G_x);
    const double kp = 2.2 * s.disp.carriers.omega_p / kSpeedOfLight;
    CHECK(mismatch_D(s.disp, s.lattice, s.pump, w, Branch::G01) ==
          doctest::Approx(ks + kiz - kp + s.lattice.G_z).epsilon(1e-14));
}

TEST_CASE("resonance detuning") {
    const auto lat = LatticeConfig::hexagonal(8.3e-6, 17e-12);
    CHECK(resonance_detuning({-lat.G_x, 0, 1}, lat) == doctest::Approx(0.0));
    CHECK(resonance_detuning({+lat.G_x, 0, 1}, lat) == doctest::Approx(0.0));
    CHECK(resonance_detuning({0.0, 0, 1}, lat) == doctest::Approx(1.0));
    CHECK(resonance_detuning({-0.3 * lat.G_x, 0, 1}, lat) == doctest::Approx(0.7));
}

TEST_CASE("carrier tuning zeroes the shared-mode mismatch at grid centre") {
    for (double qfrac : {0.0, -0.3, -1.0}) {
        const auto s = litao3_setup(qfrac);
        ModeCoordinate w{s.pump.q_p, 0.0, 0.0, WaveRole::signal};
        const double d = mismatch_D(s.disp, s.lattice, s.pump, w, Branch::G01);
        CHECK(std::abs(d) < 1e-6 * s.lattice.G_z);
        // tuned signal stays in the non-degenerate window
        const double lam_s = omega_to_wavelength(s.disp.carriers.omega_s) * 1e6;
        CHECK(lam_s > 0.62);
        CHECK(lam_s < 0.90);
    }
}

TEST_CASE("phase-matching curve: roots satisfy |D| < tol, deduplicated and sorted") {
    const auto s = litao3_setup(-0.3);
    CurveScan scan;
    scan.section_qx = s.pump.q_p;
    scan.omega_min = 1e12;
    scan.omega_max = 4e13;
    scan.omega_points = 32;
    scan.qy_min = -6e5;
    scan.qy_max = 6e5;
    const auto pts = phase_matching_curve(s.disp, s.lattice, s.pump, Branch::G01, scan);
    REQUIRE(!pts.empty());
    const double tol = 1e-6 * s.lattice.G_z;
    for (const auto& p : pts) {
        CHECK(p.residual < tol);
        ModeCoordinate w{s.pump.q_p, p.q_y, p.Omega, WaveRole::signal};
        CHECK(std::abs(mismatch_D(s.disp, s.lattice, s.pump, w, Branch::G01)) < tol);
    }
}

TEST_CASE("phase-matching curve: mirror symmetry in q_y and scan determinism") {
    const auto s = litao3_setup(-0.3);
    CurveScan scan;
    scan.section_qx = s.pump.q_p;
    scan.omega_min = 5e12;
    scan.omega_max = 3e13;
    scan.omega_points = 16;
    scan.qy_min = -6e5;
    scan.qy_max = 6e5;
    const auto pts = phase_matching_curve(s.disp, s.lattice, s.pump, Branch::G01, scan);
    REQUIRE(!pts.empty());
    // solution set invariant under q_y -> -q_y
    for (const auto& p : pts) {
        const bool has_mirror =
            std::any_of(pts.begin(), pts.end(), [&](const PhaseMatchPoint& q) {
                return q.Omega == p.Omega && std::abs(q.q_y + p.q_y) < 2e5 * 1e-3;
            });
        CHECK(has_mirror);
    }
    // reversing scan direction returns the same root set
    CurveScan rev = scan;
    std::swap(rev.omega_min, rev.omega_max);
    auto pts2 = phase_matching_curve(s.disp, s.lattice, s.pump, Branch::G01, rev);
    REQUIRE(pts2.size() == pts.size());
    auto key = [](const PhaseMatchPoint& p) { return std::pair(p.Omega, p.q_y); };
    std::vector<std::pair<double, double>> k1, k2;
    for (const auto& p : pts) k1.push_back(key(p));
    for (const auto& p : pts2) k2.push_back(key(p));
    std::sort(k1.begin(), k1.end());
    std::sort(k2.begin(), k2.end());
    for (std::size_t i = 0; i < k1.size(); ++i) {
        CHECK(k1[i].first == doctest::Approx(k2[i].first).epsilon(1e-12));
        CHECK(k1[i].second == doctest::Approx(k2[i].second).epsilon(1e-9));
    }
}

TEST_CASE("toy-model curve roots match the closed-form quadratic solution") {
    // constant indices: S + I = A with S^2 - I^2 = B gives
    // q_y^2 = k_s^2 - q_p^2 - ((A + B/A)/2)^2
    const auto s = toy_setup(-1.0e5);
    CurveScan scan;
    scan.section_qx = s.pump.q_p;
    scan.omega_min = -2e13;
    scan.omega_max = 2e13;
    scan.omega_points = 9;
    scan.qy_min = 0.0;
    scan.qy_max = 4e6;
    scan.qy_brackets = 4096;
    const auto pts = phase_matching_curve(s.disp, s.lattice, s.pump, Branch::G01, scan);
    REQUIRE(!pts.empty());
    for (const auto& p : pts) {
        const double ks = 2.15 * (s.disp.carriers.omega_s + p.Omega) / kSpeedOfLight;
        const double ki = 2.1 * (s.disp.carriers.omega_i - p.Omega) / kSpeedOfLight;
        const double kpz = std::sqrt(std::pow(2.2 * s.disp.carriers.omega_p / kSpeedOfLight, 2) -
                                     s.pump.q_p * s.pump.q_p);
        const double A = kpz - s.lattice.G_z;
        const double B = (ks * ks - s.pump.q_p * s.pump.q_p) -
                         (ki * ki - s.lattice.G_x * s.lattice.G_x);
        const double S = 0.5 * (A + B / A);
        const double qy2 = ks * ks - s.pump.q_p * s.pump.q_p - S * S;
        REQUIRE(qy2 >= 0.0);
        CHECK(std::abs(p.q_y) == doctest::Approx(std::sqrt(qy2)).epsilon(1e-9));
    }
}

TEST_CASE("shared modes sit at q_x = q_p with partners at -/+G_x") {
    const auto s = litao3_setup(-0.3);
    SharedModeScan scan;
    scan.omega_min = 2e12;
    scan.omega_max = 3e13;
    scan.omega_points = 12;
    scan.qy_min = -6e5;
    scan.qy_max = 6e5;
    const auto shared = shared_modes(s.disp, s.lattice, s.pump, scan);
    REQUIRE(!shared.empty());
    const double tol = 1e-6 * s.lattice.G_z;
    for (const auto& m : shared) {
        CHECK(m.q_x == s.pump.q_p);  // imposed exactly, not solved
        const double d1 = mismatch_D(s.disp, s.lattice, s.pump, m, Branch::G01);
        const double d2 = mismatch_D(s.disp, s.lattice, s.pump, m, Branch::G10);
        CHECK(std::abs(d1) < 2 * tol);
        CHECK(std::abs(d2) < 2 * tol);
        const auto [p1, p2] = coupled_partners(s.pump, s.lattice, m);
        CHECK(p1.q_x == doctest::Approx(-s.lattice.G_x).epsilon(1e-14));
        CHECK(p2.q_x == doctest::Approx(+s.lattice.G_x).epsilon(1e-14));
        CHECK(p1.q_y == -m.q_y);
        CHECK(p1.Omega == -m.Omega);
        CHECK(p1.role == WaveRole::idler);
    }
}

TEST_CASE("at superresonance the shared line coincides with the coupled line at -G_x") {
    const auto s = litao3_setup(-1.0);
    SharedModeScan scan;
    scan.omega_min = 2e12;
    scan.omega_max = 2e13;
    scan.omega_points = 8;
    scan.qy_min = -6e5;
    scan.qy_max = 6e5;
    const auto shared = shared_modes(s.disp, s.lattice, s.pump, scan);
    REQUIRE(!shared.empty());
    for (const auto& m : shared) {
        CHECK(m.q_x == doctest::Approx(-s.lattice.G_x).epsilon(1e-14));
        // 4-mode structure: the unshared signal c_s at +G_x couples to the
        // b idler at -G_x through the same mismatch value
        ModeCoordinate c_s{+s.lattice.G_x, m.q_y, m.Omega, WaveRole::signal};
        const double d_c = mismatch_D(s.disp, s.lattice, s.pump, c_s, Branch::G10);
        const double d_b = mismatch_D(s.disp, s.lattice, s.pump, m, Branch::G01);
        CHECK(d_c == doctest::Approx(d_b).epsilon(1e-12));
    }
}

TEST_CASE("shared-idler line via the role-swapped call") {
    const auto s = litao3_setup(-0.3);
    SharedModeScan scan;
    scan.role = WaveRole::idler;
    scan.omega_min = -3e13;
    scan.omega_max = 3e13;
    scan.omega_points = 64;
    scan.qy_min = -6e5;
    scan.qy_max = 6e5;
    const auto shared = shared_modes(s.disp, s.lattice, s.pump, scan);
    REQUIRE(!shared.empty());
    for (const auto& m : shared) {
        CHECK(m.role == WaveRole::idler);
        CHECK(m.q_x == s.pump.q_p);
        const auto [p1, p2] = coupled_partners(s.pump, s.lattice, m);
        CHECK(p1.role == WaveRole::signal);
        CHECK(p1.q_x == doctest::Approx(-s.lattice.G_x));
    }
}

TEST_CASE("q_y = 0 section: branch curves are distinct and cross at the shared mode") {
    const auto s = litao3_setup(-0.3);
    SectionScan sec;
    sec.section_qy = 0.0;
    sec.omega_min = -2e13;
    sec.omega_max = 2e13;
    sec.omega_points = 41;
    sec.qx_min = -1.8 * s.lattice.G_x;
    sec.qx_max = 1.8 * s.lattice.G_x;
    const auto c1 = phase_matching_section_qx(s.disp, s.lattice, s.pump, Branch::G01, sec);
    const auto c2 = phase_matching_section_qx(s.disp, s.lattice, s.pump, Branch::G10, sec);
    REQUIRE(!c1.empty());
    REQUIRE(!c2.empty());
    // carriers are tuned so the shared mode sits at (Omega = 0, q_x = q_p):
    // both branch curves must pass through it
    for (const auto* curve : {&c1, &c2}) {
        const bool hits = std::any_of(curve->begin(), curve->end(), [&](const PhaseMatchPoint& p) {
            return std::abs(p.Omega) < 1.1e12 && std::abs(p.q_x - s.pump.q_p) < 0.05 * s.lattice.G_x;
        });
        CHECK(hits);
    }
    // away from the crossing the branches separate (upper/lower curves)
    double max_gap = 0.0;
    for (const auto& p : c1)
        for (const auto& q : c2)
            if (p.Omega == q.Omega) max_gap = std::max(max_gap, std::abs(p.q_x - q.q_x));
    CHECK(max_gap > 0.5 * s.lattice.G_x);
}

TEST_CASE("curve CSV has the pinned header and row format") {
    const auto s = litao3_setup(-0.3);
    std::vector<PhaseMatchPoint> pts = {{1e13, 2e5, s.pump.q_p, Branch::G01, 1e-9, false}};
    const auto csv = curve_csv(pts, s.disp, WaveRole::signal);
    CHECK(csv.rfind("Omega_rad_s,lambda_nm,q_y_rad_m,branch,residual,tangency_flag\n", 0) == 0);
    CHECK(csv.find("G01") != std::string::npos);
    CHECK(csv.find(",0\n") != std::string::npos);
}
