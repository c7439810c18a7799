#include "hexpdc/qpm.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "hexpdc/constants.hpp"
#include "hexpdc/errors.hpp"

namespace hexpdc {

LatticeConfig LatticeConfig::hexagonal(double poling_period_m, double d33_m_per_V,
                                       double d01_over_d33) {
    LatticeConfig cfg;
    cfg.poling_period = poling_period_m;
    cfg.G_z = 2.0 * M_PI / poling_period_m;
    cfg.G_x = cfg.G_z / std::sqrt(3.0);
    cfg.d33 = d33_m_per_V;
    cfg.d01 = d01_over_d33 * d33_m_per_V;
    return cfg;
}

void LatticeConfig::validate() const {
    std::vector<std::string> failures;
    if (!(poling_period > 0.0)) failures.push_back("poling_period must be > 0");
    const double gz = 2.0 * M_PI / poling_period;
    if (std::abs(G_z - gz) > 1e-12 * gz)
        failures.push_back("G_z inconsistent with 2*pi/poling_period");
    if (std::abs(G_x - gz / std::sqrt(3.0)) > 1e-12 * gz)
        failures.push_back("G_x inconsistent with 2*pi/(sqrt(3)*poling_period)");
    if (!(d33 > 0.0)) failures.push_back("d33 must be > 0");
    if (!(d01 > 0.0)) failures.push_back("d01 must be > 0");
    if (!failures.empty()) throw ConfigError(std::move(failures));
}

void PumpConfig::validate() const {
    std::vector<std::string> failures;
    if (g0 < 0.0) failures.push_back("g0 must be >= 0");
    if (!(l_c > 0.0)) failures.push_back("l_c must be > 0");
    if (!failures.empty()) throw ConfigError(std::move(failures));
}

const char* to_string(Branch b) { return b == Branch::G01 ? "G01" : "G10"; }

double full_mismatch_DD(const DispersionSet& disp, const LatticeConfig& lattice,
                        const ModeCoordinate& w, const ModeCoordinate& w_p, Branch branch) {
    if (w.role == WaveRole::pump)
        throw std::invalid_argument("full_mismatch_DD: scanned mode must be signal or idler");
    const double kick = (branch == Branch::G01) ? -lattice.G_x : +lattice.G_x;
    const WaveRole partner = conjugate(w.role);
    const double k1 = disp.kz(w.role, w.q_x, w.q_y, w.Omega);
    const double k2 =
        disp.kz(partner, w_p.q_x - w.q_x + kick, w_p.q_y - w.q_y, w_p.Omega - w.Omega);
    const double kp = disp.kz(WaveRole::pump, w_p.q_x, w_p.q_y, w_p.Omega);
    return k1 + k2 - kp + lattice.G_z;
}

double mismatch_D(const DispersionSet& disp, const LatticeConfig& lattice, const PumpConfig& pump,
                  const ModeCoordinate& w, Branch branch) {
    ModeCoordinate w_p{pump.q_p, 0.0, 0.0, WaveRole::pump};
    return full_mismatch_DD(disp, lattice, w, w_p, branch);
}

double resonance_detuning(const PumpConfig& pump, const LatticeConfig& lattice) {
    return std::min(std::abs(pump.q_p - lattice.G_x), std::abs(pump.q_p + lattice.G_x)) /
           lattice.G_x;
}

namespace {

double default_tol(double tol, const LatticeConfig& lattice) {
    return tol > 0.0 ? tol : 1e-6 * lattice.G_z;
}

/// Sign-change roots of f over [lo, hi] with n bracket points, refined by
/// bisection to |f| < tol. Near-zero local minima without a sign change are
/// reported once with the tangency flag. Points where f is not evaluable
/// (evanescent constituent) are skipped.
struct RootFind {
    double value;
    double residual;
    bool tangency;
};

std::vector<RootFind> bracketed_roots(const std::function<double(double)>& f, double lo, double hi,
                                      int n, double tol) {
    std::vector<RootFind> roots;
    if (n < 2 || !(hi > lo)) return roots;
    const double dx = (hi - lo) / (n - 1);
    std::vector<double> xs(n), fs(n);
    std::vector<bool> ok(n, false);
    for (int i = 0; i < n; ++i) {
        xs[i] = lo + i * dx;
        try {
            fs[i] = f(xs[i]);
            ok[i] = true;
        } catch (const EvanescentModeError&) {
        } catch (const DomainError&) {
        }
    }
    for (int i = 0; i + 1 < n; ++i) {
        if (!ok[i] || !ok[i + 1]) continue;
        if (fs[i] == 0.0) {
            roots.push_back({xs[i], 0.0, false});
            continue;
        }
        if (fs[i] * fs[i + 1] < 0.0) {
            // bisect to machine width so the emitted root is independent of
            // the scan direction; tol only gates acceptance afterwards
            double a = xs[i], b = xs[i + 1], fa = fs[i];
            double m = 0.5 * (a + b), fm = f(m);
            for (int it = 0; it < 200 && (b - a) > 1e-15 * (std::abs(m) + 1.0); ++it) {
                if (fa * fm < 0.0) {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
                m = 0.5 * (a + b);
                fm = f(m);
            }
            if (std::abs(fm) < tol) roots.push_back({m, std::abs(fm), false});
        }
    }
    // tangential (double) roots: |f| dips below tol at an interior grid
    // minimum with no sign change around it
    for (int i = 1; i + 1 < n; ++i) {
        if (!ok[i - 1] || !ok[i] || !ok[i + 1]) continue;
        const double ai = std::abs(fs[i]);
        if (ai < tol && ai <= std::abs(fs[i - 1]) && ai <= std::abs(fs[i + 1]) &&
            fs[i - 1] * fs[i] > 0.0 && fs[i] * fs[i + 1] > 0.0) {
            const bool near_existing = std::any_of(
                roots.begin(), roots.end(), [&](const RootFind& r) { return std::abs(r.value - xs[i]) < 2 * dx; });
            if (!near_existing) roots.push_back({xs[i], ai, true});
        }
    }
    std::sort(roots.begin(), roots.end(),
              [](const RootFind& a, const RootFind& b) { return a.value < b.value; });
    return roots;
}

}  // namespace

std::vector<PhaseMatchPoint> phase_matching_curve(const DispersionSet& disp,
                                                  const LatticeConfig& lattice,
                                                  const PumpConfig& pump, Branch branch,
                                                  const CurveScan& scan) {
    const double tol = default_tol(scan.tol_root, lattice);
    std::vector<PhaseMatchPoint> out;
    const int nw = std::max(scan.omega_points, 1);
    for (int i = 0; i < nw; ++i) {
        const double Om = (nw == 1) ? scan.omega_min
                                    : scan.omega_min + (scan.omega_max - scan.omega_min) * i /
                                                           double(nw - 1);
        auto f = [&](double qy) {
            ModeCoordinate w{scan.section_qx, qy, Om, scan.role};
            return mismatch_D(disp, lattice, pump, w, branch);
        };
        for (const auto& r : bracketed_roots(f, scan.qy_min, scan.qy_max, scan.qy_brackets, tol))
            out.push_back({Om, r.value, scan.section_qx, branch, r.residual, r.tangency});
    }
    return out;
}

std::vector<PhaseMatchPoint> phase_matching_section_qx(const DispersionSet& disp,
                                                       const LatticeConfig& lattice,
                                                       const PumpConfig& pump, Branch branch,
                                                       const SectionScan& scan) {
    const double tol = default_tol(scan.tol_root, lattice);
    std::vector<PhaseMatchPoint> out;
    const int nw = std::max(scan.omega_points, 1);
    for (int i = 0; i < nw; ++i) {
        const double Om = (nw == 1) ? scan.omega_min
                                    : scan.omega_min + (scan.omega_max - scan.omega_min) * i /
                                                           double(nw - 1);
        auto f = [&](double qx) {
            ModeCoordinate w{qx, scan.section_qy, Om, scan.role};
            return mismatch_D(disp, lattice, pump, w, branch);
        };
        for (const auto& r : bracketed_roots(f, scan.qx_min, scan.qx_max, scan.qx_brackets, tol))
            out.push_back({Om, scan.section_qy, r.value, branch, r.residual, r.tangency});
    }
    return out;
}

std::vector<ModeCoordinate> shared_modes(const DispersionSet& disp, const LatticeConfig& lattice,
                                         const PumpConfig& pump, const SharedModeScan& scan) {
    // q_x = q_p imposed; there D1 = D2, so a single branch suffices.
    CurveScan cs;
    cs.section_qx = pump.q_p;
    cs.omega_min = scan.omega_min;
    cs.omega_max = scan.omega_max;
    cs.omega_points = scan.omega_points;
    cs.qy_min = scan.qy_min;
    cs.qy_max = scan.qy_max;
    cs.qy_brackets = scan.qy_brackets;
    cs.tol_root = scan.tol_root;
    cs.role = scan.role;
    auto pts = phase_matching_curve(disp, lattice, pump, Branch::G01, cs);
    std::vector<ModeCoordinate> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back({pump.q_p, p.q_y, p.Omega, scan.role});
    return out;
}

std::pair<ModeCoordinate, ModeCoordinate> coupled_partners(const PumpConfig& pump,
                                                           const LatticeConfig& lattice,
                                                           const ModeCoordinate& shared) {
    const WaveRole partner = conjugate(shared.role);
    ModeCoordinate a{pump.q_p - shared.q_x - lattice.G_x, -shared.q_y, -shared.Omega, partner};
    ModeCoordinate b{pump.q_p - shared.q_x + lattice.G_x, -shared.q_y, -shared.Omega, partner};
    return {a, b};
}

std::string curve_csv(const std::vector<PhaseMatchPoint>& points, const DispersionSet& disp,
                      WaveRole role) {
    std::ostringstream os;
    os.precision(12);
    os << "Omega_rad_s,lambda_nm,q_y_rad_m,branch,residual,tangency_flag\n";
    const double carrier = disp.carriers.carrier(role);
    for (const auto& p : points) {
        const double lambda_nm = omega_to_wavelength(carrier + p.Omega) * 1e9;
        os << p.Omega << ',' << lambda_nm << ',' << p.q_y << ',' << to_string(p.branch) << ','
           << p.residual << ',' << (p.tangency ? 1 : 0) << '\n';
    }
    return os.str();
}

double tune_signal_carrier(const SellmeierSet& models, double omega_p,
                           const LatticeConfig& lattice, double q_p, double lambda_lo_um,
                           double lambda_hi_um) {
    auto D_at = [&](double lambda_s_um) {
        const double omega_s = wavelength_to_omega(lambda_s_um * 1e-6);
        DispersionSet disp{models, WaveTriplet::from_pump_signal(omega_p, omega_s)};
        PumpConfig pump{q_p, 0.0, 1.0};
        ModeCoordinate w{q_p, 0.0, 0.0, WaveRole::signal};
        return mismatch_D(disp, lattice, pump, w, Branch::G01);
    };
    double a = lambda_lo_um, b = lambda_hi_um;
    double fa = D_at(a), fb = D_at(b);
    if (fa * fb > 0.0)
        throw std::invalid_argument(
            "tune_signal_carrier: no sign change of D in the given wavelength bracket");
    for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = D_at(m);
        if (std::abs(fm) < 1e-12 * lattice.G_z || (b - a) < 1e-12 * m) {
            return wavelength_to_omega(m * 1e-6);
        }
        if (fa * fm < 0.0) {
            b = m;
            fb = fm;
        } else {
            a = m;
            fa = fm;
        }
    }
    return wavelength_to_omega(0.5 * (a + b) * 1e-6);
}

}  // namespace hexpdc
