#pragma once

#include <string>
#include <vector>

#include "hexpdc/dispersion.hpp"

namespace hexpdc {

/// Hexagonal reciprocal lattice of the poled nonlinearity. Only the two
/// fundamental vectors G01 = (-G_x, -G_z) and G10 = (+G_x, -G_z) enter the
/// coupled-wave model; G_z = 2*pi/period and G_x = G_z/sqrt(3).
struct LatticeConfig {
    double poling_period = 0.0;  // m
    double G_x = 0.0;            // rad/m
    double G_z = 0.0;            // rad/m
    double d33 = 0.0;            // m/V
    double d01 = 0.0;            // m/V

    static LatticeConfig hexagonal(double poling_period_m, double d33_m_per_V,
                                   double d01_over_d33 = 0.29);
    void validate() const;  // throws ConfigError listing all failures
};

/// One signal/idler/pump plane-wave Fourier mode w = (q_x, q_y, Omega).
struct ModeCoordinate {
    double q_x = 0.0;    // rad/m
    double q_y = 0.0;    // rad/m
    double Omega = 0.0;  // rad/s relative to the role's carrier
    WaveRole role = WaveRole::signal;
};

/// Plane-wave pump parameters in the parametric limit.
struct PumpConfig {
    double q_p = 0.0;  // rad/m, transverse x tilt
    double g0 = 0.0;   // 1/m, parametric gain chi*alpha_p
    double l_c = 0.0;  // m, crystal length

    void validate() const;
};

enum class Branch { G01, G10 };

const char* to_string(Branch b);

/// QPM mismatch in the parametric limit (plane-wave pump at (q_p, 0, 0)):
///
///   D_{1,2}(w) = k_sz(q_x, q_y, Omega)
///              + k_iz(q_p - q_x -/+ G_x, -q_y, -Omega)
///              - k_pz(q_p, 0, 0) + G_z
///
/// w.role selects which dispersion model the scanned mode uses; the partner
/// wave is the conjugate role. Branch G01 takes the '-G_x' idler kick.
double mismatch_D(const DispersionSet& disp, const LatticeConfig& lattice, const PumpConfig& pump,
                  const ModeCoordinate& w, Branch branch);

/// Full two-argument QPM function with an arbitrary pump Fourier coordinate
/// w_p = (q_px, q_py, Omega_p):
///
///   DD_{1,2}(w, w_p) = k_{w.role,z}(w) + k_{conj,z}(w_p - w -/+ G_x e_x)
///                    - k_pz(w_p) + G_z
///
/// Reduces to mismatch_D at w_p = (q_p, 0, 0).
double full_mismatch_DD(const DispersionSet& disp, const LatticeConfig& lattice,
                        const ModeCoordinate& w, const ModeCoordinate& w_p, Branch branch);

/// Normalized distance of the pump tilt from the nearest superresonance:
/// min(|q_p - G_x|, |q_p + G_x|) / G_x. Zero iff resonant.
double resonance_detuning(const PumpConfig& pump, const LatticeConfig& lattice);

/// One point on a phase-matching curve. 'solved' holds the root coordinate
/// (q_y for curve scans, q_x for sections); residual is |D| there.
struct PhaseMatchPoint {
    double Omega;    // rad/s
    double q_y;      // rad/m
    double q_x;      // rad/m
    Branch branch;
    double residual;
    bool tangency;   // double root flagged once; multiplicity is ambiguous
};

/// Scan specification for phase_matching_curve: the curve lives in the
/// (Omega, q_y) plane of the section q_x = section_qx. Omega is scanned on a
/// uniform grid; for each Omega, sign changes of D over the q_y bracket grid
/// are refined by bisection to |D| < tol_root.
struct CurveScan {
    double section_qx = 0.0;          // rad/m
    double omega_min = 0.0;           // rad/s
    double omega_max = 0.0;           // rad/s
    int omega_points = 256;
    double qy_min = 0.0;              // rad/m
    double qy_max = 0.0;              // rad/m
    int qy_brackets = 2048;
    double tol_root = 0.0;            // 0 -> default 1e-6 * G_z
    WaveRole role = WaveRole::signal;
};

std::vector<PhaseMatchPoint> phase_matching_curve(const DispersionSet& disp,
                                                  const LatticeConfig& lattice,
                                                  const PumpConfig& pump, Branch branch,
                                                  const CurveScan& scan);

/// Companion section at fixed q_y: solves D = 0 for q_x at each scanned
/// Omega. This is the (lambda, q_x) view in which the two branch curves are
/// distinct and cross at the shared modes.
struct SectionScan {
    double section_qy = 0.0;
    double omega_min = 0.0;
    double omega_max = 0.0;
    int omega_points = 256;
    double qx_min = 0.0;
    double qx_max = 0.0;
    int qx_brackets = 2048;
    double tol_root = 0.0;
    WaveRole role = WaveRole::signal;
};

std::vector<PhaseMatchPoint> phase_matching_section_qx(const DispersionSet& disp,
                                                       const LatticeConfig& lattice,
                                                       const PumpConfig& pump, Branch branch,
                                                       const SectionScan& scan);

/// Modes shared by both processes: q_x = q_p imposed, and the single
/// remaining equation D(q_p, q_y, Omega) = 0 solved for q_y on each scanned
/// Omega. role = idler produces the dual shared-idler line.
struct SharedModeScan {
    double omega_min = 0.0;
    double omega_max = 0.0;
    int omega_points = 256;
    double qy_min = 0.0;
    double qy_max = 0.0;
    int qy_brackets = 2048;
    double tol_root = 0.0;
    WaveRole role = WaveRole::signal;
};

std::vector<ModeCoordinate> shared_modes(const DispersionSet& disp, const LatticeConfig& lattice,
                                         const PumpConfig& pump, const SharedModeScan& scan);

/// The two partner modes coupled to a shared mode: (q_p - q_x -/+ G_x, -q_y,
/// -Omega) with the conjugate role. For a shared mode these sit at -/+ G_x.
std::pair<ModeCoordinate, ModeCoordinate> coupled_partners(const PumpConfig& pump,
                                                           const LatticeConfig& lattice,
                                                           const ModeCoordinate& shared);

/// Curve export, schema hexpdc-curve-v1. Header:
/// Omega_rad_s,lambda_nm,q_y_rad_m,branch,residual,tangency_flag
std::string curve_csv(const std::vector<PhaseMatchPoint>& points, const DispersionSet& disp,
                      WaveRole role);

/// Solve for the signal carrier that phase-matches the shared mode at grid
/// centre, D(q_p, 0, 0) = 0, by bisection over the signal wavelength range
/// [lambda_lo_um, lambda_hi_um]. Returns omega_s (rad/s).
double tune_signal_carrier(const SellmeierSet& models, double omega_p,
                           const LatticeConfig& lattice, double q_p, double lambda_lo_um,
                           double lambda_hi_um);

}  // namespace hexpdc
