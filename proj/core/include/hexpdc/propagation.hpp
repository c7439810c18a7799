#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hexpdc/field.hpp"

namespace hexpdc {

/// Everything the split-step integrator needs to know about the medium.
///
/// Envelope normalization note (the one place the phase bookkeeping is
/// written down): fields are envelopes around the carrier plane waves
/// e^{i(k_j z - omega_j t)} with k_j = k_jz(0,0) the on-axis carrier wave
/// number. The linear step multiplies each Fourier mode by
/// e^{i (k_jz(q,Omega) - k_j) dz}; the pump tilt phase e^{i q_p x} therefore
/// propagates linearly and supplies k_pz(q_p,0,0) - k_p on its own. The
/// nonlinear step carries the residual collinear QPM phase
/// e^{-i delta_k_bar z} with delta_k_bar = k_s + k_i - k_p + G_z, and the
/// transverse grating factor 2 cos(G_x x) explicitly. Together these
/// reproduce the parametric-limit mismatch D_{1,2}(w) exactly for every
/// mode pair.
struct PropagationMedium {
    DispersionSet disp;
    LatticeConfig lattice;
    double l_c = 0.0;          // m
    double coupling = 0.0;     // chi in grid units: g0 = coupling * pump amplitude
    bool pump_depletion = false;

    double carrier_kz(WaveRole role) const;  // k_jz(0,0), rad/m
    double delta_k_bar() const;              // k_s + k_i - k_p + G_z, rad/m

    /// Parametric gain the pump peak amplitude produces.
    double g0(double pump_peak_amplitude) const { return coupling * pump_peak_amplitude; }
    static double coupling_for(double g0_lc_target, double l_c, double pump_peak_amplitude);
};

/// Per-field spectral support masks (FFT-ordered, 1 = keep). Empty vector =
/// full support. The anti-alias fraction clips |q_x|,|q_y|,|Omega| above
/// fraction * band edge so nonlinear products cannot alias back in band.
struct SpectralMask {
    std::vector<std::uint8_t> signal;
    std::vector<std::uint8_t> idler;
    std::vector<std::uint8_t> pump;

    static SpectralMask full(const GridSpec& grid);
    static SpectralMask anti_alias(const GridSpec& grid, double fraction);
    static SpectralMask anti_alias(const GridSpec& grid, double fx, double fy, double ft);
    /// Truncation to an explicit list of kept (ix, iy, it) modes.
    static std::vector<std::uint8_t> only_modes(const GridSpec& grid,
                                                const std::vector<std::array<int, 3>>& modes);
};

struct StepReport {
    double zeroed_photons_signal = 0.0;  // photon content removed by masks
    double zeroed_photons_idler = 0.0;
    double zeroed_photons_pump = 0.0;
};

class Propagator {
  public:
    Propagator(const PropagationMedium& medium, const GridSpec& grid, SpectralMask mask);

    /// Exact linear propagator over dz: every Fourier mode gains
    /// e^{i(k_jz(q,Omega) - k_j) dz}; evanescent and masked modes are
    /// hard-zeroed (removed photon content accumulated in the report).
    void linear_step(FieldGrid& fields, double dz);

    /// Explicit-midpoint advance of the three-wave coupling over dz. The QPM
    /// phase references z_start (defaults to the field's current z). Throws
    /// DivergenceError on NaN/overflow. When project_rhs is set, the
    /// nonlinear source itself is restricted to the mask support (used by
    /// spectrally truncated oracle runs).
    void nonlinear_step(FieldGrid& fields, double dz, std::optional<double> z_start = {});

    /// Strang-split propagation over steps*dz = l_c with merged interior
    /// half-steps. progress (optional) is invoked after every step.
    void propagate(FieldGrid& fields, int steps,
                   const std::function<void(int, double)>& progress = {});

    const StepReport& report() const { return report_; }
    bool project_rhs = false;

  private:
    void apply_phases(FieldGrid& fields, int which);  // 0: half step, 1: full step
    void apply_mask_direct(FieldGrid& fields);

    PropagationMedium medium_;
    GridSpec grid_;
    SpectralMask mask_;
    StepReport report_;
    double dz_ = 0.0;  // phase tables built for this step
    // per field: mask * e^{i(kz - kbar) dz/2}, FFT-ordered
    std::vector<std::complex<double>> half_phase_[3];
    std::vector<double> grating_;  // 2 cos(G_x x), direct space, x-major line
    void build_phase_tables(double dz);
};

}  // namespace hexpdc
