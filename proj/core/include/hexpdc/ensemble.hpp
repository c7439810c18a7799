#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hexpdc/array_io.hpp"
#include "hexpdc/propagation.hpp"

namespace hexpdc {

/// One stochastic campaign: grid + pulse + medium + step control. Threads
/// pick realizations off a shared counter; every realization draws its RNG
/// stream from (seed, index) alone, so the result is independent of the
/// thread schedule.
struct EnsembleConfig {
    GridSpec grid;
    PumpPulse pulse;
    PropagationMedium medium;  // coupling filled in from pulse target if 0
    int steps = 400;
    int realizations = 1;
    int threads = 0;  // 0 = hardware concurrency
    std::uint64_t seed = 1;
    double dealias_fraction = 0.66;  // <= 0 disables the anti-alias mask
    std::optional<SpectralMask> mask_override;
    bool project_rhs = false;
    /// Parametric-limit runs: replace the pulse by the plane wave
    /// e^{i q_p x} of unit amplitude (medium.coupling then equals g0).
    bool plane_wave_pump = false;
    /// Fourier modes whose complex amplitudes are recorded per realization.
    std::vector<std::array<int, 3>> probe_modes_signal;
    std::vector<std::array<int, 3>> probe_modes_idler;
    bool accumulate_maps = true;
    std::string checkpoint_dir;  // empty: no per-realization files
};

/// Ensemble-averaged far-field photon-number maps. Axes are fftshifted
/// (ascending). Values are mean sum_axis |a|^2 per projected bin; the
/// 'photon_*' variants have the half-photon symmetric-ordering baseline
/// removed (0.5 per summed mode).
struct SpectralMaps {
    int realizations = 0;
    std::vector<double> qx, qy, omega;            // shifted axes
    std::vector<double> lambda_signal, lambda_idler;  // per omega bin, m
    // row-major [len(rows) x len(cols)]
    std::vector<double> xy_signal, xy_idler;  // rows qx, cols qy
    std::vector<double> xl_signal, xl_idler;  // rows qx, cols omega
    std::vector<double> yl_signal, yl_idler;  // rows qy, cols omega

    std::vector<double> photon_xy(FieldGrid::Field f, int n_t) const;
    std::vector<double> photon_xl(FieldGrid::Field f, int n_y) const;
    std::vector<double> photon_yl(FieldGrid::Field f, int n_x) const;
};

struct EnsembleResult {
    SpectralMaps maps;
    /// Per-probe-mode photon numbers <|a|^2> - 1/2 and their standard errors.
    std::vector<double> probe_n_signal, probe_n_signal_stderr;
    std::vector<double> probe_n_idler, probe_n_idler_stderr;
    /// Raw probe amplitudes [realization][mode] for correlation analysis.
    std::vector<std::vector<std::complex<double>>> probe_signal_amps;
    std::vector<std::vector<std::complex<double>>> probe_idler_amps;
    StepReport step_report;
    int completed = 0;
    int resumed_from_checkpoint = 0;
};

EnsembleResult run_ensemble(const EnsembleConfig& config);

/// Peak intensity of the hot-spot line at q_x = line_center versus the
/// brightest plain-fluorescence background outside every line band.
struct HotSpotMeasure {
    double hot = 0.0;
    double background = 0.0;
};
HotSpotMeasure measure_hot_spot(const SpectralMaps& maps, FieldGrid::Field field, int n_third_axis,
                                double line_center, const std::vector<double>& all_line_centers,
                                double band_halfwidth);

/// Least-squares fit of log(I_hot) against log(I_background) across gains.
struct GainExponentFit {
    double slope = 0.0;
    double slope_stderr = 0.0;
    double intercept = 0.0;
    bool adequate_range = true;  // false: background dynamic range < factor 2
    std::vector<std::array<double, 3>> points;  // (g0lc, I_hot, I_bg)
};
GainExponentFit fit_gain_exponent(const std::vector<std::array<double, 3>>& points);

/// Column-integrated line profile I(q_x) of a map (sum over the column axis).
std::vector<double> line_profile_qx(const SpectralMaps& maps, FieldGrid::Field field,
                                    int n_third_axis);

double pump_peak_amplitude(const PumpPulse& pulse, const GridSpec& grid);

}  // namespace hexpdc
