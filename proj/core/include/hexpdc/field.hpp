#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <span>

#include "hexpdc/dispersion.hpp"
#include "hexpdc/grid.hpp"
#include "hexpdc/qpm.hpp"

namespace hexpdc {

/// Classical pump pulse: Gaussian in x, y and t. waist_x/waist_y are 1/e^2
/// intensity radii (amplitude ~ e^{-x^2/w^2}); duration is the intensity
/// FWHM. The peak amplitude is fixed through the target g0*l_c at beam
/// centre; 'photons' sets the absolute scale (relevant only when pump
/// depletion is enabled).
struct PumpPulse {
    double duration_fwhm = 0.0;  // s
    double waist_x = 0.0;        // m
    double waist_y = 0.0;        // m
    double tilt_qp = 0.0;        // rad/m
    double g0_lc = 0.0;          // dimensionless target at beam centre
    double photons = 1e12;       // total pump photons

    void validate(const GridSpec& grid) const;
};

/// One stochastic realization: complex envelopes of pump, signal and idler on
/// the (x, y, t) grid, photon-flux normalized (the unitary-DFT Fourier
/// coefficient squared is the photon number in that mode). Owns FFTW plans;
/// construct once per worker and re-seed between realizations.
class FieldGrid {
  public:
    enum Field { kSignal = 0, kIdler = 1, kPump = 2 };

    explicit FieldGrid(const GridSpec& spec);
    ~FieldGrid();
    FieldGrid(const FieldGrid&) = delete;
    FieldGrid& operator=(const FieldGrid&) = delete;

    const GridSpec& spec() const { return spec_; }
    double z = 0.0;  // current propagation distance, m

    std::span<std::complex<double>> field(Field f);
    std::span<const std::complex<double>> field(Field f) const;

    /// In-place unnormalized FFTs over all three fields (batched). The
    /// 1/size() normalization is the caller's responsibility.
    void forward_fft();
    void backward_fft();

    /// Direct-space sum of |A|^2 per field (equals the Fourier-mode photon
    /// sum by Parseval under the unitary convention).
    std::array<double, 3> photon_numbers() const;

    /// Unitary-normalized Fourier coefficient of one mode (field must be in
    /// the direct-space representation).
    std::complex<double> fourier_coefficient(Field f, int ix, int iy, int it) const;

    /// Gaussian white noise of variance 1/2 photon per grid mode on signal
    /// and idler (the symmetric-ordering vacuum), deterministic under the
    /// seed; pump set from the pulse. z reset to 0.
    void seed_vacuum(const PumpPulse& pulse, std::uint64_t seed);

    /// Pump amplitude at beam centre (direct space), set by seed_vacuum.
    double pump_peak_amplitude() const { return pump_peak_; }

  private:
    GridSpec spec_;
    std::complex<double>* data_ = nullptr;  // 3 contiguous fields
    void* plan_fwd_ = nullptr;
    void* plan_bwd_ = nullptr;
    double pump_peak_ = 0.0;
};

/// Deterministic per-realization RNG stream: splitmix64 mix of (seed, index).
std::uint64_t realization_seed(std::uint64_t master_seed, std::uint64_t realization_index);

}  // namespace hexpdc
