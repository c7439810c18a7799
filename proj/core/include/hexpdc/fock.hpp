#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "hexpdc/bogoliubov.hpp"

namespace hexpdc {

/// Dense amplitude tensor over photon numbers 0..dim-1 per labeled mode,
/// row-major with the last mode fastest.
class TruncatedFockState {
  public:
    TruncatedFockState(std::vector<std::string> labels, std::vector<int> dims);

    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<int>& dims() const { return dims_; }
    std::size_t size() const { return amp_.size(); }

    std::complex<double>& at(const std::vector<int>& occupation);
    const std::complex<double>& at(const std::vector<int>& occupation) const;
    const std::vector<std::complex<double>>& amplitudes() const { return amp_; }
    std::vector<std::complex<double>>& amplitudes() { return amp_; }

    double norm_squared() const;
    void normalize();

    /// Probability distribution of photon number in one mode (marginal).
    std::vector<double> marginal_distribution(int mode) const;
    double mean_photon_number(int mode) const;
    double photon_number_variance(int mode) const;

  private:
    std::vector<std::string> labels_;
    std::vector<int> dims_;
    std::vector<std::size_t> strides_;
    std::vector<std::complex<double>> amp_;
};

/// Two-mode squeezed vacuum Schmidt amplitudes
/// c_N = (U V)^N / |U|^{2N+1}, N = 0..N_max. The truncation deficit is
/// 1 - sum |c_N|^2 = tanh(r)^{2(N_max+1)} analytically.
struct TmsvAmplitudes {
    std::vector<std::complex<double>> c;
    double norm_deficit;  // analytic, (|V|/|U|)^{2(N_max+1)}
};
TmsvAmplitudes tmsv_amplitudes(const BogoliubovCoefficients& coeff, int N_max);

/// TMSV with the idler split on a 50:50 beam splitter. Amplitude of
/// |N>_s |k>_1 |N-k>_2 is c_N 2^{-N/2} sqrt(N!/(k!(N-k)!)); all other
/// entries vanish. Labels: [s, i1, i2].
TruncatedFockState split_idler_state(const std::vector<std::complex<double>>& c, int N_max);

/// Projection onto exactly N signal photons, normalized. The result is the
/// N-photon path-entangled state over [i1, i2]. Throws ConditioningError for
/// zero-probability outcomes.
TruncatedFockState condition_on_signal(const TruncatedFockState& state, int N);

/// Exact conditional distribution P(k, N-k) = C(N,k)/2^N as integer rationals
/// (numerator, denominator), k = 0..N. Exact for N <= 62.
std::vector<std::pair<std::uint64_t, std::uint64_t>> conditional_distribution_exact(int N);

/// First-order spontaneous four-mode state at superresonance over
/// [b_s, c_s, b_i, c_i] with one photon per mode at most:
///   |0> + g0l sinc(D l_c/2) e^{-i D l_c/2} (b_s+ c_i+  +  b_s+ b_i+  +  c_s+ b_i+) |0>
/// Stored unnormalized; the c_s+ c_i+ amplitude is exactly zero.
struct SpontaneousFourModeState {
    TruncatedFockState state;
    bool perturbative;  // false when g0l >= 0.05 (result kept, flag raised)
};
SpontaneousFourModeState spontaneous_four_mode_state(double g0l, double D, double l_c);

/// Photon-number mean and variance of the TMSV signal/split-idler modes with
/// the geometric tail beyond N_max summed in closed form. 'ratio2' is
/// |V/U|^2 = tanh^2(r).
struct TmsvMoments {
    double mean_signal;
    double var_signal;
    double mean_split_idler;   // each of i1, i2
    double var_split_idler;
    double norm_deficit;
};
TmsvMoments tmsv_moments(const TmsvAmplitudes& amps, double ratio2);

}  // namespace hexpdc
