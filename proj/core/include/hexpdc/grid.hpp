#pragma once

#include <cstddef>
#include <vector>

namespace hexpdc {

/// Discretization of the (x, y, t) simulation box and its Fourier duals.
/// Fields carry plane-wave components e^{i(q.r - Omega t)}; with the stored
/// axis conventions a single forward DFT maps the component at (q, Omega) to
/// the coefficient at the matching FFT index (the Omega axis is the negated
/// FFT frequency axis).
struct GridSpec {
    int nx = 0;
    int ny = 0;
    int nt = 0;
    double Lx = 0.0;  // m
    double Ly = 0.0;  // m
    double T = 0.0;   // s

    double dx() const { return Lx / nx; }
    double dy() const { return Ly / ny; }
    double dt() const { return T / nt; }
    std::size_t size() const {
        return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) *
               static_cast<std::size_t>(nt);
    }

    /// FFT-ordered axes. Direct-space axes are centered on zero.
    std::vector<double> qx_axis() const;     // rad/m
    std::vector<double> qy_axis() const;     // rad/m
    std::vector<double> omega_axis() const;  // rad/s
    std::vector<double> x_axis() const;      // m
    std::vector<double> y_axis() const;      // m
    std::vector<double> t_axis() const;      // s

    double qx_max() const;  // band edge pi/dx
    double qy_max() const;
    double omega_max() const;

    std::size_t index(int ix, int iy, int it) const {
        return (static_cast<std::size_t>(ix) * ny + iy) * nt + it;
    }

    /// Collects every violation (not powers of two, q_x band not covering
    /// +/- G_x with the required margin, unresolved pump tilt) and throws
    /// ConfigError listing all of them.
    void validate(double G_x, double q_p) const;
};

/// FFT-ordered angular frequency axis: 2*pi*j/(n*d) for j < n/2, negative
/// branch above.
std::vector<double> fft_frequencies(int n, double step);

}  // namespace hexpdc
