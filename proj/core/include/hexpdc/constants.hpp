#pragma once

#include <cmath>

namespace hexpdc {

inline constexpr double kSpeedOfLight = 299792458.0;        // m/s
inline constexpr double kHbar = 1.054571817e-34;            // J s
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F/m

/// Golden Ratio of the segment, (1+sqrt(5))/2.
inline const double kGoldenRatio = 0.5 * (1.0 + std::sqrt(5.0));

/// Transmission/reflection coefficients of the golden beam splitter that
/// maps the decoupled (delta, sigma) pairs back onto the physical (b, c)
/// modes:  b = t*delta + r*sigma,  c = -r*delta + t*sigma.
struct GoldenRatioSplit {
    double phi = kGoldenRatio;
    double t = 1.0 / std::sqrt(1.0 + kGoldenRatio * kGoldenRatio);
    double r = kGoldenRatio / std::sqrt(1.0 + kGoldenRatio * kGoldenRatio);
};

inline double wavelength_to_omega(double wavelength_m) {
    return 2.0 * M_PI * kSpeedOfLight / wavelength_m;
}

inline double omega_to_wavelength(double omega_rad_s) {
    return 2.0 * M_PI * kSpeedOfLight / omega_rad_s;
}

}  // namespace hexpdc
