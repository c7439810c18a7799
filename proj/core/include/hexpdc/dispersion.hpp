#pragma once

#include <optional>

#include "hexpdc/sellmeier.hpp"

namespace hexpdc {

/// Carrier angular frequencies of the three interacting wave packets.
/// The idler carrier is defined as the difference, so omega_s + omega_i
/// equals omega_p exactly.
struct WaveTriplet {
    double omega_p = 0.0;  // rad/s
    double omega_s = 0.0;  // rad/s
    double omega_i = 0.0;  // rad/s

    static WaveTriplet from_pump_signal(double omega_p, double omega_s) {
        return WaveTriplet{omega_p, omega_s, omega_p - omega_s};
    }
    double carrier(WaveRole role) const {
        switch (role) {
            case WaveRole::pump: return omega_p;
            case WaveRole::signal: return omega_s;
            case WaveRole::idler: return omega_i;
        }
        return omega_p;
    }
};

/// Wave number k(Omega) = n(lambda(omega+Omega)) * (omega+Omega)/c, rad/m.
/// carrier and Omega in rad/s.
double wavenumber(const SellmeierModel& model, double carrier, double Omega);

/// z-component of the wave vector, k_z = sqrt(k^2 - qx^2 - qy^2), rad/m.
/// Positive root; depends on the transverse coordinates only through |q|.
/// Throws EvanescentModeError when k^2 < |q|^2.
double kz(const SellmeierModel& model, double carrier, double qx, double qy, double Omega);

/// Non-throwing variant for grid loops: empty when the mode is evanescent
/// or the required wavelength falls outside the model's validity range.
std::optional<double> kz_if_propagating(const SellmeierModel& model, double carrier, double qx,
                                        double qy, double Omega) noexcept;

/// Index models plus carriers: everything downstream modules need to
/// evaluate k_jz(q, Omega) for any of the three waves.
struct DispersionSet {
    SellmeierSet models;
    WaveTriplet carriers;

    double kz(WaveRole role, double qx, double qy, double Omega) const {
        return hexpdc::kz(models.for_role(role), carriers.carrier(role), qx, qy, Omega);
    }
    double wavenumber(WaveRole role, double Omega) const {
        return hexpdc::wavenumber(models.for_role(role), carriers.carrier(role), Omega);
    }
};

}  // namespace hexpdc
