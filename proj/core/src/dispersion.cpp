#include "hexpdc/dispersion.hpp"

#include <cmath>
#include <sstream>

#include "hexpdc/constants.hpp"
#include "hexpdc/errors.hpp"

namespace hexpdc {

double wavenumber(const SellmeierModel& model, double carrier, double Omega) {
    const double omega = carrier + Omega;
    if (!(omega > 0.0)) throw std::invalid_argument("wavenumber: omega + Omega must be positive");
    const double lambda_um = omega_to_wavelength(omega) * 1e6;
    return model.refractive_index(lambda_um) * omega / kSpeedOfLight;
}

double kz(const SellmeierModel& model, double carrier, double qx, double qy, double Omega) {
    const double k = wavenumber(model, carrier, Omega);
    const double q2 = qx * qx + qy * qy;
    const double arg = k * k - q2;
    if (arg < 0.0) {
        std::ostringstream msg;
        msg << "evanescent mode: k^2 = " << k * k << " < |q|^2 = " << q2;
        throw EvanescentModeError(msg.str(), -arg);
    }
    return std::sqrt(arg);
}

std::optional<double> kz_if_propagating(const SellmeierModel& model, double carrier, double qx,
                                        double qy, double Omega) noexcept {
    try {
        return kz(model, carrier, qx, qy, Omega);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace hexpdc
