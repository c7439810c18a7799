#include "hexpdc/bogoliubov.hpp"

#include <cmath>
#include <stdexcept>

namespace hexpdc {

BogoliubovCoefficients bogoliubov(double g0, double gamma, double D, double l_c) {
    if (!(l_c > 0.0)) throw std::invalid_argument("bogoliubov: l_c must be > 0");

    using cplx = std::complex<double>;
    const double gg = std::abs(gamma * g0);
    const double gamma2 = gg * gg - 0.25 * D * D;
    const cplx Gamma = std::sqrt(cplx(gamma2, 0.0));
    const cplx x = Gamma * l_c;

    // sinh(x)/Gamma, with the removable singularity at Gamma = 0 handled by
    // the even series in x^2 (works on both the real and imaginary branch)
    cplx sinh_over_gamma;
    if (std::abs(x) < 1e-4) {
        const cplx x2 = x * x;
        sinh_over_gamma = l_c * (1.0 + x2 / 6.0 + x2 * x2 / 120.0);
    } else {
        sinh_over_gamma = std::sinh(x) / Gamma;
    }

    const cplx phase = std::exp(cplx(0.0, -0.5 * D * l_c));
    const cplx U = (std::cosh(x) + cplx(0.0, 0.5 * D) * sinh_over_gamma) * phase;
    const cplx V = gamma * g0 * sinh_over_gamma * phase;

    BogoliubovCoefficients out;
    out.U = U;
    out.V = V;
    out.Gamma = Gamma;
    out.gamma_factor = gamma;
    out.D = D;
    // |U|^2 = 1 + |V|^2, so asinh(|V|) = atanh(|V|/|U|) without the
    // precision loss near saturation
    out.squeeze_r = std::asinh(std::abs(V));
    out.squeeze_theta = 0.5 * std::arg(U * V);
    return out;
}

}  // namespace hexpdc
