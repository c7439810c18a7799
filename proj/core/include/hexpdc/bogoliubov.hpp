#pragma once

#include <complex>

namespace hexpdc {

/// Input-output coefficients of one conjugate mode pair amplified with gain
/// enhancement factor gamma at mismatch D:
///
///   a_s(l_c) = U a_s(0) + V a_i^dag(0)
///
///   U = [cosh(Gamma l_c) + i D/(2 Gamma) sinh(Gamma l_c)] e^{-i D l_c / 2}
///   V = gamma g0 sinh(Gamma l_c)/Gamma e^{-i D l_c / 2}
///   Gamma = sqrt(|gamma g0|^2 - D^2/4)
///
/// Gamma turns imaginary below threshold (|gamma g0| < |D|/2); the same
/// analytic branch then continues sinh/cosh into sin/cos. gamma is signed:
/// -1/phi enters V through the prefactor.
struct BogoliubovCoefficients {
    std::complex<double> U;
    std::complex<double> V;
    std::complex<double> Gamma;  // 1/m, real or positive-imaginary
    double gamma_factor;         // dimensionless, signed
    double D;                    // rad/m
    double squeeze_r;            // tanh(r) = |V|/|U|
    double squeeze_theta;        // 0.5 * arg(U V)
};

/// Total function: valid for any g0 >= 0, signed gamma, any D, l_c > 0.
/// sinh(Gamma l)/Gamma is evaluated by series for |Gamma l| < 1e-4 so the
/// phase-matching boundary Gamma -> 0 stays smooth.
BogoliubovCoefficients bogoliubov(double g0, double gamma, double D, double l_c);

}  // namespace hexpdc
