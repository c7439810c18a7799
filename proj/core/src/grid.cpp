#include "hexpdc/grid.hpp"

#include <cmath>
#include <string>

#include "hexpdc/errors.hpp"

namespace hexpdc {

std::vector<double> fft_frequencies(int n, double step) {
    std::vector<double> f(n);
    const double dq = 2.0 * M_PI / (n * step);
    for (int j = 0; j < n; ++j) f[j] = dq * (j < (n + 1) / 2 ? j : j - n);
    return f;
}

std::vector<double> GridSpec::qx_axis() const { return fft_frequencies(nx, dx()); }
std::vector<double> GridSpec::qy_axis() const { return fft_frequencies(ny, dy()); }

std::vector<double> GridSpec::omega_axis() const {
    auto f = fft_frequencies(nt, dt());
    for (auto& v : f) v = -v;  // e^{-i Omega t} vs the DFT's e^{+i omega t}
    return f;
}

namespace {
std::vector<double> centered(int n, double step) {
    std::vector<double> x(n);
    for (int j = 0; j < n; ++j) x[j] = (j - n / 2) * step;
    return x;
}
bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

std::vector<double> GridSpec::x_axis() const { return centered(nx, dx()); }
std::vector<double> GridSpec::y_axis() const { return centered(ny, dy()); }
std::vector<double> GridSpec::t_axis() const { return centered(nt, dt()); }

double GridSpec::qx_max() const { return M_PI / dx(); }
double GridSpec::qy_max() const { return M_PI / dy(); }
double GridSpec::omega_max() const { return M_PI / dt(); }

void GridSpec::validate(double G_x, double q_p) const {
    std::vector<std::string> failures;
    for (auto [n, name] : {std::pair{nx, "nx"}, {ny, "ny"}, {nt, "nt"}})
        if (!power_of_two(n))
            failures.push_back(std::string(name) + " must be a power of two, got " +
                               std::to_string(n));
    if (!(Lx > 0.0 && Ly > 0.0 && T > 0.0)) failures.push_back("extents must be positive");
    if (failures.empty()) {
        if (qx_max() < 1.5 * G_x)
            failures.push_back("q_x band edge " + std::to_string(qx_max()) +
                               " rad/m does not cover +/-G_x with margin >= 1.5*G_x");
        if (!(std::abs(q_p) < 0.5 * qx_max()))
            failures.push_back("pump tilt |q_p| = " + std::to_string(std::abs(q_p)) +
                               " rad/m not resolved: requires |q_p| < 0.5*q_x,max = " +
                               std::to_string(0.5 * qx_max()));
    }
    if (!failures.empty()) throw ConfigError(std::move(failures));
}

}  // namespace hexpdc
