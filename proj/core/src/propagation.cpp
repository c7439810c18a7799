#include "hexpdc/propagation.hpp"

#include <cmath>

#include "hexpdc/constants.hpp"
#include "hexpdc/errors.hpp"

namespace hexpdc {

double PropagationMedium::carrier_kz(WaveRole role) const { return disp.kz(role, 0.0, 0.0, 0.0); }

double PropagationMedium::delta_k_bar() const {
    return carrier_kz(WaveRole::signal) + carrier_kz(WaveRole::idler) -
           carrier_kz(WaveRole::pump) + lattice.G_z;
}

double PropagationMedium::coupling_for(double g0_lc_target, double l_c,
                                       double pump_peak_amplitude) {
    if (!(l_c > 0.0) || !(pump_peak_amplitude > 0.0))
        throw std::invalid_argument("coupling_for: need l_c > 0 and pump amplitude > 0");
    return g0_lc_target / (l_c * pump_peak_amplitude);
}

SpectralMask SpectralMask::full(const GridSpec& grid) {
    SpectralMask m;
    m.signal.assign(grid.size(), 1);
    m.idler.assign(grid.size(), 1);
    m.pump.assign(grid.size(), 1);
    return m;
}

SpectralMask SpectralMask::anti_alias(const GridSpec& grid, double fraction) {
    return anti_alias(grid, fraction, fraction, fraction);
}

SpectralMask SpectralMask::anti_alias(const GridSpec& grid, double fx, double fy, double ft) {
    SpectralMask m = full(grid);
    const auto qx = grid.qx_axis();
    const auto qy = grid.qy_axis();
    const auto om = grid.omega_axis();
    const double cx = fx * grid.qx_max();
    const double cy = fy * grid.qy_max();
    const double ct = ft * grid.omega_max();
    for (int ix = 0; ix < grid.nx; ++ix)
        for (int iy = 0; iy < grid.ny; ++iy)
            for (int it = 0; it < grid.nt; ++it) {
                const bool keep = std::abs(qx[ix]) <= cx && std::abs(qy[iy]) <= cy &&
                                  std::abs(om[it]) <= ct;
                if (!keep) {
                    const std::size_t i = grid.index(ix, iy, it);
                    m.signal[i] = m.idler[i] = m.pump[i] = 0;
                }
            }
    return m;
}

std::vector<std::uint8_t> SpectralMask::only_modes(const GridSpec& grid,
                                                   const std::vector<std::array<int, 3>>& modes) {
    std::vector<std::uint8_t> m(grid.size(), 0);
    for (const auto& [ix, iy, it] : modes)
        m[grid.index((ix % grid.nx + grid.nx) % grid.nx, (iy % grid.ny + grid.ny) % grid.ny,
                     (it % grid.nt + grid.nt) % grid.nt)] = 1;
    return m;
}

Propagator::Propagator(const PropagationMedium& medium, const GridSpec& grid, SpectralMask mask)
    : medium_(medium), grid_(grid), mask_(std::move(mask)) {
    if (mask_.signal.empty()) mask_ = SpectralMask::full(grid_);
    grating_.resize(grid_.nx);
    const auto xs = grid_.x_axis();
    for (int ix = 0; ix < grid_.nx; ++ix)
        grating_[ix] = 2.0 * std::cos(medium_.lattice.G_x * xs[ix]);
}

void Propagator::build_phase_tables(double dz) {
    const auto qx = grid_.qx_axis();
    const auto qy = grid_.qy_axis();
    const auto om = grid_.omega_axis();
    const WaveRole roles[3] = {WaveRole::signal, WaveRole::idler, WaveRole::pump};
    const std::vector<std::uint8_t>* masks[3] = {&mask_.signal, &mask_.idler, &mask_.pump};
    for (int f = 0; f < 3; ++f) {
        auto& tab = half_phase_[f];
        tab.assign(grid_.size(), {0.0, 0.0});
        const double kbar = medium_.carrier_kz(roles[f]);
        for (int ix = 0; ix < grid_.nx; ++ix)
            for (int iy = 0; iy < grid_.ny; ++iy)
                for (int it = 0; it < grid_.nt; ++it) {
                    const std::size_t i = grid_.index(ix, iy, it);
                    if (!(*masks[f])[i]) continue;  // masked: stays zero
                    const auto kz = kz_if_propagating(medium_.disp.models.for_role(roles[f]),
                                                      medium_.disp.carriers.carrier(roles[f]),
                                                      qx[ix], qy[iy], om[it]);
                    if (!kz) continue;  // evanescent tail: hard-zeroed
                    const double th = (*kz - kbar) * 0.5 * dz;
                    tab[i] = {std::cos(th), std::sin(th)};
                }
    }
    dz_ = dz;
}

void Propagator::apply_phases(FieldGrid& fields, int which) {
    const double inv_n = 1.0 / static_cast<double>(grid_.size());
    for (int f = 0; f < 3; ++f) {
        auto a = fields.field(static_cast<FieldGrid::Field>(f));
        const auto& tab = half_phase_[f];
        double zeroed = 0.0;
        if (which == 0) {
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (tab[i] == std::complex<double>{0.0, 0.0}) zeroed += std::norm(a[i]);
                a[i] *= tab[i] * inv_n;
            }
        } else {
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (tab[i] == std::complex<double>{0.0, 0.0}) zeroed += std::norm(a[i]);
                a[i] *= tab[i] * tab[i] * inv_n;
            }
        }
        // unnormalized spectral coefficients: photon content is |.|^2 / N
        zeroed *= inv_n;
        if (f == 0) report_.zeroed_photons_signal += zeroed;
        if (f == 1) report_.zeroed_photons_idler += zeroed;
        if (f == 2) report_.zeroed_photons_pump += zeroed;
    }
}

void Propagator::linear_step(FieldGrid& fields, double dz) {
    if (dz_ != dz) build_phase_tables(dz);
    fields.forward_fft();
    apply_phases(fields, 1);
    fields.backward_fft();
    fields.z += dz;
}

void Propagator::apply_mask_direct(FieldGrid& fields) {
    const double inv_n = 1.0 / static_cast<double>(grid_.size());
    fields.forward_fft();
    const std::vector<std::uint8_t>* masks[3] = {&mask_.signal, &mask_.idler, &mask_.pump};
    for (int f = 0; f < 3; ++f) {
        auto a = fields.field(static_cast<FieldGrid::Field>(f));
        const auto& m = *masks[f];
        for (std::size_t i = 0; i < a.size(); ++i) a[i] *= m[i] ? inv_n : 0.0;
    }
    fields.backward_fft();
}

namespace {
struct Scratch {
    std::vector<std::complex<double>> k_s, k_i, k_p;
    std::vector<std::complex<double>> mid_s, mid_i, mid_p;
    std::vector<std::complex<double>> save_s, save_i, save_p;
};
}  // namespace

void Propagator::nonlinear_step(FieldGrid& fields, double dz, std::optional<double> z_start) {
    const std::size_t n = grid_.size();
    const std::size_t line = static_cast<std::size_t>(grid_.ny) * grid_.nt;
    const double dkb = medium_.delta_k_bar();
    const double chi = medium_.coupling;
    const bool deplete = medium_.pump_depletion;
    const double z0 = z_start.value_or(fields.z);

    auto s = fields.field(FieldGrid::kSignal);
    auto i = fields.field(FieldGrid::kIdler);
    auto p = fields.field(FieldGrid::kPump);

    static thread_local Scratch w;
    w.k_s.resize(n);
    w.k_i.resize(n);
    w.mid_s.resize(n);
    w.mid_i.resize(n);
    if (deplete) {
        w.k_p.resize(n);
        w.mid_p.resize(n);
    }

    auto eval = [&](std::span<const std::complex<double>> fs,
                    std::span<const std::complex<double>> fi,
                    std::span<const std::complex<double>> fp, double z,
                    std::vector<std::complex<double>>& out_s,
                    std::vector<std::complex<double>>& out_i,
                    std::vector<std::complex<double>>& out_p) {
        const std::complex<double> ph(std::cos(dkb * z), -std::sin(dkb * z));
        for (int ix = 0; ix < grid_.nx; ++ix) {
            const std::complex<double> cph = chi * grating_[ix] * ph;
            const std::size_t base = static_cast<std::size_t>(ix) * line;
            for (std::size_t j = base; j < base + line; ++j) {
                out_s[j] = cph * fp[j] * std::conj(fi[j]);
                out_i[j] = cph * fp[j] * std::conj(fs[j]);
                if (deplete) out_p[j] = -std::conj(cph) * fs[j] * fi[j];
            }
        }
    };

    // restrict a source term to the spectral support by a round trip through
    // the grid's plans (only used by truncated oracle runs on small grids)
    auto project = [&](std::vector<std::complex<double>>& ks, std::vector<std::complex<double>>& ki,
                       std::vector<std::complex<double>>& kp) {
        w.save_s.assign(s.begin(), s.end());
        w.save_i.assign(i.begin(), i.end());
        w.save_p.assign(p.begin(), p.end());
        std::copy(ks.begin(), ks.end(), s.begin());
        std::copy(ki.begin(), ki.end(), i.begin());
        if (deplete)
            std::copy(kp.begin(), kp.end(), p.begin());
        else
            std::fill(p.begin(), p.end(), std::complex<double>{0.0, 0.0});
        apply_mask_direct(fields);
        std::copy(s.begin(), s.end(), ks.begin());
        std::copy(i.begin(), i.end(), ki.begin());
        if (deplete) std::copy(p.begin(), p.end(), kp.begin());
        std::copy(w.save_s.begin(), w.save_s.end(), s.begin());
        std::copy(w.save_i.begin(), w.save_i.end(), i.begin());
        std::copy(w.save_p.begin(), w.save_p.end(), p.begin());
    };

    eval(s, i, p, z0, w.k_s, w.k_i, w.k_p);
    if (project_rhs) project(w.k_s, w.k_i, w.k_p);

    for (std::size_t j = 0; j < n; ++j) {
        w.mid_s[j] = s[j] + 0.5 * dz * w.k_s[j];
        w.mid_i[j] = i[j] + 0.5 * dz * w.k_i[j];
        if (deplete) w.mid_p[j] = p[j] + 0.5 * dz * w.k_p[j];
    }
    eval(w.mid_s, w.mid_i, deplete ? std::span<const std::complex<double>>(w.mid_p) : p,
         z0 + 0.5 * dz, w.k_s, w.k_i, w.k_p);
    if (project_rhs) project(w.k_s, w.k_i, w.k_p);

    double max_abs2 = 0.0;
    bool bad = false;
    for (std::size_t j = 0; j < n; ++j) {
        s[j] += dz * w.k_s[j];
        i[j] += dz * w.k_i[j];
        if (deplete) p[j] += dz * w.k_p[j];
        const double m2 = std::norm(s[j]) + std::norm(i[j]);
        if (m2 > max_abs2) max_abs2 = m2;
    }
    if (!std::isfinite(max_abs2)) bad = true;
    if (bad)
        throw DivergenceError("nonlinear step diverged (NaN/overflow)", fields.z,
                              std::sqrt(max_abs2));
}

void Propagator::propagate(FieldGrid& fields, int steps,
                           const std::function<void(int, double)>& progress) {
    if (steps < 1) throw std::invalid_argument("propagate: steps must be >= 1");
    const double dz = medium_.l_c / steps;
    if (dz_ != dz) build_phase_tables(dz);

    // Strang ordering with merged interior half steps:
    // L(dz/2) N(dz) [L(dz) N(dz)]^{steps-1} L(dz/2).
    // The QPM phase in N references the start of each nonlinear interval.
    fields.forward_fft();
    apply_phases(fields, 0);
    fields.backward_fft();

    double z_nl = fields.z;  // nonlinear frame
    fields.z += 0.5 * dz;

    for (int st = 0; st < steps; ++st) {
        nonlinear_step(fields, dz, z_nl);
        z_nl += dz;
        fields.forward_fft();
        apply_phases(fields, st + 1 == steps ? 0 : 1);
        fields.backward_fft();
        fields.z += (st + 1 == steps) ? 0.5 * dz : dz;
        if (progress) progress(st + 1, fields.z);
    }
}

}  // namespace hexpdc
