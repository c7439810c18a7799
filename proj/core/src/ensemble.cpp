#include "hexpdc/ensemble.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <mutex>
#include <sstream>
#include <thread>

#include "hexpdc/constants.hpp"
#include "hexpdc/errors.hpp"

namespace hexpdc {

namespace {

namespace fs = std::filesystem;

struct RealizationData {
    bool done = false;
    std::vector<double> xy_s, xy_i, xl_s, xl_i, yl_s, yl_i;
    std::vector<std::complex<double>> probe_s, probe_i;
};

std::string config_fingerprint(const EnsembleConfig& c) {
    std::ostringstream os;
    os.precision(17);
    os << c.seed << '|' << c.realizations << '|' << c.steps << '|' << c.grid.nx << 'x' << c.grid.ny
       << 'x' << c.grid.nt << '|' << c.pulse.g0_lc << '|' << c.medium.l_c << '|'
       << c.dealias_fraction << '|' << c.project_rhs;
    return os.str();
}

std::string checkpoint_path(const std::string& dir, int r) {
    char name[32];
    std::snprintf(name, sizeof(name), "real_%06d.bin", r);
    return (fs::path(dir) / name).string();
}

void save_checkpoint(const std::string& dir, int r, const RealizationData& d,
                     const std::string& fingerprint) {
    ArrayFile f;
    f.set_meta("fingerprint", fingerprint);
    f.set_meta("realization", std::to_string(r));
    auto shape1 = [](const std::vector<double>& v) {
        return std::vector<std::size_t>{v.size()};
    };
    f.put("xy_s", d.xy_s, shape1(d.xy_s));
    f.put("xy_i", d.xy_i, shape1(d.xy_i));
    f.put("xl_s", d.xl_s, shape1(d.xl_s));
    f.put("xl_i", d.xl_i, shape1(d.xl_i));
    f.put("yl_s", d.yl_s, shape1(d.yl_s));
    f.put("yl_i", d.yl_i, shape1(d.yl_i));
    f.put("probe_s", d.probe_s, {d.probe_s.size()});
    f.put("probe_i", d.probe_i, {d.probe_i.size()});
    const std::string path = checkpoint_path(dir, r);
    const std::string tmp = path + ".tmp";
    f.save(tmp);
    fs::rename(tmp, path);
}

bool load_checkpoint(const std::string& dir, int r, RealizationData& d,
                     const std::string& fingerprint) {
    const std::string path = checkpoint_path(dir, r);
    if (!fs::exists(path)) return false;
    try {
        ArrayFile f = ArrayFile::load(path);
        const auto it = f.meta().find("fingerprint");
        if (it == f.meta().end() || it->second != fingerprint) return false;
        d.xy_s = f.get("xy_s").f8;
        d.xy_i = f.get("xy_i").f8;
        d.xl_s = f.get("xl_s").f8;
        d.xl_i = f.get("xl_i").f8;
        d.yl_s = f.get("yl_s").f8;
        d.yl_i = f.get("yl_i").f8;
        d.probe_s = f.get("probe_s").c16;
        d.probe_i = f.get("probe_i").c16;
        d.done = true;
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

template <typename T>
std::vector<T> fftshift2(const std::vector<T>& in, int n0, int n1) {
    std::vector<T> out(in.size());
    for (int i = 0; i < n0; ++i)
        for (int j = 0; j < n1; ++j)
            out[static_cast<std::size_t>((i + n0 / 2) % n0) * n1 + (j + n1 / 2) % n1] =
                in[static_cast<std::size_t>(i) * n1 + j];
    return out;
}

std::vector<double> shifted_axis(std::vector<double> ax) {
    const int n = static_cast<int>(ax.size());
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>((i + n / 2) % n)] = ax[i];
    return out;
}

}  // namespace

double pump_peak_amplitude(const PumpPulse& pulse, const GridSpec& grid) {
    const double tau_amp = pulse.duration_fwhm / std::sqrt(2.0 * std::log(2.0));
    const double integral = pulse.waist_x * pulse.waist_y * tau_amp * std::pow(M_PI / 2.0, 1.5);
    const double cell = grid.dx() * grid.dy() * grid.dt();
    return std::sqrt(pulse.photons * cell / integral);
}

std::vector<double> SpectralMaps::photon_xy(FieldGrid::Field f, int n_t) const {
    const auto& src = (f == FieldGrid::kSignal) ? xy_signal : xy_idler;
    std::vector<double> out(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) out[i] = src[i] - 0.5 * n_t;
    return out;
}

std::vector<double> SpectralMaps::photon_xl(FieldGrid::Field f, int n_y) const {
    const auto& src = (f == FieldGrid::kSignal) ? xl_signal : xl_idler;
    std::vector<double> out(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) out[i] = src[i] - 0.5 * n_y;
    return out;
}

std::vector<double> SpectralMaps::photon_yl(FieldGrid::Field f, int n_x) const {
    const auto& src = (f == FieldGrid::kSignal) ? yl_signal : yl_idler;
    std::vector<double> out(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) out[i] = src[i] - 0.5 * n_x;
    return out;
}

EnsembleResult run_ensemble(const EnsembleConfig& config) {
    const GridSpec& grid = config.grid;
    grid.validate(config.medium.lattice.G_x, config.pulse.tilt_qp);
    config.pulse.validate(grid);

    PropagationMedium medium = config.medium;
    if (medium.coupling == 0.0 && config.pulse.g0_lc > 0.0)
        medium.coupling = PropagationMedium::coupling_for(config.pulse.g0_lc, medium.l_c,
                                                          pump_peak_amplitude(config.pulse, grid));

    SpectralMask mask = config.mask_override
                            ? *config.mask_override
                            : (config.dealias_fraction > 0.0
                                   ? SpectralMask::anti_alias(grid, config.dealias_fraction)
                                   : SpectralMask::full(grid));

    const int R = config.realizations;
    std::vector<RealizationData> slots(R);
    const std::string fingerprint = config_fingerprint(config);

    int resumed = 0;
    if (!config.checkpoint_dir.empty()) {
        fs::create_directories(config.checkpoint_dir);
        for (int r = 0; r < R; ++r)
            if (load_checkpoint(config.checkpoint_dir, r, slots[r], fingerprint)) ++resumed;
    }

    const int hw = static_cast<int>(std::thread::hardware_concurrency());
    const int n_threads = std::max(1, std::min(config.threads > 0 ? config.threads : hw, R));

    std::atomic<int> next{0};
    std::mutex report_mutex;
    StepReport total_report;
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&]() {
        try {
            FieldGrid fields(grid);
            Propagator prop(medium, grid, mask);
            prop.project_rhs = config.project_rhs;
            const std::size_t n = grid.size();
            const double inv_n = 1.0 / static_cast<double>(n);

            for (;;) {
                const int r = next.fetch_add(1);
                if (r >= R) break;
                if (slots[r].done) continue;

                fields.seed_vacuum(config.pulse, realization_seed(config.seed, r));
                if (config.plane_wave_pump) {
                    auto p = fields.field(FieldGrid::kPump);
                    const auto xs = grid.x_axis();
                    for (int jx = 0; jx < grid.nx; ++jx) {
                        const std::complex<double> v(std::cos(config.pulse.tilt_qp * xs[jx]),
                                                     std::sin(config.pulse.tilt_qp * xs[jx]));
                        const std::size_t line = static_cast<std::size_t>(grid.ny) * grid.nt;
                        for (std::size_t j = 0; j < line; ++j)
                            p[static_cast<std::size_t>(jx) * line + j] = v;
                    }
                }
                prop.propagate(fields, config.steps);

                // spectra of the final state
                fields.forward_fft();
                RealizationData d;
                if (config.accumulate_maps) {
                    d.xy_s.assign(static_cast<std::size_t>(grid.nx) * grid.ny, 0.0);
                    d.xy_i.assign(static_cast<std::size_t>(grid.nx) * grid.ny, 0.0);
                    d.xl_s.assign(static_cast<std::size_t>(grid.nx) * grid.nt, 0.0);
                    d.xl_i.assign(static_cast<std::size_t>(grid.nx) * grid.nt, 0.0);
                    d.yl_s.assign(static_cast<std::size_t>(grid.ny) * grid.nt, 0.0);
                    d.yl_i.assign(static_cast<std::size_t>(grid.ny) * grid.nt, 0.0);
                }
                for (int f = 0; f < 2; ++f) {
                    const auto a = fields.field(static_cast<FieldGrid::Field>(f));
                    if (config.accumulate_maps) {
                        auto& xy = f == 0 ? d.xy_s : d.xy_i;
                        auto& xl = f == 0 ? d.xl_s : d.xl_i;
                        auto& yl = f == 0 ? d.yl_s : d.yl_i;
                        for (int ix = 0; ix < grid.nx; ++ix)
                            for (int iy = 0; iy < grid.ny; ++iy) {
                                const std::size_t base = grid.index(ix, iy, 0);
                                double row_sum = 0.0;
                                for (int it = 0; it < grid.nt; ++it) {
                                    const double pwr = std::norm(a[base + it]) * inv_n;
                                    row_sum += pwr;
                                    xl[static_cast<std::size_t>(ix) * grid.nt + it] += pwr;
                                    yl[static_cast<std::size_t>(iy) * grid.nt + it] += pwr;
                                }
                                xy[static_cast<std::size_t>(ix) * grid.ny + iy] = row_sum;
                            }
                    }
                    const auto& probes =
                        f == 0 ? config.probe_modes_signal : config.probe_modes_idler;
                    auto& pa = f == 0 ? d.probe_s : d.probe_i;
                    for (const auto& [ix, iy, it] : probes)
                        pa.push_back(a[grid.index(ix, iy, it)] / std::sqrt(double(n)));
                }
                // fields stay spectral here; re-seeded next realization

                if (!config.checkpoint_dir.empty())
                    save_checkpoint(config.checkpoint_dir, r, d, fingerprint);
                d.done = true;
                slots[r] = std::move(d);
            }
            std::lock_guard<std::mutex> lock(report_mutex);
            total_report.zeroed_photons_signal += prop.report().zeroed_photons_signal;
            total_report.zeroed_photons_idler += prop.report().zeroed_photons_idler;
            total_report.zeroed_photons_pump += prop.report().zeroed_photons_pump;
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };

    std::vector<std::thread> pool;
    for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);

    // deterministic reduction in realization order
    EnsembleResult res;
    res.resumed_from_checkpoint = resumed;
    res.step_report = total_report;
    const std::size_t nxy = static_cast<std::size_t>(grid.nx) * grid.ny;
    const std::size_t nxl = static_cast<std::size_t>(grid.nx) * grid.nt;
    const std::size_t nyl = static_cast<std::size_t>(grid.ny) * grid.nt;
    std::vector<double> xy_s(nxy, 0.0), xy_i(nxy, 0.0), xl_s(nxl, 0.0), xl_i(nxl, 0.0),
        yl_s(nyl, 0.0), yl_i(nyl, 0.0);
    const std::size_t nps = config.probe_modes_signal.size();
    const std::size_t npi = config.probe_modes_idler.size();
    std::vector<double> pn_s(nps, 0.0), pn_s2(nps, 0.0), pn_i(npi, 0.0), pn_i2(npi, 0.0);

    for (int r = 0; r < R; ++r) {
        const auto& d = slots[r];
        if (!d.done) continue;
        ++res.completed;
        if (config.accumulate_maps) {
            for (std::size_t i = 0; i < nxy; ++i) xy_s[i] += d.xy_s[i];
            for (std::size_t i = 0; i < nxy; ++i) xy_i[i] += d.xy_i[i];
            for (std::size_t i = 0; i < nxl; ++i) xl_s[i] += d.xl_s[i];
            for (std::size_t i = 0; i < nxl; ++i) xl_i[i] += d.xl_i[i];
            for (std::size_t i = 0; i < nyl; ++i) yl_s[i] += d.yl_s[i];
            for (std::size_t i = 0; i < nyl; ++i) yl_i[i] += d.yl_i[i];
        }
        for (std::size_t m = 0; m < nps; ++m) {
            const double w = std::norm(d.probe_s[m]);
            pn_s[m] += w;
            pn_s2[m] += w * w;
        }
        for (std::size_t m = 0; m < npi; ++m) {
            const double w = std::norm(d.probe_i[m]);
            pn_i[m] += w;
            pn_i2[m] += w * w;
        }
        res.probe_signal_amps.push_back(d.probe_s);
        res.probe_idler_amps.push_back(d.probe_i);
    }
    const double Rc = std::max(res.completed, 1);
    auto& maps = res.maps;
    maps.realizations = res.completed;
    maps.qx = shifted_axis(grid.qx_axis());
    maps.qy = shifted_axis(grid.qy_axis());
    maps.omega = shifted_axis(grid.omega_axis());
    // Omega axis after negation is descending under the standard shift; flip
    // to ascending together with the map columns
    const bool flip_omega = maps.omega.size() > 1 && maps.omega[1] < maps.omega[0];
    if (flip_omega) std::reverse(maps.omega.begin(), maps.omega.end());
    maps.lambda_signal.resize(grid.nt);
    maps.lambda_idler.resize(grid.nt);
    for (int k = 0; k < grid.nt; ++k) {
        maps.lambda_signal[k] =
            omega_to_wavelength(config.medium.disp.carriers.omega_s + maps.omega[k]);
        maps.lambda_idler[k] =
            omega_to_wavelength(config.medium.disp.carriers.omega_i + maps.omega[k]);
    }
    auto finish2 = [&](std::vector<double>& m, int n0, int n1, bool flip_cols) {
        for (auto& v : m) v /= Rc;
        m = fftshift2(m, n0, n1);
        if (flip_cols) {
            for (int i = 0; i < n0; ++i)
                std::reverse(m.begin() + static_cast<std::ptrdiff_t>(i) * n1,
                             m.begin() + static_cast<std::ptrdiff_t>(i + 1) * n1);
        }
    };
    if (config.accumulate_maps) {
        finish2(xy_s, grid.nx, grid.ny, false);
        finish2(xy_i, grid.nx, grid.ny, false);
        finish2(xl_s, grid.nx, grid.nt, flip_omega);
        finish2(xl_i, grid.nx, grid.nt, flip_omega);
        finish2(yl_s, grid.ny, grid.nt, flip_omega);
        finish2(yl_i, grid.ny, grid.nt, flip_omega);
        maps.xy_signal = std::move(xy_s);
        maps.xy_idler = std::move(xy_i);
        maps.xl_signal = std::move(xl_s);
        maps.xl_idler = std::move(xl_i);
        maps.yl_signal = std::move(yl_s);
        maps.yl_idler = std::move(yl_i);
    }
    auto finalize_probe = [&](std::vector<double>& mean, std::vector<double>& m2,
                              std::vector<double>& out_n, std::vector<double>& out_se) {
        const std::size_t np = mean.size();
        out_n.resize(np);
        out_se.resize(np);
        for (std::size_t m = 0; m < np; ++m) {
            const double mu = mean[m] / Rc;
            const double var = std::max(0.0, m2[m] / Rc - mu * mu);
            out_n[m] = mu - 0.5;
            out_se[m] = std::sqrt(var / Rc);
        }
    };
    finalize_probe(pn_s, pn_s2, res.probe_n_signal, res.probe_n_signal_stderr);
    finalize_probe(pn_i, pn_i2, res.probe_n_idler, res.probe_n_idler_stderr);
    return res;
}

std::vector<double> line_profile_qx(const SpectralMaps& maps, FieldGrid::Field field,
                                    int n_third_axis) {
    const auto m = maps.photon_xy(field, n_third_axis);
    const int nx = static_cast<int>(maps.qx.size());
    const int ny = static_cast<int>(maps.qy.size());
    std::vector<double> profile(nx, 0.0);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) profile[i] += m[static_cast<std::size_t>(i) * ny + j];
    return profile;
}

HotSpotMeasure measure_hot_spot(const SpectralMaps& maps, FieldGrid::Field field, int n_third_axis,
                                double line_center, const std::vector<double>& all_line_centers,
                                double band_halfwidth) {
    const auto m = maps.photon_xy(field, n_third_axis);
    const int nx = static_cast<int>(maps.qx.size());
    const int ny = static_cast<int>(maps.qy.size());
    HotSpotMeasure out;
    out.hot = -std::numeric_limits<double>::infinity();
    out.background = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < nx; ++i) {
        const double qx = maps.qx[i];
        const bool in_line = std::abs(qx - line_center) <= band_halfwidth;
        bool in_any_band = false;
        for (double c : all_line_centers)
            if (std::abs(qx - c) <= 2.0 * band_halfwidth) in_any_band = true;
        for (int j = 0; j < ny; ++j) {
            const double v = m[static_cast<std::size_t>(i) * ny + j];
            if (in_line) out.hot = std::max(out.hot, v);
            if (!in_any_band) out.background = std::max(out.background, v);
        }
    }
    return out;
}

GainExponentFit fit_gain_exponent(const std::vector<std::array<double, 3>>& points) {
    if (points.size() < 2) throw std::invalid_argument("fit_gain_exponent: need >= 2 points");
    GainExponentFit fit;
    fit.points = points;
    const std::size_t n = points.size();
    double sx = 0, sy = 0;
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = std::log(points[i][2]);
        ys[i] = std::log(points[i][1]);
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss_res += r * r;
    }
    fit.slope_stderr = n > 2 ? std::sqrt(ss_res / (n - 2) / sxx) : 0.0;
    const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    fit.adequate_range = (*hi - *lo) >= std::log(2.0);
    return fit;
}

}  // namespace hexpdc
