#include "hexpdc/field.hpp"

#include <cmath>
#include <mutex>
#include <random>

#include <fftw3.h>

#include "hexpdc/errors.hpp"

namespace hexpdc {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

void PumpPulse::validate(const GridSpec& grid) const {
    std::vector<std::string> failures;
    if (!(duration_fwhm > 0.0)) failures.push_back("pump duration must be > 0");
    if (!(waist_x > 0.0 && waist_y > 0.0)) failures.push_back("pump waists must be > 0");
    if (!(photons > 0.0)) failures.push_back("pump photons must be > 0");
    if (g0_lc < 0.0) failures.push_back("g0*l_c target must be >= 0");
    // periodic box: keep the beam well inside to suppress wraparound
    if (waist_x > 0.25 * grid.Lx)
        failures.push_back("waist_x > Lx/4 (periodic wraparound not suppressed)");
    if (waist_y > 0.25 * grid.Ly)
        failures.push_back("waist_y > Ly/4 (periodic wraparound not suppressed)");
    const double tau_amp = duration_fwhm / std::sqrt(2.0 * std::log(2.0));
    if (tau_amp > 0.25 * grid.T) failures.push_back("pulse duration > T/4 (temporal wraparound)");
    if (!failures.empty()) throw ConfigError(std::move(failures));
}

FieldGrid::FieldGrid(const GridSpec& spec) : spec_(spec) {
    const std::size_t n = spec_.size();
    data_ = reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(3 * n));
    if (!data_) throw std::bad_alloc();
    std::fill(data_, data_ + 3 * n, std::complex<double>{0.0, 0.0});

    std::lock_guard<std::mutex> lock(planner_mutex());
    const int dims[3] = {spec_.nx, spec_.ny, spec_.nt};
    auto* raw = reinterpret_cast<fftw_complex*>(data_);
    // planning clobbers the arrays; fields are seeded afterwards
    plan_fwd_ = fftw_plan_many_dft(3, dims, 3, raw, nullptr, 1, static_cast<int>(n), raw, nullptr,
                                   1, static_cast<int>(n), FFTW_FORWARD, FFTW_MEASURE);
    plan_bwd_ = fftw_plan_many_dft(3, dims, 3, raw, nullptr, 1, static_cast<int>(n), raw, nullptr,
                                   1, static_cast<int>(n), FFTW_BACKWARD, FFTW_MEASURE);
    if (!plan_fwd_ || !plan_bwd_) throw std::runtime_error("FFTW planning failed");
}

FieldGrid::~FieldGrid() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    if (plan_bwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
    fftw_free(data_);
}

std::span<std::complex<double>> FieldGrid::field(Field f) {
    return {data_ + static_cast<std::size_t>(f) * spec_.size(), spec_.size()};
}

std::span<const std::complex<double>> FieldGrid::field(Field f) const {
    return {data_ + static_cast<std::size_t>(f) * spec_.size(), spec_.size()};
}

void FieldGrid::forward_fft() { fftw_execute(static_cast<fftw_plan>(plan_fwd_)); }
void FieldGrid::backward_fft() { fftw_execute(static_cast<fftw_plan>(plan_bwd_)); }

std::array<double, 3> FieldGrid::photon_numbers() const {
    std::array<double, 3> out{0.0, 0.0, 0.0};
    const std::size_t n = spec_.size();
    for (int f = 0; f < 3; ++f) {
        double s = 0.0;
        const auto* p = data_ + static_cast<std::size_t>(f) * n;
        for (std::size_t i = 0; i < n; ++i) s += std::norm(p[i]);
        out[f] = s;
    }
    return out;
}

std::complex<double> FieldGrid::fourier_coefficient(Field f, int ix, int iy, int it) const {
    // single-mode projection: sum A(x) e^{-i(q.r - Omega t)} / sqrt(N)
    const std::size_t n = spec_.size();
    const auto* p = data_ + static_cast<std::size_t>(f) * n;
    const double qx = spec_.qx_axis()[ix];
    const double qy = spec_.qy_axis()[iy];
    const double Om = spec_.omega_axis()[it];
    const auto xs = spec_.x_axis();
    const auto ys = spec_.y_axis();
    const auto ts = spec_.t_axis();
    std::complex<double> acc{0.0, 0.0};
    for (int jx = 0; jx < spec_.nx; ++jx)
        for (int jy = 0; jy < spec_.ny; ++jy)
            for (int jt = 0; jt < spec_.nt; ++jt) {
                const double phase = qx * xs[jx] + qy * ys[jy] - Om * ts[jt];
                acc += p[spec_.index(jx, jy, jt)] *
                       std::complex<double>(std::cos(phase), -std::sin(phase));
            }
    return acc / std::sqrt(static_cast<double>(n));
}

std::uint64_t realization_seed(std::uint64_t master_seed, std::uint64_t realization_index) {
    // splitmix64 over the combined words
    std::uint64_t x = master_seed + 0x9E3779B97F4A7C15ULL * (realization_index + 1);
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

void FieldGrid::seed_vacuum(const PumpPulse& pulse, std::uint64_t seed) {
    pulse.validate(spec_);
    const std::size_t n = spec_.size();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 0.5);  // variance 1/4 per component

    auto* s = data_ + static_cast<std::size_t>(kSignal) * n;
    auto* i = data_ + static_cast<std::size_t>(kIdler) * n;
    for (std::size_t j = 0; j < n; ++j) s[j] = {gauss(rng), gauss(rng)};
    for (std::size_t j = 0; j < n; ++j) i[j] = {gauss(rng), gauss(rng)};

    // deterministic coherent pump; amplitude from the photon-number integral
    const double tau_amp = pulse.duration_fwhm / std::sqrt(2.0 * std::log(2.0));
    const double integral =
        pulse.waist_x * pulse.waist_y * tau_amp * std::pow(M_PI / 2.0, 1.5);
    const double cell = spec_.dx() * spec_.dy() * spec_.dt();
    pump_peak_ = std::sqrt(pulse.photons * cell / integral);

    auto* p = data_ + static_cast<std::size_t>(kPump) * n;
    const auto xs = spec_.x_axis();
    const auto ys = spec_.y_axis();
    const auto ts = spec_.t_axis();
    for (int jx = 0; jx < spec_.nx; ++jx) {
        const double gx = std::exp(-xs[jx] * xs[jx] / (pulse.waist_x * pulse.waist_x));
        const std::complex<double> tilt(std::cos(pulse.tilt_qp * xs[jx]),
                                        std::sin(pulse.tilt_qp * xs[jx]));
        for (int jy = 0; jy < spec_.ny; ++jy) {
            const double gy = std::exp(-ys[jy] * ys[jy] / (pulse.waist_y * pulse.waist_y));
            for (int jt = 0; jt < spec_.nt; ++jt) {
                const double gt = std::exp(-ts[jt] * ts[jt] / (tau_amp * tau_amp));
                p[spec_.index(jx, jy, jt)] = pump_peak_ * gx * gy * gt * tilt;
            }
        }
    }
    z = 0.0;
}

}  // namespace hexpdc
