#include "hexpdc/fock.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hexpdc/errors.hpp"

namespace hexpdc {

TruncatedFockState::TruncatedFockState(std::vector<std::string> labels, std::vector<int> dims)
    : labels_(std::move(labels)), dims_(std::move(dims)) {
    if (labels_.size() != dims_.size() || labels_.empty())
        throw std::invalid_argument("TruncatedFockState: labels/dims mismatch");
    strides_.resize(dims_.size());
    std::size_t s = 1;
    for (int m = static_cast<int>(dims_.size()) - 1; m >= 0; --m) {
        if (dims_[m] < 1) throw std::invalid_argument("TruncatedFockState: dim must be >= 1");
        strides_[m] = s;
        s *= static_cast<std::size_t>(dims_[m]);
    }
    amp_.assign(s, {0.0, 0.0});
}

std::complex<double>& TruncatedFockState::at(const std::vector<int>& occ) {
    return const_cast<std::complex<double>&>(
        static_cast<const TruncatedFockState*>(this)->at(occ));
}

const std::complex<double>& TruncatedFockState::at(const std::vector<int>& occ) const {
    if (occ.size() != dims_.size()) throw std::invalid_argument("occupation rank mismatch");
    std::size_t idx = 0;
    for (std::size_t m = 0; m < occ.size(); ++m) {
        if (occ[m] < 0 || occ[m] >= dims_[m])
            throw std::out_of_range("occupation outside truncation");
        idx += strides_[m] * static_cast<std::size_t>(occ[m]);
    }
    return amp_[idx];
}

double TruncatedFockState::norm_squared() const {
    double s = 0.0;
    for (const auto& a : amp_) s += std::norm(a);
    return s;
}

void TruncatedFockState::normalize() {
    const double n = std::sqrt(norm_squared());
    if (!(n > 0.0)) throw std::runtime_error("cannot normalize a zero state");
    for (auto& a : amp_) a /= n;
}

std::vector<double> TruncatedFockState::marginal_distribution(int mode) const {
    std::vector<double> p(dims_[mode], 0.0);
    const std::size_t stride = strides_[mode];
    const std::size_t dim = dims_[mode];
    for (std::size_t i = 0; i < amp_.size(); ++i) {
        const int n = static_cast<int>((i / stride) % dim);
        p[n] += std::norm(amp_[i]);
    }
    return p;
}

double TruncatedFockState::mean_photon_number(int mode) const {
    const auto p = marginal_distribution(mode);
    double m = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n) m += static_cast<double>(n) * p[n];
    const double norm = std::accumulate(p.begin(), p.end(), 0.0);
    return norm > 0.0 ? m / norm : 0.0;
}

double TruncatedFockState::photon_number_variance(int mode) const {
    const auto p = marginal_distribution(mode);
    double norm = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n) {
        norm += p[n];
        m1 += static_cast<double>(n) * p[n];
        m2 += static_cast<double>(n) * static_cast<double>(n) * p[n];
    }
    if (!(norm > 0.0)) return 0.0;
    m1 /= norm;
    m2 /= norm;
    return m2 - m1 * m1;
}

TmsvAmplitudes tmsv_amplitudes(const BogoliubovCoefficients& coeff, int N_max) {
    if (N_max < 0) throw std::invalid_argument("tmsv_amplitudes: N_max must be >= 0");
    TmsvAmplitudes out;
    out.c.resize(N_max + 1);
    const double absU = std::abs(coeff.U);
    const std::complex<double> ratio = coeff.U * coeff.V / (absU * absU);
    out.c[0] = 1.0 / absU;
    for (int N = 0; N < N_max; ++N) out.c[N + 1] = out.c[N] * ratio;
    const double t = std::abs(coeff.V) / absU;
    out.norm_deficit = std::pow(t, 2.0 * (N_max + 1));
    return out;
}

namespace {

double log_binomial(int N, int k) {
    return std::lgamma(N + 1.0) - std::lgamma(k + 1.0) - std::lgamma(N - k + 1.0);
}

}  // namespace

TruncatedFockState split_idler_state(const std::vector<std::complex<double>>& c, int N_max) {
    if (static_cast<int>(c.size()) < N_max + 1)
        throw std::invalid_argument("split_idler_state: need amplitudes up to N_max");
    TruncatedFockState state({"s", "i1", "i2"}, {N_max + 1, N_max + 1, N_max + 1});
    for (int N = 0; N <= N_max; ++N) {
        for (int k = 0; k <= N; ++k) {
            const double w = std::exp(0.5 * log_binomial(N, k) - 0.5 * N * std::log(2.0));
            state.at({N, k, N - k}) = c[N] * w;
        }
    }
    return state;
}

TruncatedFockState condition_on_signal(const TruncatedFockState& state, int N) {
    if (state.labels().size() != 3)
        throw std::invalid_argument("condition_on_signal expects a [s, i1, i2] state");
    const auto& dims = state.dims();
    if (N < 0 || N >= dims[0]) throw ConditioningError("signal photon number beyond truncation");

    TruncatedFockState out({state.labels()[1], state.labels()[2]}, {dims[1], dims[2]});
    double prob = 0.0;
    for (int k1 = 0; k1 < dims[1]; ++k1)
        for (int k2 = 0; k2 < dims[2]; ++k2) {
            const auto a = state.at({N, k1, k2});
            out.at({k1, k2}) = a;
            prob += std::norm(a);
        }
    if (!(prob > 0.0))
        throw ConditioningError("conditioning on N signal photons has zero probability");
    out.normalize();
    return out;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> conditional_distribution_exact(int N) {
    if (N < 0 || N > 62)
        throw std::invalid_argument("conditional_distribution_exact: need 0 <= N <= 62");
    // Pascal's triangle row N, exact in 64-bit
    std::vector<std::uint64_t> row(N + 1, 0);
    row[0] = 1;
    for (int n = 1; n <= N; ++n)
        for (int k = n; k >= 1; --k) row[k] += row[k - 1];
    const std::uint64_t denom = std::uint64_t(1) << N;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out(N + 1);
    for (int k = 0; k <= N; ++k) out[k] = {row[k], denom};
    return out;
}

SpontaneousFourModeState spontaneous_four_mode_state(double g0l, double D, double l_c) {
    if (g0l < 0.0) throw std::invalid_argument("g0l must be >= 0");
    const double x = 0.5 * D * l_c;
    const double sinc = (x == 0.0) ? 1.0 : std::sin(x) / x;
    const std::complex<double> amp =
        g0l * sinc * std::exp(std::complex<double>(0.0, -x));

    SpontaneousFourModeState out{
        TruncatedFockState({"b_s", "c_s", "b_i", "c_i"}, {2, 2, 2, 2}), g0l < 0.05};
    out.state.at({0, 0, 0, 0}) = 1.0;
    out.state.at({1, 0, 0, 1}) = amp;  // b_s+ c_i+
    out.state.at({1, 0, 1, 0}) = amp;  // b_s+ b_i+
    out.state.at({0, 1, 1, 0}) = amp;  // c_s+ b_i+
    // c_s+ c_i+ has no contributing microscopic process; stays exactly zero
    return out;
}

TmsvMoments tmsv_moments(const TmsvAmplitudes& amps, double ratio2) {
    const int M = static_cast<int>(amps.c.size()) - 1;
    double p0 = 0.0, p1 = 0.0, p2 = 0.0;
    for (int N = 0; N <= M; ++N) {
        const double P = std::norm(amps.c[N]);
        p0 += P;
        p1 += N * P;
        p2 += double(N) * N * P;
    }
    // geometric tail P_N = P_M * ratio2^(N-M), N > M
    const double x = ratio2;
    if (x > 0.0 && x < 1.0) {
        const double PM = std::norm(amps.c[M]);
        const double s1 = x / (1.0 - x);
        const double s2 = x / ((1.0 - x) * (1.0 - x));
        const double s3 = x * (1.0 + x) / std::pow(1.0 - x, 3);
        p0 += PM * s1;
        p1 += PM * (M * s1 + s2);
        p2 += PM * (double(M) * M * s1 + 2.0 * M * s2 + s3);
    }
    TmsvMoments m;
    m.norm_deficit = amps.norm_deficit;
    m.mean_signal = p1 / p0;
    m.var_signal = p2 / p0 - m.mean_signal * m.mean_signal;
    // per N-sector the idler split is Binomial(N, 1/2): <k> = N/2,
    // <k^2> = N/4 + N^2/4
    m.mean_split_idler = 0.5 * m.mean_signal;
    const double k2 = 0.25 * (p1 / p0) + 0.25 * (p2 / p0);
    m.var_split_idler = k2 - m.mean_split_idler * m.mean_split_idler;
    return m;
}

}  // namespace hexpdc
