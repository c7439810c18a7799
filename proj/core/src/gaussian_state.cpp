#include "hexpdc/gaussian_state.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "hexpdc/errors.hpp"

namespace hexpdc {

GaussianModeState::GaussianModeState(std::vector<std::string> labels, Eigen::MatrixXd cov,
                                     Eigen::VectorXd mean)
    : labels_(std::move(labels)), cov_(std::move(cov)), mean_(std::move(mean)) {}

GaussianModeState GaussianModeState::vacuum(std::vector<std::string> labels) {
    const int n = static_cast<int>(labels.size());
    return GaussianModeState(std::move(labels), 0.5 * Eigen::MatrixXd::Identity(2 * n, 2 * n),
                             Eigen::VectorXd::Zero(2 * n));
}

int GaussianModeState::index_of(const std::string& label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw std::invalid_argument("unknown mode label: " + label);
    return static_cast<int>(it - labels_.begin());
}

void GaussianModeState::apply_symplectic(const Eigen::MatrixXd& S) {
    if (S.rows() != cov_.rows() || S.cols() != cov_.cols())
        throw std::invalid_argument("symplectic dimension mismatch");
    cov_ = S * cov_ * S.transpose();
    mean_ = S * mean_;
}

double GaussianModeState::mean_photon_number(int mode) const {
    const int i = 2 * mode;
    const double quad = 0.5 * (cov_(i, i) + cov_(i + 1, i + 1)) - 0.5;
    const double disp = 0.5 * (mean_(i) * mean_(i) + mean_(i + 1) * mean_(i + 1));
    return quad + disp;
}

std::vector<double> GaussianModeState::intensities() const {
    std::vector<double> out(n_modes());
    for (int m = 0; m < n_modes(); ++m) out[m] = mean_photon_number(m);
    return out;
}

std::complex<double> GaussianModeState::normal_moment(int i, int j) const {
    const int xi = 2 * i, pi = 2 * i + 1, xj = 2 * j, pj = 2 * j + 1;
    const double re = 0.5 * (cov_(xi, xj) + cov_(pi, pj) - (i == j ? 1.0 : 0.0));
    const double im = 0.5 * (cov_(xi, pj) - cov_(pi, xj));
    return {re, im};
}

std::complex<double> GaussianModeState::anomalous_moment(int i, int j) const {
    const int xi = 2 * i, pi = 2 * i + 1, xj = 2 * j, pj = 2 * j + 1;
    const double re = 0.5 * (cov_(xi, xj) - cov_(pi, pj));
    const double im = 0.5 * (cov_(xi, pj) + cov_(pi, xj));
    return {re, im};
}

double GaussianModeState::smallest_symplectic_eigenvalue() const {
    const int n = n_modes();
    const Eigen::MatrixXd O = symplectic_form(n);
    Eigen::MatrixXcd M = std::complex<double>(0.0, 1.0) * O * cov_;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(M, /*computeEigenvectors=*/false);
    double nu_min = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 2 * n; ++k) nu_min = std::min(nu_min, std::abs(solver.eigenvalues()(k)));
    return nu_min;
}

void GaussianModeState::require_physical(double tol) const {
    const double nu = smallest_symplectic_eigenvalue();
    if (nu < 0.5 - tol)
        throw StateValidityError("covariance violates the uncertainty relation", nu);
}

Eigen::MatrixXd symplectic_form(int n_modes) {
    Eigen::MatrixXd O = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int i = 0; i < n_modes; ++i) {
        O(2 * i, 2 * i + 1) = 1.0;
        O(2 * i + 1, 2 * i) = -1.0;
    }
    return O;
}

Eigen::MatrixXd two_mode_squeezer_symplectic(const std::complex<double>& U,
                                             const std::complex<double>& V) {
    const double Ur = U.real(), Ui = U.imag(), Vr = V.real(), Vi = V.imag();
    Eigen::MatrixXd S(4, 4);
    // x1' = Ur x1 - Ui p1 + Vr x2 + Vi p2 ; p1' = Ui x1 + Ur p1 + Vi x2 - Vr p2
    S << Ur, -Ui, Vr, Vi,
         Ui,  Ur, Vi, -Vr,
         Vr,  Vi, Ur, -Ui,
         Vi, -Vr, Ui,  Ur;
    return S;
}

Eigen::MatrixXd embed_two_mode(const Eigen::MatrixXd& S4, int n_modes, int i, int j) {
    Eigen::MatrixXd S = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
    const int idx[4] = {2 * i, 2 * i + 1, 2 * j, 2 * j + 1};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) S(idx[a], idx[b]) = S4(a, b);
    return S;
}

Eigen::MatrixXd mode_mixer_symplectic(const Eigen::Matrix2d& R, int n_modes, int i, int j) {
    Eigen::MatrixXd S = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
    const int mm[2] = {i, j};
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            S(2 * mm[r], 2 * mm[c]) = R(r, c);
            S(2 * mm[r] + 1, 2 * mm[c] + 1) = R(r, c);
        }
    return S;
}

double CorrelationReport::number_difference_variance(int i, int j) const {
    return photon_covariance(i, i) + photon_covariance(j, j) - 2.0 * photon_covariance(i, j);
}

CorrelationReport correlations(const GaussianModeState& state, double validity_tol) {
    state.require_physical(validity_tol);
    const int n = state.n_modes();
    CorrelationReport rep;
    rep.labels = state.labels();
    rep.photon_covariance.setZero(n, n);
    rep.g2.setZero(n, n);
    rep.mean_photons.setZero(n);
    rep.xx_sum_variance.setZero(n, n);
    rep.xx_diff_variance.setZero(n, n);
    rep.pp_sum_variance.setZero(n, n);
    rep.pp_diff_variance.setZero(n, n);

    const auto& C = state.covariance();
    for (int i = 0; i < n; ++i) rep.mean_photons(i) = state.mean_photon_number(i);

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const auto a = state.normal_moment(i, j);
            const auto b = state.anomalous_moment(i, j);
            double cov = std::norm(a) + std::norm(b);
            if (i == j) cov += rep.mean_photons(i);  // delta-term of Wick factorization
            rep.photon_covariance(i, j) = cov;

            const double ni = rep.mean_photons(i), nj = rep.mean_photons(j);
            if (ni > 0.0 && nj > 0.0) {
                if (i == j) {
                    // g2 = <a+a+aa>/<n>^2 = 1 + (Var(n) - <n>)/<n>^2
                    rep.g2(i, i) = 1.0 + (cov - ni) / (ni * ni);
                } else {
                    rep.g2(i, j) = 1.0 + cov / (ni * nj);
                }
            }

            const int xi = 2 * i, xj = 2 * j, pi = 2 * i + 1, pj = 2 * j + 1;
            rep.xx_sum_variance(i, j) = C(xi, xi) + C(xj, xj) + 2 * C(xi, xj);
            rep.xx_diff_variance(i, j) = C(xi, xi) + C(xj, xj) - 2 * C(xi, xj);
            rep.pp_sum_variance(i, j) = C(pi, pi) + C(pj, pj) + 2 * C(pi, pj);
            rep.pp_diff_variance(i, j) = C(pi, pi) + C(pj, pj) - 2 * C(pi, pj);
        }
    }
    return rep;
}

}  // namespace hexpdc
