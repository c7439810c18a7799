#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hexpdc/bogoliubov.hpp"

namespace hexpdc {

/// Zero-mean-capable Gaussian state over a small set of labeled modes.
/// Covariance is the symmetric (Wigner) ordered matrix over quadratures
/// (x1, p1, x2, p2, ...) with vacuum = identity/2; x = (a + a^dag)/sqrt(2).
class GaussianModeState {
  public:
    static GaussianModeState vacuum(std::vector<std::string> labels);

    int n_modes() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    const Eigen::MatrixXd& covariance() const { return cov_; }
    const Eigen::VectorXd& mean() const { return mean_; }
    Eigen::MatrixXd& covariance() { return cov_; }
    Eigen::VectorXd& mean() { return mean_; }

    int index_of(const std::string& label) const;

    /// Sigma -> S Sigma S^T, mean -> S mean.
    void apply_symplectic(const Eigen::MatrixXd& S);

    /// <n_i> = (Sigma_xx + Sigma_pp - 1)/2 + (mean_x^2 + mean_p^2)/2.
    double mean_photon_number(int mode) const;
    std::vector<double> intensities() const;

    /// <a_i^dag a_j> and <a_i a_j> reconstructed from the covariance
    /// (zero-mean part only).
    std::complex<double> normal_moment(int i, int j) const;   // alpha_ij
    std::complex<double> anomalous_moment(int i, int j) const;  // beta_ij

    double smallest_symplectic_eigenvalue() const;

    /// Throws StateValidityError when the smallest symplectic eigenvalue
    /// drops below 1/2 - tol.
    void require_physical(double tol = 1e-9) const;

  private:
    GaussianModeState(std::vector<std::string> labels, Eigen::MatrixXd cov, Eigen::VectorXd mean);
    std::vector<std::string> labels_;
    Eigen::MatrixXd cov_;
    Eigen::VectorXd mean_;
};

/// Symplectic form Omega = diag blocks [[0,1],[-1,0]] in (x1,p1,...) ordering.
Eigen::MatrixXd symplectic_form(int n_modes);

/// 4x4 symplectic of the two-mode squeezer a1' = U a1 + V a2^dag (and 1<->2).
Eigen::MatrixXd two_mode_squeezer_symplectic(const std::complex<double>& U,
                                             const std::complex<double>& V);

/// Embed a two-mode symplectic block into an n-mode identity at modes (i, j).
Eigen::MatrixXd embed_two_mode(const Eigen::MatrixXd& S4, int n_modes, int i, int j);

/// Real orthogonal 2x2 mixing R acting identically on x and p of modes (i, j):
/// a_i' = R(0,0) a_i + R(0,1) a_j ; a_j' = R(1,0) a_i + R(1,1) a_j.
Eigen::MatrixXd mode_mixer_symplectic(const Eigen::Matrix2d& R, int n_modes, int i, int j);

/// Pairwise photon-number statistics of a zero-mean Gaussian state via Wick
/// factorization:  Cov(n_i, n_j) = |alpha_ij|^2 + |beta_ij|^2 + delta_ij <n_i>.
struct CorrelationReport {
    std::vector<std::string> labels;
    Eigen::MatrixXd photon_covariance;   // Cov(n_i, n_j)
    Eigen::MatrixXd g2;                  // <n_i n_j>/(<n_i><n_j>), diag: <a+a+aa>/<n>^2
    Eigen::VectorXd mean_photons;
    Eigen::MatrixXd xx_sum_variance;     // Var(x_i + x_j)
    Eigen::MatrixXd xx_diff_variance;    // Var(x_i - x_j)
    Eigen::MatrixXd pp_sum_variance;     // Var(p_i + p_j)
    Eigen::MatrixXd pp_diff_variance;    // Var(p_i - p_j)

    double number_difference_variance(int i, int j) const;  // Var(n_i - n_j)
};

CorrelationReport correlations(const GaussianModeState& state, double validity_tol = 1e-9);

}  // namespace hexpdc
