#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "hafband/matcore.hpp"

namespace hafband {

/// Squeezing strengths s_i >= 0 per input mode (phase fixed to zero; s = 0
/// is vacuum on that mode).
struct SqueezeConfig {
    std::vector<double> strengths;

    static SqueezeConfig uniform(std::size_t modes, double s) {
        return {std::vector<double>(modes, s)};
    }
    std::size_t modes() const { return strengths.size(); }
};

/// Gaussian state in the (a^dagger_1..a^dagger_M, a_1..a_M) ordering:
/// sigma is the symmetrized covariance, disp the mean of that operator vector.
struct GaussianState {
    std::size_t modes = 0;
    Eigen::MatrixXcd sigma;
    Eigen::VectorXcd disp;

    static GaussianState vacuum(std::size_t modes);
};

/// Matrices that turn a Gaussian state into detection probabilities.
struct KernelMatrices {
    Eigen::MatrixXcd sigma_q;      // sigma + I/2
    SymmetricMatrix a_tilde;       // X (I - sigma_q^{-1})
    std::vector<Complex> y_tilde;  // X sigma_q^{-1} disp
    SymmetricMatrix a;             // a_tilde with y_tilde on the diagonal
    /// log of exp(-disp^dagger sigma_q^{-1} disp / 2) / sqrt(det sigma_q).
    double log_prefactor = 0.0;

    double prefactor() const;
};

/// Loop-hafnian evaluator plugged into the probability formulas.
using LhafEngine = std::function<Complex(const SymmetricMatrix&)>;

/// Product of single-mode squeezed vacua. Throws std::invalid_argument on an
/// empty config or a negative or non-finite strength.
GaussianState smss_input(const SqueezeConfig& cfg);

/// Passive network with transfer matrix u (a -> u a). Throws
/// std::invalid_argument when u is not unitary to 1e-10.
GaussianState apply_network(const GaussianState& st, const Eigen::MatrixXcd& u);

/// Throws std::domain_error when sigma_q is not Hermitian positive definite.
KernelMatrices kernel_matrices(const GaussianState& st);

/// B = u diag(tanh s_i) u^T, computed entrywise so structural zeros of u
/// stay exact.
SymmetricMatrix b_matrix(const Eigen::MatrixXcd& u, const SqueezeConfig& cfg);

/// p(n) = prefactor * lhaf(A_n) / prod n_i!. The reduced matrix takes its
/// off-diagonal entries (including those between repeated copies of a row)
/// from A-tilde and its diagonal from y-tilde. Throws std::domain_error if the
/// result has a non-negligible imaginary part or is negative.
double pattern_probability(const KernelMatrices& km, const PhotonPattern& pattern,
                           const LhafEngine& engine);
double pattern_probability(const GaussianState& st, const PhotonPattern& pattern,
                           const LhafEngine& engine);

/// Reduced state on `modes` (in the given order).
GaussianState marginal(const GaussianState& st, std::span<const std::size_t> modes);

/// State of the unmeasured modes (ascending order) after heterodyne outcomes
/// `outcomes[j]` on `measured[j]`:
///   sigma' = sigma_AA - sigma_AB (sigma_BB + I/2)^{-1} sigma_BA
///   disp'  = disp_A + sigma_AB (sigma_BB + I/2)^{-1} (gamma_B - disp_B)
/// with gamma_B = (conj(alpha), alpha).
GaussianState condition_on_heterodyne(const GaussianState& st,
                                      std::span<const std::size_t> measured,
                                      std::span<const Complex> outcomes);

/// Draws heterodyne outcomes for `measured` from the Husimi Q function of
/// their marginal: a Gaussian with mean disp_B and complex covariance
/// sigma_BB + I/2, sampled in real quadratures alpha = x + i p.
std::vector<Complex> sample_heterodyne(const GaussianState& st,
                                       std::span<const std::size_t> measured,
                                       std::mt19937_64& rng);

/// Real quadrature mean and covariance of the measured marginal's Q function,
/// ordered (x_1..x_b, p_1..p_b).
struct QuadratureGaussian {
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;
};
QuadratureGaussian husimi_quadratures(const GaussianState& st, std::span<const std::size_t> measured);

}  // namespace hafband
