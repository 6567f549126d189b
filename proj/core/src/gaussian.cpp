#include "hafband/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hafband {

namespace {

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

constexpr double kUnitaryTol = 1e-10;
constexpr double kHermitianTol = 1e-10;
// Absolute floor (in probability units) for the realness check.
constexpr double kProbabilityFloor = 1e-12;

Index idx(std::size_t i) { return static_cast<Index>(i); }

// Positions of modes in the 2M ordering: creation parts, then annihilation parts.
std::vector<Index> quadrature_rows(std::span<const std::size_t> modes, std::size_t total) {
    std::vector<Index> rows;
    rows.reserve(2 * modes.size());
    for (std::size_t m : modes) rows.push_back(idx(m));
    for (std::size_t m : modes) rows.push_back(idx(m + total));
    return rows;
}

MatrixXcd take(const MatrixXcd& src, const std::vector<Index>& rows, const std::vector<Index>& cols) {
    MatrixXcd out(idx(rows.size()), idx(cols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) out(idx(r), idx(c)) = src(rows[r], cols[c]);
    }
    return out;
}

VectorXcd take(const VectorXcd& src, const std::vector<Index>& rows) {
    VectorXcd out(idx(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) out(idx(r)) = src(rows[r]);
    return out;
}

void check_modes(std::span<const std::size_t> modes, std::size_t total) {
    std::vector<bool> seen(total, false);
    for (std::size_t m : modes) {
        if (m >= total || seen[m]) throw std::invalid_argument("mode list has an invalid or repeated mode");
        seen[m] = true;
    }
}

// Swap the creation and annihilation halves (left multiplication by X).
MatrixXcd swap_halves(const MatrixXcd& m) {
    const Index half = m.rows() / 2;
    MatrixXcd out(m.rows(), m.cols());
    out.topRows(half) = m.bottomRows(half);
    out.bottomRows(half) = m.topRows(half);
    return out;
}

SymmetricMatrix to_symmetric(const MatrixXcd& m, double tol) {
    const auto n = static_cast<std::size_t>(m.rows());
    std::vector<Complex> buffer(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) buffer[i * n + j] = m(idx(i), idx(j));
    }
    return SymmetricMatrix::from_dense(n, buffer, tol);
}

}  // namespace

GaussianState GaussianState::vacuum(std::size_t modes) {
    GaussianState st;
    st.modes = modes;
    st.sigma = MatrixXcd::Identity(idx(2 * modes), idx(2 * modes)) * 0.5;
    st.disp = VectorXcd::Zero(idx(2 * modes));
    return st;
}

double KernelMatrices::prefactor() const { return std::exp(log_prefactor); }

GaussianState smss_input(const SqueezeConfig& cfg) {
    const std::size_t m = cfg.modes();
    if (m == 0) throw std::invalid_argument("squeeze config needs at least one mode");
    GaussianState st = GaussianState::vacuum(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double s = cfg.strengths[i];
        if (!std::isfinite(s) || s < 0) {
            throw std::invalid_argument("squeezing strength must be finite and non-negative");
        }
        const double ch = 0.5 * std::cosh(2 * s);
        const double sh = 0.5 * std::sinh(2 * s);
        st.sigma(idx(i), idx(i)) = ch;
        st.sigma(idx(i + m), idx(i + m)) = ch;
        st.sigma(idx(i), idx(i + m)) = sh;
        st.sigma(idx(i + m), idx(i)) = sh;
    }
    return st;
}

GaussianState apply_network(const GaussianState& st, const MatrixXcd& u) {
    const std::size_t m = st.modes;
    if (u.rows() != idx(m) || u.cols() != idx(m)) {
        throw std::invalid_argument("network size does not match state");
    }
    const MatrixXcd id = MatrixXcd::Identity(idx(m), idx(m));
    if (m > 0 && (u * u.adjoint() - id).cwiseAbs().maxCoeff() > kUnitaryTol) {
        throw std::invalid_argument("network matrix is not unitary");
    }
    // a -> u a, hence a^dagger -> conj(u) a^dagger.
    MatrixXcd t = MatrixXcd::Zero(idx(2 * m), idx(2 * m));
    t.topLeftCorner(idx(m), idx(m)) = u.conjugate();
    t.bottomRightCorner(idx(m), idx(m)) = u;
    GaussianState out;
    out.modes = m;
    out.sigma = t * st.sigma * t.adjoint();
    out.sigma = (0.5 * (out.sigma + out.sigma.adjoint())).eval();
    out.disp = t * st.disp;
    return out;
}

KernelMatrices kernel_matrices(const GaussianState& st) {
    const Index dim = idx(2 * st.modes);
    if (st.sigma.rows() != dim || st.sigma.cols() != dim || st.disp.size() != dim) {
        throw std::invalid_argument("state dimensions are inconsistent");
    }
    KernelMatrices km;
    km.sigma_q = st.sigma + MatrixXcd::Identity(dim, dim) * 0.5;
    if (dim == 0) {
        km.log_prefactor = 0.0;
        return km;
    }
    const double scale = std::max(1.0, km.sigma_q.cwiseAbs().maxCoeff());
    if ((km.sigma_q - km.sigma_q.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol * scale) {
        throw std::domain_error("covariance matrix is not Hermitian");
    }
    Eigen::LDLT<MatrixXcd> ldlt(km.sigma_q);
    if (ldlt.info() != Eigen::Success) throw std::domain_error("sigma_q factorization failed");
    const Eigen::VectorXd d = ldlt.vectorD().real();
    if (d.minCoeff() <= 0.0) throw std::domain_error("sigma_q is not positive definite");

    const MatrixXcd inv = ldlt.solve(MatrixXcd::Identity(dim, dim));
    const MatrixXcd a_tilde = swap_halves(MatrixXcd::Identity(dim, dim) - inv);
    const VectorXcd w = ldlt.solve(st.disp);
    const VectorXcd y = swap_halves(w);

    const double a_scale = std::max(1.0, a_tilde.cwiseAbs().maxCoeff());
    km.a_tilde = to_symmetric(a_tilde, 1e-8 * a_scale);
    km.y_tilde.assign(y.data(), y.data() + y.size());
    km.a = km.a_tilde;
    for (std::size_t i = 0; i < km.y_tilde.size(); ++i) km.a.set(i, i, km.y_tilde[i]);

    const double quad = st.disp.dot(w).real();
    km.log_prefactor = -0.5 * quad - 0.5 * d.array().log().sum();
    return km;
}

SymmetricMatrix b_matrix(const MatrixXcd& u, const SqueezeConfig& cfg) {
    const std::size_t m = cfg.modes();
    if (u.rows() != idx(m) || u.cols() != idx(m)) {
        throw std::invalid_argument("network size does not match squeeze config");
    }
    const MatrixXcd id = MatrixXcd::Identity(idx(m), idx(m));
    if (m > 0 && (u * u.adjoint() - id).cwiseAbs().maxCoeff() > kUnitaryTol) {
        throw std::invalid_argument("network matrix is not unitary");
    }
    std::vector<double> t(m);
    for (std::size_t k = 0; k < m; ++k) {
        if (!std::isfinite(cfg.strengths[k]) || cfg.strengths[k] < 0) {
            throw std::invalid_argument("squeezing strength must be finite and non-negative");
        }
        t[k] = std::tanh(cfg.strengths[k]);
    }
    SymmetricMatrix b(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            Complex sum = 0.0;
            for (std::size_t k = 0; k < m; ++k) {
                sum += (u(idx(i), idx(k)) * u(idx(j), idx(k))) * t[k];
            }
            b.set(i, j, sum);
        }
    }
    return b;
}

double pattern_probability(const KernelMatrices& km, const PhotonPattern& pattern,
                           const LhafEngine& engine) {
    if (2 * pattern.modes() != km.y_tilde.size()) {
        throw std::invalid_argument("pattern length does not match state modes");
    }
    const SymmetricMatrix reduced = reduce_by_pattern(km.a_tilde, km.y_tilde, pattern);
    const Complex lhaf = engine(reduced);
    double log_scale = km.log_prefactor;
    for (std::uint32_t c : pattern.counts()) log_scale -= std::lgamma(static_cast<double>(c) + 1.0);
    const Complex p = std::exp(log_scale) * lhaf;
    if (std::abs(p.imag()) > 1e-9 * std::abs(p) + kProbabilityFloor) {
        throw std::domain_error("probability has imaginary part " + std::to_string(p.imag()));
    }
    if (p.real() < -kProbabilityFloor) {
        throw std::domain_error("negative probability " + std::to_string(p.real()));
    }
    return std::max(0.0, p.real());
}

double pattern_probability(const GaussianState& st, const PhotonPattern& pattern,
                           const LhafEngine& engine) {
    if (pattern.modes() != st.modes) {
        throw std::invalid_argument("pattern length does not match state modes");
    }
    return pattern_probability(kernel_matrices(st), pattern, engine);
}

GaussianState marginal(const GaussianState& st, std::span<const std::size_t> modes) {
    check_modes(modes, st.modes);
    const auto rows = quadrature_rows(modes, st.modes);
    GaussianState out;
    out.modes = modes.size();
    out.sigma = take(st.sigma, rows, rows);
    out.disp = take(st.disp, rows);
    return out;
}

GaussianState condition_on_heterodyne(const GaussianState& st, std::span<const std::size_t> measured,
                                      std::span<const Complex> outcomes) {
    if (measured.empty()) throw std::invalid_argument("no modes to condition on");
    if (outcomes.size() != measured.size()) {
        throw std::invalid_argument("one heterodyne outcome is needed per measured mode");
    }
    check_modes(measured, st.modes);
    std::vector<std::size_t> kept;
    for (std::size_t m = 0; m < st.modes; ++m) {
        if (std::find(measured.begin(), measured.end(), m) == measured.end()) kept.push_back(m);
    }
    const auto a_rows = quadrature_rows(kept, st.modes);
    const auto b_rows = quadrature_rows(measured, st.modes);
    const MatrixXcd s_aa = take(st.sigma, a_rows, a_rows);
    const MatrixXcd s_ab = take(st.sigma, a_rows, b_rows);
    const MatrixXcd s_bb =
        take(st.sigma, b_rows, b_rows) + MatrixXcd::Identity(idx(b_rows.size()), idx(b_rows.size())) * 0.5;

    Eigen::LDLT<MatrixXcd> ldlt(s_bb);
    if (ldlt.info() != Eigen::Success || ldlt.vectorD().real().minCoeff() <= 0.0) {
        throw std::domain_error("measured block of sigma_q is singular");
    }
    const std::size_t b = measured.size();
    VectorXcd gamma(idx(2 * b));
    for (std::size_t j = 0; j < b; ++j) {
        gamma(idx(j)) = std::conj(outcomes[j]);
        gamma(idx(j + b)) = outcomes[j];
    }
    const VectorXcd shift = ldlt.solve(gamma - take(st.disp, b_rows));

    GaussianState out;
    out.modes = kept.size();
    out.sigma = s_aa - s_ab * ldlt.solve(s_ab.adjoint());
    out.sigma = (0.5 * (out.sigma + out.sigma.adjoint())).eval();
    out.disp = take(st.disp, a_rows) + s_ab * shift;
    return out;
}

QuadratureGaussian husimi_quadratures(const GaussianState& st, std::span<const std::size_t> measured) {
    check_modes(measured, st.modes);
    const auto rows = quadrature_rows(measured, st.modes);
    const std::size_t b = measured.size();
    const Index n = idx(2 * b);
    const MatrixXcd q = take(st.sigma, rows, rows) + MatrixXcd::Identity(n, n) * 0.5;
    const VectorXcd mu = take(st.disp, rows);

    // (x, p) = W^{-1} (conj(alpha), alpha) with alpha = x + i p.
    MatrixXcd w_inv = MatrixXcd::Zero(n, n);
    const Complex i_unit(0.0, 1.0);
    for (std::size_t j = 0; j < b; ++j) {
        w_inv(idx(j), idx(j)) = 0.5;
        w_inv(idx(j), idx(j + b)) = 0.5;
        w_inv(idx(j + b), idx(j)) = 0.5 * i_unit;
        w_inv(idx(j + b), idx(j + b)) = -0.5 * i_unit;
    }
    QuadratureGaussian g;
    g.mean = (w_inv * mu).real();
    const MatrixXcd cov = w_inv * q * w_inv.adjoint();
    g.cov = (0.5 * (cov + cov.adjoint())).real();
    return g;
}

std::vector<Complex> sample_heterodyne(const GaussianState& st, std::span<const std::size_t> measured,
                                       std::mt19937_64& rng) {
    const QuadratureGaussian g = husimi_quadratures(st, measured);
    const std::size_t b = measured.size();
    if (b == 0) return {};
    Eigen::LLT<Eigen::MatrixXd> llt(g.cov);
    if (llt.info() != Eigen::Success) throw std::domain_error("Q-function covariance is not positive definite");
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd z(idx(2 * b));
    for (Index i = 0; i < z.size(); ++i) z(i) = normal(rng);
    const Eigen::VectorXd v = g.mean + llt.matrixL() * z;
    std::vector<Complex> out(b);
    for (std::size_t j = 0; j < b; ++j) out[j] = {v(idx(j)), v(idx(j + b))};
    return out;
}

}  // namespace hafband
