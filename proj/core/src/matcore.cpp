#include "hafband/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hafband {

namespace {

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

SymmetricMatrix::SymmetricMatrix(std::size_t n) : n_(n), data_(n * n) {}

SymmetricMatrix SymmetricMatrix::from_dense(std::size_t n, std::span<const Complex> row_major,
                                            double symmetry_tol) {
    if (row_major.size() != n * n) {
        throw std::invalid_argument("dense buffer has " + std::to_string(row_major.size()) +
                                    " entries, expected " + std::to_string(n * n));
    }
    SymmetricMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            Complex a = row_major[i * n + j];
            Complex b = row_major[j * n + i];
            if (!is_finite(a) || !is_finite(b)) {
                throw std::invalid_argument("non-finite entry at (" + std::to_string(i) + ", " +
                                            std::to_string(j) + ")");
            }
            if (std::abs(a - b) > symmetry_tol) {
                throw std::invalid_argument("matrix is not symmetric at (" + std::to_string(i) +
                                            ", " + std::to_string(j) + ")");
            }
            m.set(i, j, i == j ? a : (a + b) * 0.5);
        }
    }
    return m;
}

SymmetricMatrix SymmetricMatrix::identity(std::size_t n) {
    SymmetricMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1.0);
    return m;
}

SymmetricMatrix SymmetricMatrix::diagonal(std::span<const Complex> diag) {
    SymmetricMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m.set(i, i, diag[i]);
    return m;
}

void SymmetricMatrix::set(std::size_t i, std::size_t j, Complex value) {
    if (!is_finite(value)) {
        throw std::invalid_argument("non-finite matrix entry");
    }
    data_[i * n_ + j] = value;
    data_[j * n_ + i] = value;
}

SymmetricMatrix SymmetricMatrix::without_diagonal() const {
    SymmetricMatrix m = *this;
    for (std::size_t i = 0; i < n_; ++i) m.data_[i * n_ + i] = 0.0;
    return m;
}

std::size_t BandProfile::max_row_support() const {
    std::size_t best = 0;
    for (const auto& row : per_row_support) best = std::max(best, row.size());
    return best;
}

PhotonPattern::PhotonPattern(std::vector<std::uint32_t> counts)
    : counts_(std::move(counts)),
      total_(std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0})) {}

PhotonPattern PhotonPattern::from_signed(std::span<const long long> counts) {
    std::vector<std::uint32_t> out;
    out.reserve(counts.size());
    for (long long c : counts) {
        if (c < 0) throw std::invalid_argument("negative photon count");
        out.push_back(static_cast<std::uint32_t>(c));
    }
    return PhotonPattern(std::move(out));
}

bool PhotonPattern::collision_free() const {
    return std::all_of(counts_.begin(), counts_.end(), [](std::uint32_t c) { return c <= 1; });
}

BandProfile bandwidth_of(const SymmetricMatrix& m, double tol) {
    if (tol < 0) throw std::invalid_argument("tolerance must be non-negative");
    const std::size_t n = m.size();
    BandProfile profile;
    profile.per_row_support.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Complex* row = m.row(i);
        auto& support = profile.per_row_support[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(row[j]) > tol) {
                support.push_back(j);
                profile.bandwidth = std::max(profile.bandwidth, j - i);
            }
        }
    }
    return profile;
}

SymmetricMatrix symmetric_permute(const SymmetricMatrix& m, std::span<const std::size_t> perm) {
    const std::size_t n = m.size();
    if (perm.size() != n) throw std::invalid_argument("permutation length does not match matrix");
    std::vector<bool> seen(n, false);
    for (std::size_t p : perm) {
        if (p >= n || seen[p]) throw std::invalid_argument("index map is not a permutation");
        seen[p] = true;
    }
    SymmetricMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) out.set(i, j, m(perm[i], perm[j]));
    }
    return out;
}

std::vector<std::size_t> interleave_permutation(std::size_t modes) {
    std::vector<std::size_t> perm;
    perm.reserve(2 * modes);
    for (std::size_t i = 0; i < modes; ++i) {
        perm.push_back(i);
        perm.push_back(i + modes);
    }
    return perm;
}

std::vector<std::size_t> pattern_indices(const PhotonPattern& pattern) {
    const std::size_t modes = pattern.modes();
    std::vector<std::size_t> idx;
    idx.reserve(2 * pattern.total());
    for (std::size_t i = 0; i < modes; ++i) {
        idx.insert(idx.end(), pattern[i], i);
        idx.insert(idx.end(), pattern[i], i + modes);
    }
    return idx;
}

SymmetricMatrix reduce_by_pattern(const SymmetricMatrix& a, const PhotonPattern& pattern) {
    if (a.size() != 2 * pattern.modes()) {
        throw std::invalid_argument("matrix size " + std::to_string(a.size()) +
                                    " does not match pattern with " +
                                    std::to_string(pattern.modes()) + " modes");
    }
    const auto idx = pattern_indices(pattern);
    SymmetricMatrix out(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        for (std::size_t j = i; j < idx.size(); ++j) out.set(i, j, a(idx[i], idx[j]));
    }
    return out;
}

SymmetricMatrix reduce_by_pattern(const SymmetricMatrix& kernel, std::span<const Complex> loops,
                                  const PhotonPattern& pattern) {
    if (kernel.size() != 2 * pattern.modes() || loops.size() != kernel.size()) {
        throw std::invalid_argument("kernel/loop sizes do not match pattern with " +
                                    std::to_string(pattern.modes()) + " modes");
    }
    const auto idx = pattern_indices(pattern);
    SymmetricMatrix out(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        out.set(i, i, loops[idx[i]]);
        for (std::size_t j = i + 1; j < idx.size(); ++j) out.set(i, j, kernel(idx[i], idx[j]));
    }
    return out;
}

SymmetricMatrix random_banded(std::size_t n, std::size_t w, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    SymmetricMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n && j <= i + w; ++j) {
            double re = unit(rng);
            double im = unit(rng);
            m.set(i, j, Complex(re, im));
        }
    }
    return m;
}

}  // namespace hafband
