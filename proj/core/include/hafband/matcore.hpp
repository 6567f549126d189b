#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace hafband {

using Complex = std::complex<double>;

/// Dense n x n complex symmetric matrix.
///
/// Every write goes through `set`, which stores the value in both triangles,
/// so `(i, j)` and `(j, i)` are always bit-identical. Entries must be finite.
class SymmetricMatrix {
public:
    SymmetricMatrix() = default;
    explicit SymmetricMatrix(std::size_t n);

    /// Builds from a dense row-major buffer of n*n entries. Throws
    /// std::invalid_argument if |m_ij - m_ji| exceeds `symmetry_tol` or an
    /// entry is not finite. The stored matrix is the exact symmetrization
    /// (m_ij + m_ji) / 2.
    static SymmetricMatrix from_dense(std::size_t n, std::span<const Complex> row_major,
                                      double symmetry_tol = 0.0);

    static SymmetricMatrix identity(std::size_t n);
    static SymmetricMatrix diagonal(std::span<const Complex> diag);

    std::size_t size() const { return n_; }
    bool empty() const { return n_ == 0; }

    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, Complex value);

    /// Row-major view of all n*n entries.
    std::span<const Complex> data() const { return data_; }
    const Complex* row(std::size_t i) const { return data_.data() + i * n_; }

    /// Copy with the diagonal replaced by zeros.
    SymmetricMatrix without_diagonal() const;

    bool operator==(const SymmetricMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<Complex> data_;
};

/// Band structure of a symmetric matrix measured under an absolute tolerance.
struct BandProfile {
    std::size_t bandwidth = 0;
    /// For each row t, the sorted columns c > t with |m(t, c)| > tol.
    std::vector<std::vector<std::size_t>> per_row_support;

    std::size_t size() const { return per_row_support.size(); }
    /// Largest per-row support count.
    std::size_t max_row_support() const;
};

/// Photon-number pattern n_1 ... n_M.
class PhotonPattern {
public:
    PhotonPattern() = default;
    explicit PhotonPattern(std::vector<std::uint32_t> counts);
    /// Throws std::invalid_argument on any negative count.
    static PhotonPattern from_signed(std::span<const long long> counts);

    std::size_t modes() const { return counts_.size(); }
    std::uint64_t total() const { return total_; }
    std::uint32_t operator[](std::size_t i) const { return counts_[i]; }
    const std::vector<std::uint32_t>& counts() const { return counts_; }

    /// True when no mode holds more than one photon.
    bool collision_free() const;

    bool operator==(const PhotonPattern&) const = default;
    auto operator<=>(const PhotonPattern& other) const { return counts_ <=> other.counts_; }

private:
    std::vector<std::uint32_t> counts_;
    std::uint64_t total_ = 0;
};

/// Smallest w with |m(i, j)| <= tol whenever |i - j| > w, plus per-row supports.
BandProfile bandwidth_of(const SymmetricMatrix& m, double tol = 0.0);

/// result(i, j) = m(perm[i], perm[j]). Throws std::invalid_argument unless
/// `perm` is a bijection on {0, ..., n-1}.
SymmetricMatrix symmetric_permute(const SymmetricMatrix& m, std::span<const std::size_t> perm);

/// Index order that interleaves the two halves of a 2M-dimensional index
/// space: (0, M, 1, M+1, ..., M-1, 2M-1).
std::vector<std::size_t> interleave_permutation(std::size_t modes);

/// Row/column selection for a photon pattern over a 2M matrix: for each mode
/// i with n_i > 0 in ascending order, n_i copies of index i followed by n_i
/// copies of index i + M.
std::vector<std::size_t> pattern_indices(const PhotonPattern& pattern);

/// A_n: rows and columns i and i + M repeated n_i times (deleted when n_i = 0),
/// in mode-interleaved order. Throws std::invalid_argument if the matrix is
/// not 2M x 2M.
SymmetricMatrix reduce_by_pattern(const SymmetricMatrix& a, const PhotonPattern& pattern);

/// Same selection, but entries between distinct copies come from `kernel`
/// (including its diagonal) and the result's diagonal comes from `loops`.
/// This is the form used for detection probabilities, where `kernel` is the
/// A-tilde matrix and `loops` the y-tilde vector.
SymmetricMatrix reduce_by_pattern(const SymmetricMatrix& kernel, std::span<const Complex> loops,
                                  const PhotonPattern& pattern);

/// Random complex symmetric matrix whose entries inside the band |i - j| <= w
/// are uniform on the unit square [0,1) + i[0,1), and exactly zero outside.
SymmetricMatrix random_banded(std::size_t n, std::size_t w, std::mt19937_64& rng);

}  // namespace hafband
