#pragma once

#include <cstddef>
#include <stdexcept>

#include "hafband/matcore.hpp"

namespace hafband {

/// Largest subset window the kernels accept; the coefficient tables hold
/// 2^w entries each.
inline constexpr std::size_t kMaxWindow = 30;

/// Thrown when the band (or sparse frontier) is wider than kMaxWindow, i.e.
/// the matrix is effectively dense for these kernels.
class WindowTooLarge : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct LhafOptions {
    /// Neumaier-compensated accumulation of every coefficient. Meant for
    /// stress tests with large cancellations; roughly 2x slower.
    bool compensated = false;
    /// Verify the table discipline while running: every read of the previous
    /// table stays inside that step's window, and coefficients skipped by the
    /// |Z| <= min(t, w) guard evaluate to exactly zero. Throws std::logic_error
    /// on violation.
    bool checked = false;
};

/// Loop hafnian of a banded symmetric matrix in O(n w 2^w).
///
/// Processes rows in order, keeping coefficients C^t_Z for every subset Z of
/// the next w indices: C^t_Z sums the weights of partial matchings on rows
/// 1..t whose pairs reaching past t land exactly on Z. Only entries with
/// |i - j| <= profile.bandwidth are read. Returns 1 for the empty matrix.
Complex lhaf_banded(const SymmetricMatrix& b, const BandProfile& profile,
                    const LhafOptions& options = {});
/// Measures the band with `tol` first.
Complex lhaf_banded(const SymmetricMatrix& b, double tol = 0.0);

/// Loop hafnian driven by per-row supports instead of a contiguous band.
///
/// The subset window after row t is the frontier: every column c > t that
/// some row <= t couples to. For a banded matrix this is the band window, so
/// both kernels agree; for matrices such as arrowheads the frontier can be
/// much wider than any single row's support. Only entries listed in
/// profile.per_row_support (plus the diagonal) are read.
Complex lhaf_sparse(const SymmetricMatrix& b, const BandProfile& profile,
                    const LhafOptions& options = {});
Complex lhaf_sparse(const SymmetricMatrix& b, double tol = 0.0);

/// Hafnian: the loop hafnian with the diagonal ignored.
Complex haf_banded(const SymmetricMatrix& b, const BandProfile& profile,
                   const LhafOptions& options = {});
Complex haf_banded(const SymmetricMatrix& b, double tol = 0.0);

}  // namespace hafband
