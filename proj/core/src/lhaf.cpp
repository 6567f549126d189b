#include "hafband/lhaf.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <string>
#include <vector>

#include "lhaf_detail.hpp"

namespace hafband {

namespace {

// Coefficient tables for step t live in windows of the next w indices:
// bit k of a step-t mask is element t + 1 + k (0-based row t). In the
// previous step's window the same element sits at bit k + 1 and element t
// itself is bit 0, so translating a mask is a left shift.
template <class Acc, bool Checked>
Complex banded_kernel(const SymmetricMatrix& b, std::size_t w) {
    const std::size_t n = b.size();
    const std::size_t table = std::size_t{1} << std::max<std::size_t>(w, 1);
    std::vector<Complex> prev(table, 0.0);
    std::vector<Complex> curr(table, 0.0);
    prev[0] = 1.0;

    std::array<Complex, kMaxWindow> coupling{};
    std::size_t prev_count = 1;  // entries of `prev` that may be nonzero

    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t width = std::min(r + w, n - 1) - r;
        const std::size_t count = std::size_t{1} << width;
        const std::size_t max_pop = std::min(r + 1, w);
        const Complex* row = b.row(r);
        const Complex diag = row[r];
        for (std::size_t k = 0; k < width; ++k) coupling[k] = row[r + 1 + k];

        // Element r + w is outside the previous window; only row r reaches it.
        const bool full = width == w && w > 0;
        const std::size_t top = full ? std::size_t{1} << (w - 1) : 0;
        // Readable range of `prev`: the previous window holds min(w, n - r) elements.
        const std::size_t prev_limit = std::size_t{1} << std::min(w, n - r);

        auto read = [&](std::size_t idx) -> const Complex& {
            if constexpr (Checked) detail::check_read(idx, prev_limit, prev_count, prev, r);
            return prev[idx];
        };

        for (std::size_t m = 0; m < count; ++m) {
            const bool guarded = static_cast<std::size_t>(std::popcount(m)) > max_pop;
            if (guarded && !Checked) {
                curr[m] = 0.0;
                continue;
            }
            Complex value;
            if (full && (m & top)) {
                value = detail::mul(coupling[w - 1], read((m ^ top) << 1));
            } else {
                const std::size_t pm = m << 1;
                Acc acc;
                if (w > 0) acc.add(read(pm | 1));
                acc.add(detail::mul(diag, read(pm)));
                for (std::size_t bits = m; bits; bits &= bits - 1) {
                    const auto k = static_cast<std::size_t>(std::countr_zero(bits));
                    acc.add(detail::mul(coupling[k], read(pm ^ (std::size_t{2} << k))));
                }
                value = acc.value();
            }
            if constexpr (Checked) {
                if (guarded) {
                    detail::check_guarded_zero(value, m, r);
                    value = 0.0;
                }
            }
            curr[m] = value;
        }
        std::fill(curr.begin() + static_cast<std::ptrdiff_t>(count),
                  curr.begin() + static_cast<std::ptrdiff_t>(std::max(count, prev_count)), 0.0);
        std::swap(prev, curr);
        prev_count = count;
    }
    return prev[0];
}

}  // namespace

Complex lhaf_banded(const SymmetricMatrix& b, const BandProfile& profile,
                    const LhafOptions& options) {
    const std::size_t n = b.size();
    if (profile.size() != n) {
        throw std::invalid_argument("band profile does not match matrix dimension");
    }
    if (n == 0) return 1.0;
    const std::size_t w = std::min(profile.bandwidth, n - 1);
    if (w > kMaxWindow) {
        throw WindowTooLarge("bandwidth " + std::to_string(w) + " exceeds the limit of " +
                             std::to_string(kMaxWindow) + "; the matrix is effectively dense");
    }
    if (options.checked) {
        return options.compensated ? banded_kernel<detail::CompensatedSum, true>(b, w)
                                   : banded_kernel<detail::PlainSum, true>(b, w);
    }
    return options.compensated ? banded_kernel<detail::CompensatedSum, false>(b, w)
                               : banded_kernel<detail::PlainSum, false>(b, w);
}

Complex lhaf_banded(const SymmetricMatrix& b, double tol) {
    return lhaf_banded(b, bandwidth_of(b, tol));
}

Complex haf_banded(const SymmetricMatrix& b, const BandProfile& profile,
                   const LhafOptions& options) {
    return lhaf_banded(b.without_diagonal(), profile, options);
}

Complex haf_banded(const SymmetricMatrix& b, double tol) {
    return haf_banded(b, bandwidth_of(b, tol));
}

}  // namespace hafband
