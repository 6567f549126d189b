#include <algorithm>
#include <array>
#include <bit>
#include <iterator>
#include <string>
#include <vector>

#include "hafband/lhaf.hpp"
#include "lhaf_detail.hpp"

namespace hafband {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Frontier after row r: sorted columns c > r that some row <= r couples to.
// Bit k of a mask is frontier[k].
struct FrontierStep {
    std::vector<std::size_t> frontier;
    std::vector<std::size_t> prev_bit;  // bit of frontier[k] in the previous frontier, or kNone
    std::size_t row_bit = kNone;        // bit of the current row in the previous frontier
};

FrontierStep advance(const std::vector<std::size_t>& prev, std::size_t r,
                     const std::vector<std::size_t>& support) {
    FrontierStep step;
    std::vector<std::size_t> carried;
    for (std::size_t k = 0; k < prev.size(); ++k) {
        if (prev[k] == r) {
            step.row_bit = k;
        } else {
            carried.push_back(prev[k]);
        }
    }
    std::set_union(carried.begin(), carried.end(), support.begin(), support.end(),
                   std::back_inserter(step.frontier));
    step.prev_bit.resize(step.frontier.size(), kNone);
    for (std::size_t k = 0, j = 0; k < step.frontier.size(); ++k) {
        while (j < prev.size() && prev[j] < step.frontier[k]) ++j;
        if (j < prev.size() && prev[j] == step.frontier[k]) step.prev_bit[k] = j;
    }
    return step;
}

template <class Acc, bool Checked>
Complex sparse_kernel(const SymmetricMatrix& b, const BandProfile& profile, std::size_t max_width) {
    const std::size_t n = b.size();
    const std::size_t table = std::size_t{1} << std::max<std::size_t>(max_width, 1);
    std::vector<Complex> prev(table, 0.0);
    std::vector<Complex> curr(table, 0.0);
    prev[0] = 1.0;
    std::size_t prev_count = 1;
    std::vector<std::size_t> frontier;

    std::array<Complex, kMaxWindow> coupling{};
    // Mask translation, one lookup table per byte of the current mask.
    std::array<std::array<std::size_t, 256>, (kMaxWindow + 7) / 8> translate{};

    for (std::size_t r = 0; r < n; ++r) {
        const auto& support = profile.per_row_support[r];
        FrontierStep step = advance(frontier, r, support);
        const std::size_t width = step.frontier.size();
        const std::size_t count = std::size_t{1} << width;
        const std::size_t max_pop = r + 1;
        const std::size_t prev_limit = std::size_t{1} << frontier.size();
        const Complex diag = b(r, r);

        std::size_t new_mask = 0;
        std::size_t coupled_mask = 0;
        for (std::size_t k = 0; k < width; ++k) {
            const std::size_t c = step.frontier[k];
            if (step.prev_bit[k] == kNone) new_mask |= std::size_t{1} << k;
            if (std::binary_search(support.begin(), support.end(), c)) {
                coupled_mask |= std::size_t{1} << k;
                coupling[k] = b(r, c);
            } else {
                coupling[k] = 0.0;
            }
        }
        const std::size_t chunks = (width + 7) / 8;
        for (std::size_t c = 0; c < chunks; ++c) {
            for (std::size_t v = 0; v < 256; ++v) {
                std::size_t out = 0;
                for (std::size_t j = 0; j < 8; ++j) {
                    const std::size_t k = 8 * c + j;
                    if ((v >> j & 1) && k < width && step.prev_bit[k] != kNone) {
                        out |= std::size_t{1} << step.prev_bit[k];
                    }
                }
                translate[c][v] = out;
            }
        }
        auto to_prev = [&](std::size_t m) {
            std::size_t out = 0;
            for (std::size_t c = 0; c < chunks; ++c) out |= translate[c][(m >> (8 * c)) & 0xff];
            return out;
        };
        auto read = [&](std::size_t idx) -> const Complex& {
            if constexpr (Checked) detail::check_read(idx, prev_limit, prev_count, prev, r);
            return prev[idx];
        };
        const std::size_t row_bit =
            step.row_bit == kNone ? 0 : std::size_t{1} << step.row_bit;

        for (std::size_t m = 0; m < count; ++m) {
            const bool guarded = static_cast<std::size_t>(std::popcount(m)) > max_pop;
            if (guarded && !Checked) {
                curr[m] = 0.0;
                continue;
            }
            const std::size_t fresh = m & new_mask;
            Complex value = 0.0;
            if (fresh) {
                // A column first seen in this row can only be matched by this row.
                if (std::has_single_bit(fresh)) {
                    const auto k = static_cast<std::size_t>(std::countr_zero(fresh));
                    value = detail::mul(coupling[k], read(to_prev(m ^ fresh)));
                }
            } else {
                const std::size_t pm = to_prev(m);
                Acc acc;
                if (row_bit) acc.add(read(pm | row_bit));
                acc.add(detail::mul(diag, read(pm)));
                for (std::size_t bits = m & coupled_mask; bits; bits &= bits - 1) {
                    const auto k = static_cast<std::size_t>(std::countr_zero(bits));
                    acc.add(detail::mul(coupling[k],
                                        read(pm ^ (std::size_t{1} << step.prev_bit[k]))));
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
        frontier = std::move(step.frontier);
    }
    return prev[0];
}

std::size_t max_frontier(const BandProfile& profile) {
    std::vector<std::size_t> frontier;
    std::size_t best = 0;
    for (std::size_t r = 0; r < profile.size(); ++r) {
        frontier = advance(frontier, r, profile.per_row_support[r]).frontier;
        best = std::max(best, frontier.size());
        if (best > kMaxWindow) break;
    }
    return best;
}

}  // namespace

Complex lhaf_sparse(const SymmetricMatrix& b, const BandProfile& profile,
                    const LhafOptions& options) {
    const std::size_t n = b.size();
    if (profile.size() != n) {
        throw std::invalid_argument("band profile does not match matrix dimension");
    }
    for (std::size_t r = 0; r < n; ++r) {
        const auto& s = profile.per_row_support[r];
        if (!std::is_sorted(s.begin(), s.end()) || (!s.empty() && (s.front() <= r || s.back() >= n))) {
            throw std::invalid_argument("row " + std::to_string(r) +
                                        ": support must be sorted columns above the diagonal");
        }
    }
    if (n == 0) return 1.0;
    const std::size_t width = max_frontier(profile);
    if (width > kMaxWindow) {
        throw WindowTooLarge("sparse frontier exceeds " + std::to_string(kMaxWindow) +
                             " columns; the matrix is effectively dense");
    }
    if (options.checked) {
        return options.compensated ? sparse_kernel<detail::CompensatedSum, true>(b, profile, width)
                                   : sparse_kernel<detail::PlainSum, true>(b, profile, width);
    }
    return options.compensated ? sparse_kernel<detail::CompensatedSum, false>(b, profile, width)
                               : sparse_kernel<detail::PlainSum, false>(b, profile, width);
}

Complex lhaf_sparse(const SymmetricMatrix& b, double tol) {
    return lhaf_sparse(b, bandwidth_of(b, tol));
}

}  // namespace hafband
