#include <gtest/gtest.h>

#include <numeric>

#include "hafband/matcore.hpp"
#include "hafband/oracle.hpp"
#include "test_util.hpp"

namespace hafband {
namespace {

using test::random_symmetric;

SymmetricMatrix tridiagonal(std::size_t n, std::mt19937_64& rng) { return random_banded(n, 1, rng); }

TEST(Bandwidth, Examples) {
    std::mt19937_64 rng(1);
    EXPECT_EQ(bandwidth_of(tridiagonal(4, rng)).bandwidth, 1u);
    const std::vector<Complex> d{1.0, 2.0, 3.0};
    EXPECT_EQ(bandwidth_of(SymmetricMatrix::diagonal(d)).bandwidth, 0u);
    EXPECT_EQ(bandwidth_of(random_symmetric(5, rng)).bandwidth, 4u);
    EXPECT_EQ(bandwidth_of(SymmetricMatrix()).bandwidth, 0u);
    EXPECT_EQ(bandwidth_of(SymmetricMatrix(1)).bandwidth, 0u);
}

TEST(Bandwidth, SupportsAndTolerance) {
    SymmetricMatrix m(4);
    m.set(0, 2, {1e-3, 0});
    m.set(1, 2, 1.0);
    m.set(2, 3, {0, 2.0});
    auto p = bandwidth_of(m);
    EXPECT_EQ(p.bandwidth, 2u);
    EXPECT_EQ(p.per_row_support[0], (std::vector<std::size_t>{2}));
    EXPECT_EQ(p.per_row_support[1], (std::vector<std::size_t>{2}));
    EXPECT_EQ(p.per_row_support[2], (std::vector<std::size_t>{3}));
    EXPECT_TRUE(p.per_row_support[3].empty());
    EXPECT_EQ(p.max_row_support(), 1u);
    EXPECT_EQ(bandwidth_of(m, 1e-2).bandwidth, 1u);
    EXPECT_THROW(bandwidth_of(m, -1.0), std::invalid_argument);
}

TEST(Bandwidth, MonotoneUnderZeroingOuterDiagonals) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        SymmetricMatrix m = random_symmetric(9, rng);
        std::size_t last = bandwidth_of(m).bandwidth;
        for (std::size_t k = 8; k >= 1; --k) {
            for (std::size_t i = 0; i + k < 9; ++i) m.set(i, i + k, 0.0);
            const std::size_t now = bandwidth_of(m).bandwidth;
            EXPECT_LE(now, last);
            EXPECT_LT(now, k);
            last = now;
        }
    }
}

TEST(SymmetricMatrix, MirrorsWritesAndRejectsNonFinite) {
    SymmetricMatrix m(3);
    m.set(0, 2, {1.5, -2.0});
    EXPECT_EQ(m(2, 0), m(0, 2));
    EXPECT_THROW(m.set(0, 1, {std::nan(""), 0.0}), std::invalid_argument);
    const std::vector<Complex> bad{1.0, 2.0, 2.5, 1.0};
    EXPECT_THROW(SymmetricMatrix::from_dense(2, bad, 0.1), std::invalid_argument);
    const auto ok = SymmetricMatrix::from_dense(2, bad, 1.0);
    EXPECT_EQ(ok(0, 1), Complex(2.25));
    EXPECT_EQ(ok(1, 0), Complex(2.25));
}

TEST(Permute, IdentityReversalAndErrors) {
    std::mt19937_64 rng(3);
    const SymmetricMatrix m = random_banded(7, 2, rng);
    std::vector<std::size_t> id(7);
    std::iota(id.begin(), id.end(), 0);
    EXPECT_EQ(symmetric_permute(m, id), m);

    std::vector<std::size_t> rev(id.rbegin(), id.rend());
    const SymmetricMatrix r = symmetric_permute(m, rev);
    EXPECT_EQ(bandwidth_of(r).bandwidth, 2u);
    EXPECT_EQ(r(0, 1), m(6, 5));

    std::vector<std::size_t> dup{0, 1, 1, 3, 4, 5, 6};
    EXPECT_THROW(symmetric_permute(m, dup), std::invalid_argument);
    std::vector<std::size_t> out_of_range{0, 1, 2, 3, 4, 5, 7};
    EXPECT_THROW(symmetric_permute(m, out_of_range), std::invalid_argument);
    EXPECT_THROW(symmetric_permute(m, std::vector<std::size_t>{0, 1}), std::invalid_argument);
}

TEST(Permute, LhafIsInvariant) {
    std::mt19937_64 rng(4);
    for (std::size_t n = 1; n <= 8; ++n) {
        const SymmetricMatrix m = random_symmetric(n, rng);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        EXPECT_LT(test::rel_err(lhaf_oracle(symmetric_permute(m, perm)), lhaf_oracle(m)), 1e-12);
    }
}

// [[B, C], [C^T, conj(B)]] with B and C of bandwidth wb.
SymmetricMatrix block_matrix(std::size_t modes, std::size_t wb, bool cross, std::mt19937_64& rng) {
    const SymmetricMatrix b = random_banded(modes, wb, rng);
    SymmetricMatrix out(2 * modes);
    for (std::size_t i = 0; i < modes; ++i) {
        for (std::size_t j = 0; j < modes; ++j) {
            out.set(i, j, b(i, j));
            out.set(i + modes, j + modes, std::conj(b(i, j)));
            const bool in_band = (i > j ? i - j : j - i) <= wb;
            if (cross && in_band) out.set(i, j + modes, test::random_complex(rng));
        }
    }
    return out;
}

TEST(Permute, InterleavedBandwidth) {
    std::mt19937_64 rng(5);
    for (std::size_t wb = 1; wb <= 3; ++wb) {
        const auto perm = interleave_permutation(10);
        // Without cross blocks the two copies of B interleave to 2 wb.
        EXPECT_EQ(bandwidth_of(symmetric_permute(block_matrix(10, wb, false, rng), perm)).bandwidth, 2 * wb);
        // Banded cross blocks add one.
        EXPECT_EQ(bandwidth_of(symmetric_permute(block_matrix(10, wb, true, rng), perm)).bandwidth,
                  2 * wb + 1);
        // Block order keeps the two halves M apart.
        EXPECT_GE(bandwidth_of(block_matrix(10, wb, true, rng)).bandwidth, 10u - wb);
    }
}

TEST(Pattern, FromSignedAndTotals) {
    const std::vector<long long> c{1, 0, 3};
    const auto p = PhotonPattern::from_signed(c);
    EXPECT_EQ(p.total(), 4u);
    EXPECT_FALSE(p.collision_free());
    EXPECT_TRUE(PhotonPattern({1, 0, 1}).collision_free());
    const std::vector<long long> bad{1, -1};
    EXPECT_THROW(PhotonPattern::from_signed(bad), std::invalid_argument);
}

TEST(Reduce, SizesAndOrdering) {
    std::mt19937_64 rng(6);
    const SymmetricMatrix a = random_symmetric(6, rng);  // M = 3
    EXPECT_EQ(reduce_by_pattern(a, PhotonPattern({0, 0, 0})).size(), 0u);

    const auto r = reduce_by_pattern(a, PhotonPattern({0, 2, 1}));
    ASSERT_EQ(r.size(), 6u);
    const std::vector<std::size_t> expect{1, 1, 4, 4, 2, 5};
    EXPECT_EQ(pattern_indices(PhotonPattern({0, 2, 1})), expect);
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(r(i, j), a(expect[i], expect[j]));
    }
    EXPECT_THROW(reduce_by_pattern(a, PhotonPattern({1, 1})), std::invalid_argument);
}

TEST(Reduce, SingleModeSingleRepetition) {
    std::mt19937_64 rng(7);
    const SymmetricMatrix a = random_symmetric(2, rng);
    EXPECT_EQ(reduce_by_pattern(a, PhotonPattern({1})), a);
}

TEST(Reduce, LoopsFormTakesDiagonalFromVector) {
    std::mt19937_64 rng(8);
    const SymmetricMatrix k = random_symmetric(4, rng);
    const std::vector<Complex> y{{1, 1}, {2, 0}, {3, -1}, {4, 2}};
    const auto r = reduce_by_pattern(k, y, PhotonPattern({2, 1}));
    const auto idx = pattern_indices(PhotonPattern({2, 1}));
    ASSERT_EQ(r.size(), 6u);
    for (std::size_t i = 0; i < 6; ++i) {
        EXPECT_EQ(r(i, i), y[idx[i]]);
        for (std::size_t j = i + 1; j < 6; ++j) EXPECT_EQ(r(i, j), k(idx[i], idx[j]));
    }
    // Copies of the same index couple through the kernel's diagonal.
    EXPECT_EQ(r(0, 1), k(0, 0));
}

TEST(RandomBanded, ExactZerosOutsideBand) {
    std::mt19937_64 rng(9);
    const auto m = random_banded(12, 3, rng);
    for (std::size_t i = 0; i < 12; ++i) {
        for (std::size_t j = 0; j < 12; ++j) {
            const std::size_t d = i > j ? i - j : j - i;
            if (d > 3) {
                EXPECT_EQ(m(i, j), Complex(0.0));
            } else {
                EXPECT_GE(m(i, j).real(), 0.0);
                EXPECT_LT(m(i, j).real(), 1.0);
            }
        }
    }
}

}  // namespace
}  // namespace hafband
