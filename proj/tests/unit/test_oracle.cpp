#include <gtest/gtest.h>

#include <set>

#include "hafband/oracle.hpp"
#include "test_util.hpp"

namespace hafband {
namespace {

// I(n) = I(n-1) + (n-1) I(n-2)
std::uint64_t involutions(std::size_t n) {
    std::uint64_t a = 1, b = 1;  // I(0), I(1)
    if (n == 0) return a;
    for (std::size_t k = 2; k <= n; ++k) {
        const std::uint64_t c = b + (k - 1) * a;
        a = b;
        b = c;
    }
    return b;
}

TEST(Oracle, InvolutionCounts) {
    const std::vector<std::uint64_t> expect{1, 1, 2, 4, 10, 26, 76};
    for (std::size_t n = 0; n < expect.size(); ++n) {
        EXPECT_EQ(count_spm(n), expect[n]);
        EXPECT_EQ(involutions(n), expect[n]);
    }
    for (std::size_t n = 7; n <= 11; ++n) EXPECT_EQ(count_spm(n), involutions(n));
}

TEST(Oracle, MatchingsArePartitionsAndDistinct) {
    std::set<std::vector<int>> seen;
    enumerate_spm(6, [&](const Matching& m) {
        std::vector<int> partner(6, -1);
        for (auto l : m.loops) {
            ASSERT_EQ(partner[l], -1);
            partner[l] = static_cast<int>(l);
        }
        for (auto [i, j] : m.pairs) {
            ASSERT_LT(i, j);
            ASSERT_EQ(partner[i], -1);
            ASSERT_EQ(partner[j], -1);
            partner[i] = static_cast<int>(j);
            partner[j] = static_cast<int>(i);
        }
        for (int p : partner) ASSERT_NE(p, -1);
        EXPECT_TRUE(seen.insert(partner).second);
    });
    EXPECT_EQ(seen.size(), 76u);
}

TEST(Oracle, OrderIsSmallestIndexFirst) {
    std::vector<Matching> order;
    enumerate_spm(3, [&](const Matching& m) { order.push_back(m); });
    ASSERT_EQ(order.size(), 4u);
    EXPECT_EQ(order[0].loops, (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_EQ(order[1].loops, (std::vector<std::size_t>{0}));
    EXPECT_EQ(order[2].pairs.front(), (std::pair<std::size_t, std::size_t>{0, 1}));
    EXPECT_EQ(order[3].pairs.front(), (std::pair<std::size_t, std::size_t>{0, 2}));
}

TEST(Oracle, SmallValues) {
    EXPECT_EQ(lhaf_oracle(SymmetricMatrix()), Complex(1.0));
    EXPECT_EQ(haf_oracle(SymmetricMatrix()), Complex(1.0));
    SymmetricMatrix two(2);
    two.set(0, 0, 2.0);
    two.set(1, 1, 3.0);
    two.set(0, 1, 5.0);
    EXPECT_EQ(lhaf_oracle(two), Complex(11.0));
    EXPECT_EQ(haf_oracle(two), Complex(5.0));
    EXPECT_EQ(lhaf_oracle(test::ones(4)), Complex(10.0));
    EXPECT_EQ(haf_oracle(test::ones(4)), Complex(3.0));
    EXPECT_EQ(haf_oracle(test::ones(5)), Complex(0.0));
    EXPECT_EQ(haf_oracle(test::ones(6)), Complex(15.0));
}

TEST(Oracle, AgreesWithExplicitEnumeration) {
    std::mt19937_64 rng(41);
    for (std::size_t n = 0; n <= 8; ++n) {
        const auto m = test::random_symmetric(n, rng);
        Complex sum = 0.0;
        Complex pairs_only = 0.0;
        enumerate_spm(n, [&](const Matching& mt) {
            Complex term = 1.0;
            for (auto l : mt.loops) term *= m(l, l);
            for (auto [i, j] : mt.pairs) term *= m(i, j);
            sum += term;
            if (mt.loops.empty()) pairs_only += term;
        });
        EXPECT_LT(test::rel_err(lhaf_oracle(m), sum), 1e-12);
        EXPECT_LT(test::rel_err(haf_oracle(m), pairs_only), 1e-12);
        EXPECT_LT(test::rel_err(lhaf_oracle(m.without_diagonal()), pairs_only), 1e-12);
    }
}

TEST(Oracle, TridiagonalFiveTerms) {
    std::mt19937_64 rng(42);
    const auto a = random_banded(4, 1, rng);
    const Complex want = a(0, 0) * a(1, 1) * a(2, 2) * a(3, 3) + a(0, 1) * a(2, 2) * a(3, 3) +
                         a(0, 0) * a(1, 2) * a(3, 3) + a(0, 0) * a(1, 1) * a(2, 3) + a(0, 1) * a(2, 3);
    EXPECT_LT(test::rel_err(lhaf_oracle(a), want), 1e-14);
}

TEST(Oracle, RefusesLargeInputs) {
    EXPECT_THROW(lhaf_oracle(SymmetricMatrix(15)), std::invalid_argument);
    EXPECT_THROW(enumerate_spm(15, [](const Matching&) {}), std::invalid_argument);
    EXPECT_THROW(haf_oracle(SymmetricMatrix(18)), std::invalid_argument);
    EXPECT_NO_THROW(haf_oracle(SymmetricMatrix(16)));
}

}  // namespace
}  // namespace hafband
