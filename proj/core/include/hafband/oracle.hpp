#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "hafband/matcore.hpp"

namespace hafband {

/// Largest dimension the loop-hafnian enumeration accepts.
inline constexpr std::size_t kOracleMaxLoopDim = 14;
/// Largest dimension the loop-free (perfect matching) enumeration accepts.
inline constexpr std::size_t kOracleMaxPairDim = 16;

/// A single-pair matching: unordered pairs (i < j) plus self-loops, together
/// covering every index exactly once.
struct Matching {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<std::size_t> loops;
};

/// Streams every single-pair matching of {0..n-1} exactly once. The smallest
/// uncovered index either loops or pairs with a larger uncovered index, loop
/// first, partners ascending. Throws std::invalid_argument for n > kOracleMaxLoopDim.
void enumerate_spm(std::size_t n, const std::function<void(const Matching&)>& visit);

/// Number of single-pair matchings (involutions) of n elements, by enumeration.
std::uint64_t count_spm(std::size_t n);

/// Brute-force loop hafnian: sum over all single-pair matchings of the
/// product of pair entries and loop (diagonal) entries.
Complex lhaf_oracle(const SymmetricMatrix& b);

/// Brute-force hafnian: sum over perfect matchings only (diagonal ignored).
/// Odd dimensions give 0.
Complex haf_oracle(const SymmetricMatrix& b);

}  // namespace hafband
