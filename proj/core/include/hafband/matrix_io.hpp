#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>

#include "hafband/matcore.hpp"

namespace hafband {

/// Absolute tolerance for the symmetry check applied when loading matrices.
inline constexpr double kLoadSymmetryTol = 1e-12;

/// Error raised for malformed matrix or circuit text.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Text format: first line "n", then n lines of 2n whitespace-separated reals
/// (re im pairs). Symmetry is checked at kLoadSymmetryTol, then enforced exactly.
SymmetricMatrix read_matrix(std::istream& in);
SymmetricMatrix read_matrix_file(const std::filesystem::path& path);

/// Writes in the same format with round-trip precision.
void write_matrix(std::ostream& out, const SymmetricMatrix& m);

}  // namespace hafband
