#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

namespace hafband {

/// 2x2 unitary acting on the adjacent modes (mode, mode + 1).
struct BeamSplitter {
    std::size_t mode = 0;
    Eigen::Matrix2cd unitary = Eigen::Matrix2cd::Identity();
};

/// Brick-wall interferometer: layer l couples pairs (0,1)(2,3)... when l is
/// even and (1,2)(3,4)... when l is odd.
struct CircuitSpec {
    std::size_t modes = 0;
    std::size_t depth = 0;
    std::uint64_t seed = 0;
    std::vector<std::vector<BeamSplitter>> layers;
};

/// Haar-random element of U(2): Gram-Schmidt on a complex Ginibre matrix with
/// the phases of R's diagonal fixed to be positive.
Eigen::Matrix2cd haar_2x2(std::mt19937_64& rng);

/// Brick-wall circuit of depth d over m modes with Haar-random local blocks.
CircuitSpec random_local_circuit(std::size_t m, std::size_t d, std::mt19937_64& rng);
/// Same, seeding a fresh generator from `seed` and recording it in the spec.
CircuitSpec random_local_circuit(std::size_t m, std::size_t d, std::uint64_t seed);

/// Transfer matrix U = L_D ... L_1. Exactly zero for |i - j| > depth.
Eigen::MatrixXcd circuit_unitary(const CircuitSpec& spec);

/// Text format: header "m d seed", then one line per layer: the number of
/// beam splitters K followed by K groups "i j re00 im00 re01 im01 re10 im10 re11 im11"
/// (0-based modes, j = i + 1).
void write_circuit(std::ostream& out, const CircuitSpec& spec);
CircuitSpec read_circuit(std::istream& in);

/// Largest |U U^dagger - I| entry.
double unitarity_residual(const Eigen::MatrixXcd& u);

}  // namespace hafband
