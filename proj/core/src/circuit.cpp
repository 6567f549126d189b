#include "hafband/circuit.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "hafband/matrix_io.hpp"

namespace hafband {

Eigen::Matrix2cd haar_2x2(std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::Matrix2cd z;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            double re = normal(rng);
            double im = normal(rng);
            z(i, j) = {re, im};
        }
    }
    Eigen::Matrix2cd q;
    q.col(0) = z.col(0) / z.col(0).norm();
    Eigen::Vector2cd v = z.col(1) - q.col(0).dot(z.col(1)) * q.col(0);
    q.col(1) = v / v.norm();
    return q;
}

CircuitSpec random_local_circuit(std::size_t m, std::size_t d, std::mt19937_64& rng) {
    if (m == 0) throw std::invalid_argument("circuit needs at least one mode");
    CircuitSpec spec;
    spec.modes = m;
    spec.depth = d;
    spec.layers.resize(d);
    for (std::size_t l = 0; l < d; ++l) {
        for (std::size_t i = l % 2; i + 1 < m; i += 2) {
            spec.layers[l].push_back({i, haar_2x2(rng)});
        }
    }
    return spec;
}

CircuitSpec random_local_circuit(std::size_t m, std::size_t d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    CircuitSpec spec = random_local_circuit(m, d, rng);
    spec.seed = seed;
    return spec;
}

Eigen::MatrixXcd circuit_unitary(const CircuitSpec& spec) {
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(spec.modes),
                                                    static_cast<Eigen::Index>(spec.modes));
    for (const auto& layer : spec.layers) {
        for (const auto& bs : layer) {
            if (bs.mode + 1 >= spec.modes) throw std::invalid_argument("beam splitter outside circuit");
            // Left-multiply: only rows mode and mode + 1 change.
            const auto i = static_cast<Eigen::Index>(bs.mode);
            Eigen::MatrixXcd rows = bs.unitary * u.middleRows(i, 2);
            u.middleRows(i, 2) = rows;
        }
    }
    return u;
}

void write_circuit(std::ostream& out, const CircuitSpec& spec) {
    const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
    out << spec.modes << ' ' << spec.depth << ' ' << spec.seed << '\n';
    for (const auto& layer : spec.layers) {
        out << layer.size();
        for (const auto& bs : layer) {
            out << ' ' << bs.mode << ' ' << bs.mode + 1;
            for (int r = 0; r < 2; ++r) {
                for (int c = 0; c < 2; ++c) {
                    out << ' ' << bs.unitary(r, c).real() << ' ' << bs.unitary(r, c).imag();
                }
            }
        }
        out << '\n';
    }
    out.precision(old_precision);
}

CircuitSpec read_circuit(std::istream& in) {
    CircuitSpec spec;
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty circuit file");
    {
        std::istringstream header(line);
        if (!(header >> spec.modes >> spec.depth >> spec.seed) || spec.modes == 0) {
            throw ParseError("circuit header must be \"m d seed\" with m >= 1");
        }
    }
    spec.layers.resize(spec.depth);
    for (std::size_t l = 0; l < spec.depth; ++l) {
        if (!std::getline(in, line)) throw ParseError("missing layer " + std::to_string(l + 1));
        std::istringstream row(line);
        std::size_t count = 0;
        if (!(row >> count)) throw ParseError("layer " + std::to_string(l + 1) + ": missing count");
        for (std::size_t b = 0; b < count; ++b) {
            std::size_t i = 0;
            std::size_t j = 0;
            BeamSplitter bs;
            if (!(row >> i >> j) || j != i + 1 || j >= spec.modes) {
                throw ParseError("layer " + std::to_string(l + 1) + ": beam splitters must couple adjacent modes");
            }
            bs.mode = i;
            for (int r = 0; r < 2; ++r) {
                for (int c = 0; c < 2; ++c) {
                    double re = 0;
                    double im = 0;
                    if (!(row >> re >> im)) throw ParseError("layer " + std::to_string(l + 1) + ": truncated unitary");
                    bs.unitary(r, c) = {re, im};
                }
            }
            if ((bs.unitary * bs.unitary.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-10) {
                throw ParseError("layer " + std::to_string(l + 1) + ": beam splitter is not unitary");
            }
            spec.layers[l].push_back(bs);
        }
        std::string extra;
        if (row >> extra) throw ParseError("layer " + std::to_string(l + 1) + ": trailing values");
    }
    return spec;
}

double unitarity_residual(const Eigen::MatrixXcd& u) {
    if (u.size() == 0) return 0.0;
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    return (u * u.adjoint() - id).cwiseAbs().maxCoeff();
}

}  // namespace hafband
