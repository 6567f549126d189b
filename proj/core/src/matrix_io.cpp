#include "hafband/matrix_io.hpp"

#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace hafband {

SymmetricMatrix read_matrix(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty matrix file");
    std::istringstream header(line);
    long long n = -1;
    if (!(header >> n) || n < 0) throw ParseError("first line must hold a non-negative dimension");
    std::string extra;
    if (header >> extra) throw ParseError("unexpected token after dimension: " + extra);

    const auto dim = static_cast<std::size_t>(n);
    std::vector<Complex> entries;
    entries.reserve(dim * dim);
    for (std::size_t i = 0; i < dim; ++i) {
        if (!std::getline(in, line)) {
            throw ParseError("expected " + std::to_string(dim) + " rows, found " + std::to_string(i));
        }
        std::istringstream row(line);
        for (std::size_t j = 0; j < dim; ++j) {
            double re = 0;
            double im = 0;
            if (!(row >> re >> im)) {
                throw ParseError("row " + std::to_string(i + 1) + ": expected " +
                                 std::to_string(2 * dim) + " reals");
            }
            entries.emplace_back(re, im);
        }
        if (row >> extra) throw ParseError("row " + std::to_string(i + 1) + ": too many values");
    }
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) {
            throw ParseError("trailing content after matrix rows");
        }
    }
    try {
        return SymmetricMatrix::from_dense(dim, entries, kLoadSymmetryTol);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

SymmetricMatrix read_matrix_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    return read_matrix(in);
}

void write_matrix(std::ostream& out, const SymmetricMatrix& m) {
    const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
    out << m.size() << '\n';
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (j) out << ' ';
            out << m(i, j).real() << ' ' << m(i, j).imag();
        }
        out << '\n';
    }
    out.precision(old_precision);
}

}  // namespace hafband
