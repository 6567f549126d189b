#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hafband/sampler.hpp"

namespace hafband::tools {

/// Shortest round-trip decimal form, always with a decimal point ("5.0", "0.1", "1e-20").
std::string format_double(double v);

/// Random matrix families exercised by `verify`.
enum class MatrixFamily { banded, arrow, sparse };
std::string_view family_name(MatrixFamily f);

struct VerifyCase {
    MatrixFamily family = MatrixFamily::banded;
    std::size_t n = 0;
    std::size_t bandwidth = 0;
    double banded_error = 0.0;
    double sparse_error = 0.0;
};

struct VerifyReport {
    std::vector<VerifyCase> cases;
    double max_banded_error = 0.0;
    double max_sparse_error = 0.0;

    double max_error() const;
};

inline constexpr std::size_t kVerifyMaxN = 12;
inline constexpr double kVerifyTol = 1e-9;

/// Random matrices with n in [1, max_n]: banded with every bandwidth, arrowheads,
/// and random sparsity patterns. Errors are |x - oracle| / max(1, |oracle|).
VerifyReport run_verify(std::size_t trials, std::size_t max_n, std::uint64_t seed);

/// Arrowhead: nonzeros on the diagonal and in row/column 0 only.
SymmetricMatrix random_arrow(std::size_t n, std::mt19937_64& rng);
/// Each off-diagonal entry kept with probability `density`.
SymmetricMatrix random_sparse(std::size_t n, double density, std::mt19937_64& rng);

struct BenchRow {
    std::size_t n = 0;
    std::size_t w = 0;
    std::size_t reps = 0;
    double mean_s = 0.0;
    double std_s = 0.0;
    Kernel kernel = Kernel::banded;
};

inline constexpr std::size_t kBenchMinReps = 3;
inline constexpr std::size_t kBenchMaxW = 24;

/// Times one kernel call on a random band matrix. A warm-up call is discarded;
/// each repetition loops enough calls to span at least `min_rep_seconds` and
/// reports the per-call time.
BenchRow bench_point(std::size_t n, std::size_t w, std::size_t reps, Kernel kernel,
                     std::uint64_t seed, double min_rep_seconds = 0.02);

inline constexpr const char* kBenchCsvHeader = "n,w,reps,mean_s,std_s,kernel";
std::string bench_csv_line(const BenchRow& row);

struct DoublingRatio {
    std::size_t w = 0;
    std::size_t n_from = 0;
    std::size_t n_to = 0;
    double ratio = 0.0;
};
struct WidthRatio {
    std::size_t n = 0;
    std::size_t w = 0;  // ratio is time(w + 2) / time(w)
    double ratio = 0.0;
    double model = 0.0;  // 4 (w + 2) / w
};

/// Time ratios between rows whose n doubles at fixed w, and whose w grows by 2 at fixed n.
std::vector<DoublingRatio> doubling_ratios(const std::vector<BenchRow>& rows);
std::vector<WidthRatio> width_ratios(const std::vector<BenchRow>& rows);

/// Seed from the flag, else from HAFBAND_SEED, else `fallback`. Throws
/// std::invalid_argument when HAFBAND_SEED is not an unsigned integer.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag, std::uint64_t fallback = 0);

/// "0.3" gives `modes` copies; "0.1,0.2,0.3" must list exactly `modes` values.
SqueezeConfig parse_squeeze(const std::string& text, std::size_t modes);

}  // namespace hafband::tools
