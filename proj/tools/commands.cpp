#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>

#include "hafband/lhaf.hpp"
#include "hafband/oracle.hpp"

namespace hafband::tools {

std::string format_double(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, res.ptr);
    if (std::isfinite(v) && s.find_first_of(".e") == std::string::npos) s += ".0";
    return s;
}

std::string_view family_name(MatrixFamily f) {
    switch (f) {
        case MatrixFamily::banded: return "banded";
        case MatrixFamily::arrow: return "arrow";
        case MatrixFamily::sparse: return "sparse";
    }
    return "?";
}

double VerifyReport::max_error() const { return std::max(max_banded_error, max_sparse_error); }

SymmetricMatrix random_arrow(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    SymmetricMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double re = unit(rng);
        const double im = unit(rng);
        m.set(i, i, {re, im});
        if (i > 0) {
            const double hre = unit(rng);
            const double him = unit(rng);
            m.set(0, i, {hre, him});
        }
    }
    return m;
}

SymmetricMatrix random_sparse(std::size_t n, double density, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::bernoulli_distribution keep(density);
    SymmetricMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            if (j != i && !keep(rng)) continue;
            const double re = unit(rng);
            const double im = unit(rng);
            m.set(i, j, {re, im});
        }
    }
    return m;
}

VerifyReport run_verify(std::size_t trials, std::size_t max_n, std::uint64_t seed) {
    if (max_n < 1 || max_n > kVerifyMaxN) {
        throw std::invalid_argument("max-n must be between 1 and " + std::to_string(kVerifyMaxN));
    }
    std::mt19937_64 rng(seed);
    VerifyReport report;
    for (std::size_t t = 0; t < trials; ++t) {
        VerifyCase c;
        c.n = std::uniform_int_distribution<std::size_t>(1, max_n)(rng);
        SymmetricMatrix m;
        switch (t % 4) {
            case 0:
            case 1: {
                c.family = MatrixFamily::banded;
                const auto w = std::uniform_int_distribution<std::size_t>(0, c.n - 1)(rng);
                m = random_banded(c.n, w, rng);
                break;
            }
            case 2:
                c.family = MatrixFamily::arrow;
                m = random_arrow(c.n, rng);
                break;
            default:
                c.family = MatrixFamily::sparse;
                m = random_sparse(c.n, std::uniform_real_distribution<double>(0.1, 0.5)(rng), rng);
                break;
        }
        const BandProfile profile = bandwidth_of(m);
        c.bandwidth = profile.bandwidth;
        const Complex ref = lhaf_oracle(m);
        const double scale = std::max(1.0, std::abs(ref));
        c.banded_error = std::abs(lhaf_banded(m, profile) - ref) / scale;
        c.sparse_error = std::abs(lhaf_sparse(m, profile) - ref) / scale;
        report.max_banded_error = std::max(report.max_banded_error, c.banded_error);
        report.max_sparse_error = std::max(report.max_sparse_error, c.sparse_error);
        report.cases.push_back(c);
    }
    return report;
}

BenchRow bench_point(std::size_t n, std::size_t w, std::size_t reps, Kernel kernel,
                     std::uint64_t seed, double min_rep_seconds) {
    if (reps < kBenchMinReps) {
        throw std::invalid_argument("at least " + std::to_string(kBenchMinReps) + " repetitions are required");
    }
    if (w > kBenchMaxW) throw std::invalid_argument("bench bandwidth is limited to " + std::to_string(kBenchMaxW));
    if (n == 0 || w >= n) throw std::invalid_argument("bench needs 0 <= w < n");

    std::mt19937_64 rng(seed_for_shot(seed, n * 1000 + w));
    const SymmetricMatrix m = random_banded(n, w, rng);
    const BandProfile profile = bandwidth_of(m);
    volatile double sink = 0.0;
    auto call = [&] {
        Complex v;
        switch (kernel) {
            case Kernel::banded: v = lhaf_banded(m, profile); break;
            case Kernel::sparse: v = lhaf_sparse(m, profile); break;
            case Kernel::oracle: v = lhaf_oracle(m); break;
        }
        sink = sink + v.real();
    };
    using clock = std::chrono::steady_clock;
    auto seconds = [](clock::duration d) { return std::chrono::duration<double>(d).count(); };

    const auto w0 = clock::now();
    call();
    const double warm = std::max(seconds(clock::now() - w0), 1e-9);
    const auto inner = static_cast<std::size_t>(std::max(1.0, std::ceil(min_rep_seconds / warm)));

    std::vector<double> times;
    for (std::size_t r = 0; r < reps; ++r) {
        const auto t0 = clock::now();
        for (std::size_t i = 0; i < inner; ++i) call();
        times.push_back(seconds(clock::now() - t0) / static_cast<double>(inner));
    }
    BenchRow row{n, w, reps, 0.0, 0.0, kernel};
    for (double t : times) row.mean_s += t;
    row.mean_s /= static_cast<double>(reps);
    for (double t : times) row.std_s += (t - row.mean_s) * (t - row.mean_s);
    row.std_s = std::sqrt(row.std_s / static_cast<double>(reps - 1));
    return row;
}

std::string bench_csv_line(const BenchRow& row) {
    return std::to_string(row.n) + "," + std::to_string(row.w) + "," + std::to_string(row.reps) + "," +
           format_double(row.mean_s) + "," + format_double(row.std_s) + "," +
           std::string(kernel_name(row.kernel));
}

std::vector<DoublingRatio> doubling_ratios(const std::vector<BenchRow>& rows) {
    std::vector<DoublingRatio> out;
    for (const auto& a : rows) {
        for (const auto& b : rows) {
            if (a.kernel == b.kernel && a.w == b.w && b.n == 2 * a.n) {
                out.push_back({a.w, a.n, b.n, b.mean_s / a.mean_s});
            }
        }
    }
    return out;
}

std::vector<WidthRatio> width_ratios(const std::vector<BenchRow>& rows) {
    std::vector<WidthRatio> out;
    for (const auto& a : rows) {
        if (a.w == 0) continue;
        for (const auto& b : rows) {
            if (a.kernel == b.kernel && a.n == b.n && b.w == a.w + 2) {
                const double model = 4.0 * static_cast<double>(a.w + 2) / static_cast<double>(a.w);
                out.push_back({a.n, a.w, b.mean_s / a.mean_s, model});
            }
        }
    }
    return out;
}

namespace {

template <class T>
bool parse_whole(std::string_view s, T& value) {
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

}  // namespace

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag, std::uint64_t fallback) {
    if (flag) return *flag;
    const char* env = std::getenv("HAFBAND_SEED");
    if (env == nullptr || *env == '\0') return fallback;
    std::uint64_t seed = 0;
    if (!parse_whole(std::string_view(env), seed)) {
        throw std::invalid_argument("HAFBAND_SEED must be an unsigned integer, got '" + std::string(env) + "'");
    }
    return seed;
}

SqueezeConfig parse_squeeze(const std::string& text, std::size_t modes) {
    std::vector<double> values;
    std::size_t pos = 0;
    for (;;) {
        const std::size_t comma = text.find(',', pos);
        const std::string_view item =
            std::string_view(text).substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        double v = 0.0;
        if (!parse_whole(item, v) || !std::isfinite(v) || v < 0.0) {
            throw std::invalid_argument("bad squeezing value '" + std::string(item) + "'");
        }
        values.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (values.size() == 1) return SqueezeConfig::uniform(modes, values[0]);
    if (values.size() != modes) {
        throw std::invalid_argument("expected 1 or " + std::to_string(modes) + " squeezing values, got " +
                                    std::to_string(values.size()));
    }
    return {values};
}

}  // namespace hafband::tools
