#include "hafband/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

#include "hafband/lhaf.hpp"
#include "hafband/oracle.hpp"

namespace hafband {

namespace {

// Relative tolerance for the kept-block band check; the block is computed
// through a matrix inverse, so entries outside the band are roundoff.
constexpr double kKeptBandTol = 1e-9;
constexpr double kDegenerateProbability = 1e-300;

double max_abs(const SymmetricMatrix& m) {
    double best = 0.0;
    for (const Complex& z : m.data()) best = std::max(best, std::abs(z));
    return best;
}

double numeric_tol(const SymmetricMatrix& m, double rel) { return rel * max_abs(m); }

double log_factorials(std::span<const std::uint32_t> counts) {
    double s = 0.0;
    for (std::uint32_t c : counts) s += std::lgamma(static_cast<double>(c) + 1.0);
    return s;
}

std::vector<std::size_t> mode_range(std::size_t first, std::size_t last) {
    std::vector<std::size_t> out;
    for (std::size_t m = first; m < last; ++m) out.push_back(m);
    return out;
}

struct PmfDetail {
    ConditionalPmf pmf;
    KernelMatrices km;
};

PmfDetail pmf_detail(const GaussianState& state, std::span<const std::uint32_t> fixed,
                     std::uint32_t cutoff, Kernel kernel) {
    const std::size_t k = fixed.size();
    if (state.modes != k + 1) {
        throw std::invalid_argument("conditional state must cover the fixed modes plus one");
    }
    PmfDetail out;
    out.km = kernel_matrices(state);
    std::vector<std::uint32_t> counts(fixed.begin(), fixed.end());
    counts.push_back(0);

    std::vector<double> weights(cutoff + 1, 0.0);
    double total = 0.0;
    double largest = 0.0;
    for (std::uint32_t j = 0; j <= cutoff; ++j) {
        counts[k] = j;
        const PhotonPattern pattern(counts);
        const SymmetricMatrix reduced = reduce_by_pattern(out.km.a_tilde, out.km.y_tilde, pattern);
        const Complex l = evaluate_lhaf(reduced, kernel, numeric_tol(reduced, kNumericBandTol));
        const double w = std::max(0.0, l.real()) * std::exp(-log_factorials(counts));
        weights[j] = w;
        total += w;
        largest = std::max(largest, w);
    }
    if (!(total > 0.0) || std::log(largest) + out.km.log_prefactor < std::log(kDegenerateProbability)) {
        throw DegenerateConditional("every candidate photon count has vanishing probability");
    }

    double prefix = 1.0;
    if (k > 0) {
        const auto kept = mode_range(0, k);
        const LhafEngine engine = [kernel](const SymmetricMatrix& m) {
            return evaluate_lhaf(m, kernel, numeric_tol(m, kNumericBandTol));
        };
        prefix = pattern_probability(marginal(state, kept),
                                     PhotonPattern(std::vector<std::uint32_t>(fixed.begin(), fixed.end())),
                                     engine);
    }
    if (!(prefix > 0.0)) throw DegenerateConditional("observed prefix has zero probability");

    for (double& w : weights) w /= total;
    out.pmf.weights = std::move(weights);
    out.pmf.captured_mass = std::exp(out.km.log_prefactor + std::log(total) - std::log(prefix));
    return out;
}

std::uint32_t draw_index(const std::vector<double>& weights, std::mt19937_64& rng) {
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    double acc = 0.0;
    std::uint32_t last = 0;
    for (std::uint32_t j = 0; j < weights.size(); ++j) {
        if (weights[j] <= 0.0) continue;
        last = j;
        acc += weights[j];
        if (u < acc) return j;
    }
    return last;
}

SymmetricMatrix block(const SymmetricMatrix& m, std::size_t size) {
    SymmetricMatrix out(size);
    for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = i; j < size; ++j) out.set(i, j, m(i, j));
    }
    return out;
}

}  // namespace

Kernel parse_kernel(std::string_view name) {
    if (name == "banded") return Kernel::banded;
    if (name == "sparse") return Kernel::sparse;
    if (name == "oracle") return Kernel::oracle;
    throw std::invalid_argument("unknown kernel '" + std::string(name) + "'");
}

std::string_view kernel_name(Kernel k) {
    switch (k) {
        case Kernel::banded: return "banded";
        case Kernel::sparse: return "sparse";
        case Kernel::oracle: return "oracle";
    }
    return "?";
}

Complex evaluate_lhaf(const SymmetricMatrix& m, Kernel kernel, double tol) {
    switch (kernel) {
        case Kernel::banded: return lhaf_banded(m, bandwidth_of(m, tol));
        case Kernel::sparse: return lhaf_sparse(m, bandwidth_of(m, tol));
        case Kernel::oracle: return lhaf_oracle(m);
    }
    throw std::invalid_argument("unknown kernel");
}

ConditionalPmf conditional_pmf(const GaussianState& state, std::span<const std::uint32_t> fixed,
                               std::uint32_t cutoff, Kernel kernel) {
    return pmf_detail(state, fixed, cutoff, kernel).pmf;
}

ChainRuleSampler::ChainRuleSampler(const Eigen::MatrixXcd& u, const SqueezeConfig& cfg, Kernel kernel)
    : state_(apply_network(smss_input(cfg), u)), kernel_(kernel) {
    b_bandwidth_ = bandwidth_of(b_matrix(u, cfg)).bandwidth;
}

SampleRecord ChainRuleSampler::sample(std::uint32_t cutoff, std::mt19937_64& rng) const {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t m = state_.modes;
    SampleRecord rec;
    const auto all_measured = mode_range(1, m);
    rec.heterodyne = sample_heterodyne(state_, all_measured, rng);

    std::vector<std::uint32_t> counts;
    for (std::size_t k = 0; k < m; ++k) {
        const auto measured = mode_range(k + 1, m);
        StepDiagnostics diag;
        PmfDetail detail;
        for (;;) {
            const std::span<const Complex> outcomes(rec.heterodyne.data() + k, measured.size());
            const GaussianState cond =
                measured.empty() ? state_ : condition_on_heterodyne(state_, measured, outcomes);
            try {
                detail = pmf_detail(cond, counts, cutoff, kernel_);
                break;
            } catch (const DegenerateConditional&) {
                if (measured.empty() || diag.retries >= kMaxRetries) {
                    throw std::runtime_error("mode " + std::to_string(k) +
                                             ": conditional distribution stayed degenerate after " +
                                             std::to_string(diag.retries) +
                                             " retries; the cutoff is probably too small");
                }
                ++diag.retries;
                const auto redraw = sample_heterodyne(state_, measured, rng);
                std::copy(redraw.begin(), redraw.end(), rec.heterodyne.begin() + static_cast<std::ptrdiff_t>(k));
            }
        }
        const SymmetricMatrix kept = block(detail.km.a_tilde, k + 1);
        diag.kept_bandwidth = bandwidth_of(kept, numeric_tol(kept, kKeptBandTol)).bandwidth;
        if (diag.kept_bandwidth > b_bandwidth_) {
            throw std::logic_error("conditional block bandwidth " + std::to_string(diag.kept_bandwidth) +
                                   " exceeds the network bandwidth " + std::to_string(b_bandwidth_));
        }
        diag.captured_mass = detail.pmf.captured_mass;
        counts.push_back(draw_index(detail.pmf.weights, rng));

        const SymmetricMatrix reduced =
            reduce_by_pattern(detail.km.a_tilde, detail.km.y_tilde, PhotonPattern(counts));
        diag.reduced_bandwidth = bandwidth_of(reduced, numeric_tol(reduced, kNumericBandTol)).bandwidth;
        rec.retries += diag.retries;
        rec.steps.push_back(diag);
    }
    rec.pattern = PhotonPattern(std::move(counts));
    rec.duration = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start);
    return rec;
}

SampleRecord chain_rule_sample(const Eigen::MatrixXcd& u, const SqueezeConfig& cfg,
                               const SamplerConfig& scfg, std::mt19937_64& rng) {
    return ChainRuleSampler(u, cfg, scfg.kernel).sample(scfg.cutoff, rng);
}

std::uint64_t seed_for_shot(std::uint64_t seed, std::uint64_t shot) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (shot + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::vector<SampleRecord> run_shots(const Eigen::MatrixXcd& u, const SqueezeConfig& cfg,
                                    const SamplerConfig& scfg, unsigned jobs) {
    if (scfg.shots == 0) throw std::invalid_argument("shots must be at least 1");
    const ChainRuleSampler sampler(u, cfg, scfg.kernel);
    std::vector<SampleRecord> records(scfg.shots);
    const std::uint64_t workers = std::clamp<std::uint64_t>(jobs, 1, scfg.shots);

    auto work = [&](std::uint64_t first) {
        for (std::uint64_t i = first; i < scfg.shots; i += workers) {
            std::mt19937_64 rng(seed_for_shot(scfg.seed, i));
            records[i] = sampler.sample(scfg.cutoff, rng);
        }
    };
    if (workers == 1) {
        work(0);
        return records;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    for (std::uint64_t t = 0; t < workers; ++t) {
        threads.emplace_back([&, t] {
            try {
                work(t);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : threads) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return records;
}

Distribution brute_force_distribution(const Eigen::MatrixXcd& u, const SqueezeConfig& cfg,
                                      std::uint32_t cutoff) {
    const std::size_t m = cfg.modes();
    if (m > kBruteForceMaxModes || m * cutoff > kBruteForceMaxPhotons) {
        throw std::invalid_argument("brute-force distribution is limited to 4 modes and 16 photons");
    }
    const SymmetricMatrix b = b_matrix(u, cfg);
    double log_scale = 0.0;
    for (double s : cfg.strengths) log_scale -= std::log(std::cosh(s));

    Distribution dist;
    std::vector<std::uint32_t> counts(m, 0);
    for (;;) {
        const std::uint32_t total = std::accumulate(counts.begin(), counts.end(), 0u);
        double p = 0.0;
        if (total % 2 == 0) {
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < m; ++i) idx.insert(idx.end(), counts[i], i);
            SymmetricMatrix sub(idx.size());
            for (std::size_t i = 0; i < idx.size(); ++i) {
                for (std::size_t j = i; j < idx.size(); ++j) sub.set(i, j, b(idx[i], idx[j]));
            }
            p = std::norm(haf_oracle(sub)) * std::exp(log_scale - log_factorials(counts));
        }
        dist.probabilities.emplace(PhotonPattern(counts), p);
        dist.captured_mass += p;

        std::size_t i = 0;
        while (i < m && counts[i] == cutoff) counts[i++] = 0;
        if (i == m) break;
        ++counts[i];
    }
    return dist;
}

double total_variation(const std::map<PhotonPattern, std::uint64_t>& counts, const Distribution& dist) {
    std::uint64_t shots = 0;
    for (const auto& [pattern, c] : counts) shots += c;
    if (shots == 0 || !(dist.captured_mass > 0.0)) {
        throw std::invalid_argument("total variation needs samples and a nonzero distribution");
    }
    double sum = 0.0;
    for (const auto& [pattern, p] : dist.probabilities) {
        const auto it = counts.find(pattern);
        const double f = it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(shots);
        sum += std::abs(f - p / dist.captured_mass);
    }
    for (const auto& [pattern, c] : counts) {
        if (!dist.probabilities.contains(pattern)) sum += static_cast<double>(c) / static_cast<double>(shots);
    }
    return 0.5 * sum;
}

std::map<PhotonPattern, std::uint64_t> tally(std::span<const SampleRecord> records) {
    std::map<PhotonPattern, std::uint64_t> out;
    for (const auto& r : records) ++out[r.pattern];
    return out;
}

}  // namespace hafband
