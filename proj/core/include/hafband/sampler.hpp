#pragma once

#include <Eigen/Dense>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hafband/gaussian.hpp"
#include "hafband/matcore.hpp"

namespace hafband {

enum class Kernel { banded, sparse, oracle };

/// Accepts "banded", "sparse" or "oracle"; throws std::invalid_argument otherwise.
Kernel parse_kernel(std::string_view name);
std::string_view kernel_name(Kernel k);

/// Loop hafnian through the chosen kernel. Entries with |m_ij| <= tol count
/// as zero when the band is measured (ignored by the oracle).
Complex evaluate_lhaf(const SymmetricMatrix& m, Kernel kernel, double tol = 0.0);

/// Relative tolerance used for band detection on numerically computed
/// matrices (conditional states, reduced matrices).
inline constexpr double kNumericBandTol = 1e-12;

struct SamplerConfig {
    std::uint32_t cutoff = 4;
    std::uint64_t shots = 1;
    std::uint64_t seed = 0;
    Kernel kernel = Kernel::banded;
};

struct StepDiagnostics {
    std::size_t kept_bandwidth = 0;     // B-tilde block of the conditional state
    std::size_t reduced_bandwidth = 0;  // pattern-reduced matrix of the drawn prefix
    double captured_mass = 1.0;         // sum of the truncated conditional pmf before renormalizing
    std::size_t retries = 0;
};

struct SampleRecord {
    PhotonPattern pattern;
    /// Heterodyne outcomes for modes 1..M-1 as finally used (index j holds mode j + 1).
    std::vector<Complex> heterodyne;
    std::vector<StepDiagnostics> steps;
    std::chrono::nanoseconds duration{0};
    std::size_t retries = 0;
};

/// All candidate probabilities vanished (below 1e-300).
class DegenerateConditional : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ConditionalPmf {
    std::vector<double> weights;  // normalized, length cutoff + 1
    double captured_mass = 1.0;
};

/// Distribution of n_k given the counts `fixed` on modes 0..k-1, for a state
/// on modes 0..k (k = fixed.size()). Throws DegenerateConditional when every
/// candidate probability is below 1e-300.
ConditionalPmf conditional_pmf(const GaussianState& state, std::span<const std::uint32_t> fixed,
                               std::uint32_t cutoff, Kernel kernel);

/// Chain-rule sampler for squeezed vacua sent through a network u.
///
/// Per shot, heterodyne outcomes for modes 1..M-1 are drawn once from the
/// joint Q function. Step k conditions on the outcomes of modes k+1..M-1 and
/// draws n_k from p(n_0..n_k | outcomes); the outcome of mode k is dropped as
/// the step advances. The kept B-tilde block is checked to stay within the
/// band of B-tilde at every step (std::logic_error otherwise).
class ChainRuleSampler {
public:
    ChainRuleSampler(const Eigen::MatrixXcd& u, const SqueezeConfig& cfg, Kernel kernel);

    SampleRecord sample(std::uint32_t cutoff, std::mt19937_64& rng) const;

    std::size_t modes() const { return state_.modes; }
    const GaussianState& state() const { return state_; }
    std::size_t b_bandwidth() const { return b_bandwidth_; }

    static constexpr std::size_t kMaxRetries = 100;

private:
    GaussianState state_;
    Kernel kernel_;
    std::size_t b_bandwidth_ = 0;
};

SampleRecord chain_rule_sample(const Eigen::MatrixXcd& u, const SqueezeConfig& cfg,
                               const SamplerConfig& scfg, std::mt19937_64& rng);

/// Seed for shot i, derived with splitmix64 so results do not depend on how
/// shots are split between threads.
std::uint64_t seed_for_shot(std::uint64_t seed, std::uint64_t shot);

/// Runs scfg.shots shots on `jobs` threads; record i always comes from seed_for_shot(seed, i).
std::vector<SampleRecord> run_shots(const Eigen::MatrixXcd& u, const SqueezeConfig& cfg,
                                    const SamplerConfig& scfg, unsigned jobs = 1);

struct Distribution {
    std::map<PhotonPattern, double> probabilities;
    double captured_mass = 0.0;
};

inline constexpr std::size_t kBruteForceMaxModes = 4;
/// Largest photon number the enumeration handles (M * cutoff).
inline constexpr std::uint32_t kBruteForceMaxPhotons = 16;

/// Every pattern with n_i <= cutoff, from |haf(B_n)|^2 / (prod n_i! prod cosh s_i)
/// with the hafnian evaluated by enumeration. Refuses M > 4 or M * cutoff > 16.
Distribution brute_force_distribution(const Eigen::MatrixXcd& u, const SqueezeConfig& cfg,
                                      std::uint32_t cutoff);

/// Half the L1 distance between empirical frequencies and the distribution
/// renormalized to its captured mass.
double total_variation(const std::map<PhotonPattern, std::uint64_t>& counts, const Distribution& dist);

std::map<PhotonPattern, std::uint64_t> tally(std::span<const SampleRecord> records);

}  // namespace hafband
