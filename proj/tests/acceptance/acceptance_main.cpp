// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "hafband/circuit.hpp"
#include "hafband/lhaf.hpp"
#include "hafband/oracle.hpp"
#include "hafband/sampler.hpp"

namespace {

using namespace hafband;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;
};

double rel_err(Complex got, Complex want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

Complex random_complex(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double re = u(rng);
    const double im = u(rng);
    return {re, im};
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(3);
    s << v;
    return s.str();
}

// 1. Banded and sparse kernels against enumeration on 500 matrices, every
// (n, w) with n <= 12 at least once.
Outcome oracle_equivalence() {
    std::mt19937_64 rng(1001);
    std::vector<std::pair<std::size_t, std::size_t>> shapes;
    for (std::size_t n = 1; n <= 12; ++n) {
        for (std::size_t w = 0; w < n; ++w) shapes.emplace_back(n, w);
    }
    while (shapes.size() < 500) {
        const auto n = std::uniform_int_distribution<std::size_t>(1, 12)(rng);
        shapes.emplace_back(n, std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
    }
    double worst_banded = 0.0, worst_sparse = 0.0;
    for (const auto& [n, w] : shapes) {
        SymmetricMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n && j <= i + w; ++j) m.set(i, j, random_complex(rng));
        }
        const BandProfile p = bandwidth_of(m);
        const Complex ref = lhaf_oracle(m);
        worst_banded = std::max(worst_banded, rel_err(lhaf_banded(m, p), ref));
        worst_sparse = std::max(worst_sparse, rel_err(lhaf_sparse(m, p), ref));
    }
    Outcome o;
    o.pass = worst_banded <= 1e-9 && worst_sparse <= 1e-9;
    o.detail = std::to_string(shapes.size()) + " matrices, max rel err banded " + fmt(worst_banded) +
               ", sparse " + fmt(worst_sparse) + " (limit 1e-9)";
    return o;
}

// 2. The five-term closed form of a 4x4 tridiagonal matrix.
Outcome tridiagonal_example() {
    auto closed = [](const SymmetricMatrix& a) {
        return a(0, 0) * a(1, 1) * a(2, 2) * a(3, 3) + a(0, 1) * a(2, 2) * a(3, 3) +
               a(0, 0) * a(1, 2) * a(3, 3) + a(0, 0) * a(1, 1) * a(2, 3) + a(0, 1) * a(2, 3);
    };
    std::mt19937_64 rng(1002);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        SymmetricMatrix m(4);
        for (std::size_t i = 0; i < 4; ++i) {
            m.set(i, i, random_complex(rng));
            if (i + 1 < 4) m.set(i, i + 1, random_complex(rng));
        }
        const Complex want = closed(m);
        worst = std::max({worst, std::abs(lhaf_banded(m) - want) / std::abs(want),
                          std::abs(lhaf_sparse(m) - want) / std::abs(want)});
    }
    SymmetricMatrix ones(4);
    for (std::size_t i = 0; i < 4; ++i) {
        ones.set(i, i, 1.0);
        if (i + 1 < 4) ones.set(i, i + 1, 1.0);
    }
    const Complex v = lhaf_banded(ones);
    Outcome o;
    o.pass = worst <= 1e-12 && v == Complex(5.0) && closed(ones) == Complex(5.0);
    o.detail = "100 instances, max rel err " + fmt(worst) + " (limit 1e-12); all-ones -> " + fmt(v.real()) +
               (v.imag() == 0.0 ? "" : " + i" + fmt(v.imag()));
    return o;
}

// 3. Small combinatorial anchors.
Outcome combinatorial_anchors() {
    SymmetricMatrix ones(4);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i; j < 4; ++j) ones.set(i, j, 1.0);
    }
    bool ok = lhaf_banded(ones) == Complex(10.0) && lhaf_oracle(ones) == Complex(10.0) &&
              haf_banded(ones) == Complex(3.0) && haf_oracle(ones) == Complex(3.0);
    std::string counts;
    // I(n) = I(n-1) + (n-1) I(n-2), checked against enumeration.
    std::uint64_t prev = 1, cur = 1;
    const std::vector<std::uint64_t> expect{1, 1, 2, 4, 10, 26, 76};
    for (std::size_t n = 0; n <= 6; ++n) {
        const std::uint64_t c = count_spm(n);
        const std::uint64_t rec = n == 0 ? 1 : cur;
        ok = ok && c == expect[n] && c == rec;
        if (n >= 1) {
            const std::uint64_t next = cur + n * prev;
            prev = cur;
            cur = next;
        }
        counts += (n ? "," : "") + std::to_string(c);
    }
    std::mt19937_64 rng(1003);
    double worst = 0.0;
    for (std::size_t n = 1; n <= 16; ++n) {
        std::vector<Complex> d(n);
        Complex prod = 1.0;
        for (auto& x : d) {
            x = random_complex(rng);
            prod *= x;
        }
        const auto m = SymmetricMatrix::diagonal(d);
        worst = std::max({worst, rel_err(lhaf_banded(m), prod), rel_err(lhaf_sparse(m), prod)});
    }
    ok = ok && worst <= 1e-14;
    Outcome o;
    o.pass = ok;
    o.detail = "lhaf(ones4)=" + fmt(lhaf_banded(ones).real()) + " haf(ones4)=" + fmt(haf_banded(ones).real()) +
               " involutions " + counts + " diagonal max rel err " + fmt(worst);
    return o;
}

// 4. Time scaling n w 2^w.
Outcome scaling() {
    using hafband::tools::bench_point;
    std::vector<hafband::tools::BenchRow> rows;
    for (std::size_t n : {200u, 400u, 800u}) rows.push_back(bench_point(n, 10, 5, Kernel::banded, 1004, 0.05));
    for (std::size_t w = 8; w <= 20; w += 2) {
        if (w == 10) continue;
        rows.push_back(bench_point(200, w, 3, Kernel::banded, 1004, 0.05));
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return std::pair(a.n, a.w) < std::pair(b.n, b.w); });
    bool ok = true;
    std::string detail = "doubling n at w=10:";
    for (const auto& d : hafband::tools::doubling_ratios(rows)) {
        ok = ok && d.ratio >= 1.0 && d.ratio <= 3.0;
        detail += " " + fmt(d.ratio);
    }
    detail += " (want 2 +/- 50%); r(w) at n=200:";
    for (const auto& r : hafband::tools::width_ratios(rows)) {
        if (r.n != 200) continue;
        const double factor = std::max(r.ratio / r.model, r.model / r.ratio);
        ok = ok && factor <= 2.0;
        detail += " w" + std::to_string(r.w) + "=" + fmt(r.ratio) + "/" + fmt(r.model);
    }
    detail += " (measured/model, within x2)";
    return {ok, detail};
}

// 5. Sampler against the enumerated distribution.
Outcome sampler_vs_brute_force() {
    const Eigen::MatrixXcd u = circuit_unitary(random_local_circuit(3, 1, std::uint64_t{1005}));
    const auto cfg = SqueezeConfig::uniform(3, 0.3);
    SamplerConfig scfg;
    scfg.cutoff = 4;
    scfg.shots = 100000;
    scfg.seed = 1005;
    const auto records = run_shots(u, cfg, scfg);
    const auto dist = brute_force_distribution(u, cfg, 4);
    const double tv = total_variation(tally(records), dist);
    Outcome o;
    o.pass = tv <= 0.02 && dist.captured_mass >= 0.995;
    o.detail = "TV " + fmt(tv) + " (limit 0.02), captured mass " + fmt(dist.captured_mass) + " (min 0.995)";
    return o;
}

// 6. Single squeezed mode against its analytic photon distribution.
Outcome single_mode_statistics() {
    const double s = 0.5;
    SamplerConfig scfg;
    scfg.cutoff = 8;
    scfg.shots = 100000;
    scfg.seed = 1006;
    const auto records = run_shots(Eigen::MatrixXcd::Identity(1, 1), {{s}}, scfg);
    double n0 = 0, n2 = 0, odd = 0;
    for (const auto& r : records) {
        n0 += r.pattern[0] == 0;
        n2 += r.pattern[0] == 2;
        odd += r.pattern[0] % 2;
    }
    const double shots = static_cast<double>(records.size());
    const double p0 = 1.0 / std::cosh(s);
    const double p2 = std::tanh(s) * std::tanh(s) / (2 * std::cosh(s));
    const double z0 = (n0 / shots - p0) / std::sqrt(p0 * (1 - p0) / shots);
    const double z2 = (n2 / shots - p2) / std::sqrt(p2 * (1 - p2) / shots);
    Outcome o;
    o.pass = std::abs(z0) <= 3 && std::abs(z2) <= 3 && odd / shots <= 1e-4;
    o.detail = "p(0) " + fmt(n0 / shots) + " vs " + fmt(p0) + " (z=" + fmt(z0) + "), p(2) " + fmt(n2 / shots) +
               " vs " + fmt(p2) + " (z=" + fmt(z2) + "), p(odd) " + fmt(odd / shots);
    return o;
}

// 7. Band structure of circuits, B-tilde, and conditional states.
Outcome bandwidth_laws() {
    std::mt19937_64 rng(1007);
    bool ok = true;
    std::size_t sampled_steps = 0, worst_excess = 0;
    for (int t = 0; t < 100; ++t) {
        const std::size_t m = std::uniform_int_distribution<std::size_t>(3, 16)(rng);
        const std::size_t d = std::uniform_int_distribution<std::size_t>(1, (m - 1) / 2)(rng);
        const Eigen::MatrixXcd u = circuit_unitary(random_local_circuit(m, d, rng));
        const auto b = b_matrix(u, SqueezeConfig::uniform(m, 0.4));
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                const std::size_t gap = i > j ? i - j : j - i;
                if (gap > d && u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) != Complex(0.0)) ok = false;
                if (gap > 2 * d - 1 && b(i, j) != Complex(0.0)) ok = false;
            }
        }
        if (t % 10 == 0) {
            const ChainRuleSampler sampler(u, SqueezeConfig::uniform(m, 0.4), Kernel::banded);
            for (int shot = 0; shot < 10; ++shot) {
                const auto rec = sampler.sample(4, rng);
                for (const auto& step : rec.steps) {
                    ++sampled_steps;
                    if (step.kept_bandwidth > sampler.b_bandwidth()) {
                        ok = false;
                        worst_excess = std::max(worst_excess, step.kept_bandwidth - sampler.b_bandwidth());
                    }
                }
            }
        }
    }
    return {ok, "100 circuits: U zero beyond d, B-tilde zero beyond 2d-1; " + std::to_string(sampled_steps) +
                    " sampler steps with kept-block bandwidth <= B-tilde bandwidth" +
                    (worst_excess ? " (excess " + std::to_string(worst_excess) + ")" : "")};
}

// 8. Symmetric permutations leave the loop hafnian unchanged.
Outcome permutation_invariance() {
    std::mt19937_64 rng(1008);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 10)(rng);
        SymmetricMatrix a(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) a.set(i, j, random_complex(rng));
        }
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const Complex ref = lhaf_oracle(a);
        const SymmetricMatrix pa = symmetric_permute(a, perm);
        worst = std::max({worst, rel_err(lhaf_oracle(pa), ref), rel_err(lhaf_banded(pa), ref)});
    }
    return {worst <= 1e-10, "100 permutations, n <= 10, max rel err " + fmt(worst) + " (limit 1e-10)"};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "oracle equivalence", 120, oracle_equivalence},
        {2, "tridiagonal closed form", 60, tridiagonal_example},
        {3, "combinatorial anchors", 60, combinatorial_anchors},
        {4, "n w 2^w scaling", 600, scaling},
        {5, "sampler vs brute force", 600, sampler_vs_brute_force},
        {6, "single-mode squeezed statistics", 600, single_mode_statistics},
        {7, "bandwidth laws", 600, bandwidth_laws},
        {8, "permutation invariance", 60, permutation_invariance},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        if (secs > c.budget_s) {
            o.pass = false;
            o.detail += "; over time budget";
        }
        failures += !o.pass;
        std::printf("%s [%d] %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
