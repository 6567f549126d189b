#include "hafband/oracle.hpp"

#include <stdexcept>
#include <string>

namespace hafband {

namespace {

void require_dim(std::size_t n, std::size_t cap, const char* what) {
    if (n > cap) {
        throw std::invalid_argument(std::string(what) + " refuses n = " + std::to_string(n) +
                                    " (limit " + std::to_string(cap) + ")");
    }
}

class SpmWalker {
public:
    SpmWalker(std::size_t n, const std::function<void(const Matching&)>& visit)
        : covered_(n, false), visit_(visit) {}

    void run() { descend(0); }

private:
    void descend(std::size_t start) {
        std::size_t i = start;
        while (i < covered_.size() && covered_[i]) ++i;
        if (i == covered_.size()) {
            check_partition();
            visit_(current_);
            return;
        }
        covered_[i] = true;
        current_.loops.push_back(i);
        descend(i + 1);
        current_.loops.pop_back();
        for (std::size_t j = i + 1; j < covered_.size(); ++j) {
            if (covered_[j]) continue;
            covered_[j] = true;
            current_.pairs.emplace_back(i, j);
            descend(i + 1);
            current_.pairs.pop_back();
            covered_[j] = false;
        }
        covered_[i] = false;
    }

    void check_partition() const {
        if (current_.loops.size() + 2 * current_.pairs.size() != covered_.size()) {
            throw std::logic_error("matching does not cover every index");
        }
    }

    std::vector<bool> covered_;
    Matching current_;
    const std::function<void(const Matching&)>& visit_;
};

// Direct recursion over the same matchings, multiplying as it goes.
Complex lhaf_recurse(const SymmetricMatrix& b, std::vector<bool>& covered, std::size_t start,
                     bool loops) {
    std::size_t i = start;
    while (i < covered.size() && covered[i]) ++i;
    if (i == covered.size()) return 1.0;
    covered[i] = true;
    Complex total = 0.0;
    if (loops && b(i, i) != Complex(0.0)) total += b(i, i) * lhaf_recurse(b, covered, i + 1, loops);
    for (std::size_t j = i + 1; j < covered.size(); ++j) {
        if (covered[j] || b(i, j) == Complex(0.0)) continue;
        covered[j] = true;
        total += b(i, j) * lhaf_recurse(b, covered, i + 1, loops);
        covered[j] = false;
    }
    covered[i] = false;
    return total;
}

}  // namespace

void enumerate_spm(std::size_t n, const std::function<void(const Matching&)>& visit) {
    require_dim(n, kOracleMaxLoopDim, "enumerate_spm");
    SpmWalker(n, visit).run();
}

std::uint64_t count_spm(std::size_t n) {
    std::uint64_t count = 0;
    enumerate_spm(n, [&](const Matching&) { ++count; });
    return count;
}

Complex lhaf_oracle(const SymmetricMatrix& b) {
    require_dim(b.size(), kOracleMaxLoopDim, "lhaf_oracle");
    std::vector<bool> covered(b.size(), false);
    return lhaf_recurse(b, covered, 0, true);
}

Complex haf_oracle(const SymmetricMatrix& b) {
    require_dim(b.size(), kOracleMaxPairDim, "haf_oracle");
    if (b.size() % 2) return 0.0;
    std::vector<bool> covered(b.size(), false);
    return lhaf_recurse(b, covered, 0, false);
}

}  // namespace hafband
