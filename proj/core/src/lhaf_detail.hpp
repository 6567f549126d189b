#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "hafband/matcore.hpp"

namespace hafband::detail {

// Plain complex multiply; std::complex's operator* carries NaN/Inf recovery
// that the hot loops do not need.
inline Complex mul(const Complex& a, const Complex& b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

struct PlainSum {
    double re = 0.0;
    double im = 0.0;
    void add(const Complex& z) {
        re += z.real();
        im += z.imag();
    }
    Complex value() const { return {re, im}; }
};

// Neumaier summation, componentwise.
struct CompensatedSum {
    double re = 0.0, re_c = 0.0;
    double im = 0.0, im_c = 0.0;

    static void step(double& sum, double& comp, double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    void add(const Complex& z) {
        step(re, re_c, z.real());
        step(im, im_c, z.imag());
    }
    Complex value() const { return {re + re_c, im + im_c}; }
};

inline void check_read(std::size_t idx, std::size_t limit, std::size_t live,
                       const std::vector<Complex>& prev, std::size_t row) {
    if (idx >= limit) {
        throw std::logic_error("row " + std::to_string(row) + ": read of mask " +
                               std::to_string(idx) + " outside the previous window");
    }
    if (idx >= live && prev[idx] != Complex(0.0)) {
        throw std::logic_error("row " + std::to_string(row) + ": stale coefficient at mask " +
                               std::to_string(idx));
    }
}

inline void check_guarded_zero(const Complex& value, std::size_t mask, std::size_t row) {
    if (value != Complex(0.0)) {
        throw std::logic_error("row " + std::to_string(row) + ": guarded mask " +
                               std::to_string(mask) + " has a nonzero coefficient");
    }
}

}  // namespace hafband::detail
