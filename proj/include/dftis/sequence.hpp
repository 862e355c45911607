// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "dftis/errors.hpp"

namespace dftis {

/// Absolute per-sample tolerance used when comparing sequences.
struct tolerance {
    double eps = 1e-9;

    constexpr tolerance() = default;
    constexpr explicit tolerance(double e) : eps(e) {
        if (!(e >= 0.0)) throw invalid_input("tolerance must be non-negative");
    }
};

/**
 * A length-N sequence of complex samples with cyclic indexing.
 *
 * N >= 1 and every sample is finite. All index arithmetic is taken modulo N,
 * so `at(-1)` is the last sample.
 */
template <std::floating_point T>
class basic_sequence {
public:
    using value_type = std::complex<T>;

    explicit basic_sequence(std::vector<value_type> samples) : samples_(std::move(samples)) {
        validate();
    }

    basic_sequence(std::initializer_list<value_type> samples) : samples_(samples) { validate(); }

    /// Real-valued samples.
    static basic_sequence from_real(std::span<const T> re) {
        std::vector<value_type> s(re.begin(), re.end());
        return basic_sequence(std::move(s));
    }

    static basic_sequence zeros(std::size_t n) { return basic_sequence(std::vector<value_type>(n)); }

    std::size_t size() const noexcept { return samples_.size(); }

    const value_type& operator[](std::size_t n) const { return samples_[n]; }

    /// Sample at index n mod N, for any integer n.
    const value_type& at(long long n) const {
        const auto len = static_cast<long long>(samples_.size());
        long long r = n % len;
        if (r < 0) r += len;
        return samples_[static_cast<std::size_t>(r)];
    }

    std::span<const value_type> samples() const noexcept { return samples_; }
    auto begin() const noexcept { return samples_.begin(); }
    auto end() const noexcept { return samples_.end(); }

    /// Largest sample magnitude.
    T max_abs() const {
        T m = 0;
        for (const auto& v : samples_) m = std::max(m, std::abs(v));
        return m;
    }

    /// Sum of squared magnitudes.
    T energy() const {
        T e = 0;
        for (const auto& v : samples_) e += std::norm(v);
        return e;
    }

    T max_abs_imag() const {
        T m = 0;
        for (const auto& v : samples_) m = std::max(m, std::abs(v.imag()));
        return m;
    }

    bool is_zero(tolerance tol = {}) const { return max_abs() <= static_cast<T>(tol.eps); }

    basic_sequence& operator+=(const basic_sequence& o) {
        check_same_length(o);
        for (std::size_t i = 0; i < size(); ++i) samples_[i] += o.samples_[i];
        return *this;
    }

    basic_sequence& operator-=(const basic_sequence& o) {
        check_same_length(o);
        for (std::size_t i = 0; i < size(); ++i) samples_[i] -= o.samples_[i];
        return *this;
    }

    basic_sequence& operator*=(value_type a) {
        for (auto& v : samples_) v *= a;
        return *this;
    }

    friend basic_sequence operator+(basic_sequence a, const basic_sequence& b) { return a += b; }
    friend basic_sequence operator-(basic_sequence a, const basic_sequence& b) { return a -= b; }
    friend basic_sequence operator*(value_type s, basic_sequence a) { return a *= s; }
    friend basic_sequence operator*(basic_sequence a, value_type s) { return a *= s; }
    friend basic_sequence operator*(T s, basic_sequence a) { return a *= value_type(s); }
    friend basic_sequence operator-(basic_sequence a) { return a *= value_type(-1); }

    friend bool operator==(const basic_sequence&, const basic_sequence&) = default;

private:
    void validate() const {
        if (samples_.empty()) throw invalid_input("sequence length must be at least 1");
        for (const auto& v : samples_) {
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw invalid_input("sequence samples must be finite");
        }
    }

    void check_same_length(const basic_sequence& o) const {
        if (o.size() != size()) throw invalid_input("sequence lengths differ");
    }

    std::vector<value_type> samples_;
};

using sequence = basic_sequence<double>;
using complex = std::complex<double>;

/// max_n |a[n] - b[n]|.
template <std::floating_point T>
T max_abs_diff(const basic_sequence<T>& a, const basic_sequence<T>& b) {
    if (a.size() != b.size()) throw invalid_input("sequence lengths differ");
    T m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

template <std::floating_point T>
bool approx_equal(const basic_sequence<T>& a, const basic_sequence<T>& b, tolerance tol = {}) {
    return a.size() == b.size() && max_abs_diff(a, b) <= static_cast<T>(tol.eps);
}

} // namespace dftis
