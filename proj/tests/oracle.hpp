// SPDX-License-Identifier: Apache-2.0
//
// Test-only reference computations. Nothing here calls into the library's
// transform code: the DFT is the textbook double sum in long double with the
// angle formed directly from k*n, and parity/projection helpers are written
// from their definitions.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using cld = std::complex<long double>;
using cvec = std::vector<std::complex<double>>;

/// (1/sqrt(N)) sum_n x[n] exp(sign * j 2 pi k n / N), sign = -1 forward.
inline cvec dft(const cvec& x, int sign = -1) {
    const std::size_t n = x.size();
    cvec out(n);
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    for (std::size_t k = 0; k < n; ++k) {
        cld acc = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const long double ang = sign * two_pi * static_cast<long double>(k) * static_cast<long double>(i) /
                                    static_cast<long double>(n);
            acc += cld(x[i].real(), x[i].imag()) * cld(std::cos(ang), std::sin(ang));
        }
        acc /= std::sqrt(static_cast<long double>(n));
        out[k] = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
    }
    return out;
}

inline cvec idft(const cvec& x) { return dft(x, +1); }

inline std::size_t mod(long long a, std::size_t n) {
    const auto len = static_cast<long long>(n);
    return static_cast<std::size_t>(((a % len) + len) % len);
}

inline cvec reverse(const cvec& x) {
    cvec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[mod(-static_cast<long long>(i), x.size())];
    return out;
}

inline double max_diff(const cvec& a, const cvec& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

/// Smallest max|X - lambda x| over candidate lambdas and the lambda attaining it.
inline std::pair<std::complex<double>, double> best_eigenvalue(const cvec& x) {
    const auto big = dft(x);
    const std::complex<double> cands[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    std::pair<std::complex<double>, double> best{cands[0], 1e300};
    for (auto l : cands) {
        double r = 0;
        for (std::size_t i = 0; i < x.size(); ++i) r = std::max(r, std::abs(big[i] - l * x[i]));
        if (r < best.second) best = {l, r};
    }
    return best;
}

/// Closed-form eigenvalue multiplicities of the unitary DFT for length n,
/// in the order (+1, -1, +j, -j).
inline std::array<std::size_t, 4> multiplicity_table(std::size_t n) {
    const std::size_t m = n / 4;
    switch (n % 4) {
    case 0: return {m + 1, m, m - 1, m};
    case 1: return {m + 1, m, m, m};
    case 2: return {m + 1, m + 1, m, m};
    default: return {m + 1, m + 1, m, m + 1};
    }
}

/// Trace of the spectral projector (1/4) sum_p lambda^{-p} D^p, from traces of D^p
/// computed by the oracle DFT on basis vectors.
inline double projector_trace(std::size_t n, std::complex<double> lambda) {
    std::complex<double> total = 0;
    std::complex<double> lp = 1;  // lambda^{-p}
    for (int p = 0; p < 4; ++p) {
        std::complex<double> tr = 0;
        for (std::size_t col = 0; col < n; ++col) {
            cvec e(n);
            e[col] = 1;
            for (int q = 0; q < p; ++q) e = dft(e);
            tr += e[col];
        }
        total += lp * tr;
        lp /= lambda;
    }
    return (total / 4.0).real();
}

inline cvec random_real(std::mt19937_64& rng, std::size_t n, double lo = -1, double hi = 1) {
    std::uniform_real_distribution<double> u(lo, hi);
    cvec v(n);
    for (auto& s : v) s = u(rng);
    return v;
}

inline cvec random_complex(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1, 1);
    cvec v(n);
    for (auto& s : v) s = {u(rng), u(rng)};
    return v;
}

} // namespace oracle
