// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

#include "dftis/sequence.hpp"

namespace dftis {

/// Which algorithm evaluates the transform. `direct` is the O(N^2) reference sum.
enum class dft_path { direct, radix2 };

namespace detail {

/// e^{-j 2 pi r / N}, exact at the quarter points.
template <std::floating_point T>
std::complex<T> twiddle(long long r, std::size_t n) {
    const auto len = static_cast<long long>(n);
    r %= len;
    if (r < 0) r += len;
    if ((4 * r) % len == 0) {
        switch ((4 * r) / len) {
        case 0: return {1, 0};
        case 1: return {0, -1};
        case 2: return {-1, 0};
        default: return {0, 1};
        }
    }
    const T angle = -2 * std::numbers::pi_v<T> * static_cast<T>(r) / static_cast<T>(n);
    return {std::cos(angle), std::sin(angle)};
}

/// Unnormalized transform by the direct double sum; sign -1 is forward, +1 inverse.
template <std::floating_point T>
std::vector<std::complex<T>> direct_sum(std::span<const std::complex<T>> x, int sign) {
    const std::size_t n = x.size();
    std::vector<std::complex<T>> table(n);
    for (std::size_t r = 0; r < n; ++r) table[r] = twiddle<T>(static_cast<long long>(r) * -sign, n);
    std::vector<std::complex<T>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<T> acc{};
        for (std::size_t i = 0; i < n; ++i) acc += x[i] * table[(k * i) % n];
        out[k] = acc;
    }
    return out;
}

/// Unnormalized iterative radix-2 transform; n must be a power of two.
template <std::floating_point T>
std::vector<std::complex<T>> radix2(std::span<const std::complex<T>> x, int sign) {
    const std::size_t n = x.size();
    std::vector<std::complex<T>> a(x.begin(), x.end());
    const unsigned bits = static_cast<unsigned>(std::countr_zero(n));
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t rev = 0;
        for (unsigned b = 0; b < bits; ++b) rev |= ((i >> b) & 1u) << (bits - 1 - b);
        if (rev > i) std::swap(a[i], a[rev]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const auto w = twiddle<T>(static_cast<long long>(k * stride) * -sign, n);
                const auto u = a[start + k];
                const auto v = a[start + k + len / 2] * w;
                a[start + k] = u + v;
                a[start + k + len / 2] = u - v;
            }
        }
    }
    return a;
}

template <std::floating_point T>
basic_sequence<T> transform(const basic_sequence<T>& x, int sign, dft_path path) {
    const std::size_t n = x.size();
    if (path == dft_path::radix2 && !std::has_single_bit(n))
        throw invalid_input("radix-2 path requires a power-of-two length");
    auto out = path == dft_path::radix2 ? radix2<T>(x.samples(), sign) : direct_sum<T>(x.samples(), sign);
    const T scale = 1 / std::sqrt(static_cast<T>(n));
    for (auto& v : out) v *= scale;
    return basic_sequence<T>(std::move(out));
}

} // namespace detail

/// Unitary DFT: X[k] = N^{-1/2} sum_n x[n] e^{-j 2 pi k n / N}.
template <std::floating_point T>
basic_sequence<T> unitary_dft(const basic_sequence<T>& x, dft_path path = dft_path::direct) {
    return detail::transform(x, -1, path);
}

/// Inverse of unitary_dft, with the same N^{-1/2} scaling.
template <std::floating_point T>
basic_sequence<T> unitary_idft(const basic_sequence<T>& x, dft_path path = dft_path::direct) {
    return detail::transform(x, +1, path);
}

/// x[-n mod N].
template <std::floating_point T>
basic_sequence<T> reversal(const basic_sequence<T>& x) {
    std::vector<std::complex<T>> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x.at(-static_cast<long long>(i));
    return basic_sequence<T>(std::move(out));
}

/**
 * The DFT applied p times. p is reduced modulo 4 (negative p included), since
 * the fourth power of the unitary DFT is the identity. Even powers are computed
 * exactly: D^2 is index reversal.
 */
template <std::floating_point T>
basic_sequence<T> apply_dft_power(const basic_sequence<T>& x, int p, dft_path path = dft_path::direct) {
    switch (((p % 4) + 4) % 4) {
    case 0: return x;
    case 1: return unitary_dft(x, path);
    case 2: return reversal(x);
    default: return unitary_idft(x, path);
    }
}

/// (x[n] + x[-n]) / 2.
template <std::floating_point T>
basic_sequence<T> even_part(const basic_sequence<T>& x) {
    std::vector<std::complex<T>> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = (x[i] + x.at(-static_cast<long long>(i))) / T(2);
    return basic_sequence<T>(std::move(out));
}

/// (x[n] - x[-n]) / 2.
template <std::floating_point T>
basic_sequence<T> odd_part(const basic_sequence<T>& x) {
    std::vector<std::complex<T>> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = (x[i] - x.at(-static_cast<long long>(i))) / T(2);
    return basic_sequence<T>(std::move(out));
}

/// output[n] = x[n - m mod N].
template <std::floating_point T>
basic_sequence<T> circular_shift(const basic_sequence<T>& x, long long m) {
    std::vector<std::complex<T>> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x.at(static_cast<long long>(i) - m);
    return basic_sequence<T>(std::move(out));
}

/// output[n] = e^{j 2 pi r n / N} x[n]; shifts the spectrum by r bins.
template <std::floating_point T>
basic_sequence<T> modulate(const basic_sequence<T>& x, long long r) {
    std::vector<std::complex<T>> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = detail::twiddle<T>(-r * static_cast<long long>(i), x.size()) * x[i];
    return basic_sequence<T>(std::move(out));
}

} // namespace dftis
