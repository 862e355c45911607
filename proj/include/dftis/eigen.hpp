// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dftis/dft.hpp"
#include "dftis/sequence.hpp"

namespace dftis {

/// The four eigenvalues of the unitary DFT, the fourth roots of unity.
enum class eigenvalue { plus_one, minus_one, plus_j, minus_j };

class eigensequence;
inline std::optional<eigensequence> adopt(sequence y, eigenvalue lambda, tolerance tol);

inline constexpr std::array<eigenvalue, 4> all_eigenvalues{
    eigenvalue::plus_one, eigenvalue::minus_one, eigenvalue::plus_j, eigenvalue::minus_j};

inline complex value_of(eigenvalue l) {
    switch (l) {
    case eigenvalue::plus_one: return {1, 0};
    case eigenvalue::minus_one: return {-1, 0};
    case eigenvalue::plus_j: return {0, 1};
    case eigenvalue::minus_j: return {0, -1};
    }
    return {};
}

/// lambda^p for any integer p, exactly.
inline complex power_of(eigenvalue l, int p) {
    complex r{1, 0};
    const complex v = value_of(l);
    for (int i = 0, e = ((p % 4) + 4) % 4; i < e; ++i) r *= v;
    return r;
}

inline std::string_view to_string(eigenvalue l) {
    switch (l) {
    case eigenvalue::plus_one: return "+1";
    case eigenvalue::minus_one: return "-1";
    case eigenvalue::plus_j: return "+j";
    case eigenvalue::minus_j: return "-j";
    }
    return "?";
}

inline eigenvalue parse_eigenvalue(std::string_view s) {
    if (s == "+1" || s == "1") return eigenvalue::plus_one;
    if (s == "-1") return eigenvalue::minus_one;
    if (s == "+j" || s == "j") return eigenvalue::plus_j;
    if (s == "-j") return eigenvalue::minus_j;
    throw invalid_input("unknown eigenvalue '" + std::string(s) + "'");
}

/// +1 and -1 eigensequences are even; +j and -j are odd.
inline bool is_real_eigenvalue(eigenvalue l) {
    return l == eigenvalue::plus_one || l == eigenvalue::minus_one;
}

/// Outcome of testing a sequence against all four eigenvalues.
struct classification {
    std::optional<eigenvalue> lambda;
    /// max_n |X[n] - lambda x[n]| for each eigenvalue, in all_eigenvalues order.
    std::array<double, 4> residuals{};
    /// Non-empty when more than one eigenvalue fits.
    std::string diagnostic;

    double residual_of(eigenvalue l) const { return residuals[static_cast<std::size_t>(l)]; }
};

/// Residual of every eigenvalue hypothesis. Throws degenerate_input on the zero sequence.
inline classification classify_detail(const sequence& x, tolerance tol = {}) {
    if (x.is_zero(tol))
        throw degenerate_input("zero sequence lies in every eigenspace; classification undefined");
    const auto spectrum = unitary_dft(x);
    classification c;
    std::size_t matches = 0;
    for (auto l : all_eigenvalues) {
        double r = 0;
        const complex v = value_of(l);
        for (std::size_t i = 0; i < x.size(); ++i) r = std::max(r, std::abs(spectrum[i] - v * x[i]));
        c.residuals[static_cast<std::size_t>(l)] = r;
        if (r <= tol.eps) {
            ++matches;
            c.lambda = l;
        }
    }
    if (matches > 1) {
        c.lambda.reset();
        c.diagnostic = "several eigenvalues fit within tolerance; input is near zero or tolerance too loose";
    }
    return c;
}

/// The unique eigenvalue with max|X - lambda x| <= tol, if any.
inline std::optional<eigenvalue> classify(const sequence& x, tolerance tol = {}) {
    return classify_detail(x, tol).lambda;
}

/**
 * A non-zero sequence certified to satisfy unitary_dft(seq) = lambda * seq.
 *
 * Instances come from certify(), make(), or the constructions below; there is
 * no way to build one that skipped a check or a construction theorem.
 */
class eigensequence {
public:
    /// Classifies x; none when x is not invariant (or ambiguous).
    static std::optional<eigensequence> certify(const sequence& x, tolerance tol = {}) {
        if (auto l = classify(x, tol)) return eigensequence(x, *l);
        return std::nullopt;
    }

    /// Checks that x is a lambda eigensequence; throws invalid_input otherwise.
    static eigensequence make(const sequence& x, eigenvalue lambda, tolerance tol = {}) {
        const auto c = classify_detail(x, tol);
        if (c.residual_of(lambda) > tol.eps)
            throw invalid_input("sequence is not a " + std::string(to_string(lambda)) +
                                " eigensequence (residual " + std::to_string(c.residual_of(lambda)) + ")");
        return eigensequence(x, lambda);
    }

    const sequence& seq() const noexcept { return seq_; }
    eigenvalue lambda() const noexcept { return lambda_; }
    std::size_t size() const noexcept { return seq_.size(); }

    /// The DFT of an eigensequence: one multiply per sample.
    sequence spectrum() const { return value_of(lambda_) * seq_; }

    friend bool operator==(const eigensequence&, const eigensequence&) = default;

private:
    eigensequence(sequence s, eigenvalue l) : seq_(std::move(s)), lambda_(l) {}

    sequence seq_;
    eigenvalue lambda_;

    friend std::optional<eigensequence> adopt(sequence, eigenvalue, tolerance);
};

/// Wraps a sequence known to be invariant by construction; none when it is zero.
inline std::optional<eigensequence> adopt(sequence y, eigenvalue lambda, tolerance tol) {
    if (y.is_zero(tol)) return std::nullopt;
    return eigensequence(std::move(y), lambda);
}

/// y = E{x} + sign E{X}, an eigensequence with lambda = sign (+1 or -1).
inline std::optional<eigensequence> from_even(const sequence& x, int sign, tolerance tol = {}) {
    if (sign != 1 && sign != -1) throw invalid_input("sign must be +1 or -1");
    auto y = even_part(x) + static_cast<double>(sign) * even_part(unitary_dft(x));
    return adopt(std::move(y), sign > 0 ? eigenvalue::plus_one : eigenvalue::minus_one, tol);
}

/// y = O{x} - sign j O{X}, an eigensequence with lambda = sign j.
inline std::optional<eigensequence> from_odd(const sequence& x, int sign, tolerance tol = {}) {
    if (sign != 1 && sign != -1) throw invalid_input("sign must be +1 or -1");
    auto y = odd_part(x) - complex(0, sign) * odd_part(unitary_dft(x));
    return adopt(std::move(y), sign > 0 ? eigenvalue::plus_j : eigenvalue::minus_j, tol);
}

/// g[n, m] = x[n+m] + 2 cos(2 pi m n / N) x[n] + x[n-m], before certification.
inline sequence generating_function(const sequence& x, long long m) {
    const std::size_t n = x.size();
    const auto len = static_cast<long long>(n);
    long long mr = m % len;
    if (mr < 0) mr += len;
    std::vector<complex> g(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto k = static_cast<long long>(i);
        // cos(2 pi m n / N) is the real part of the twiddle, which is exact at quarter points.
        const double c = detail::twiddle<double>((mr * k) % len, n).real();
        g[i] = x.at(k + mr) + 2.0 * c * x[i] + x.at(k - mr);
    }
    return sequence(std::move(g));
}

/// Member m of the family generated by x; none when g[., m] vanishes.
inline std::optional<eigensequence> generate(const eigensequence& x, long long m, tolerance tol = {}) {
    return adopt(generating_function(x.seq(), m), x.lambda(), tol);
}

/// g[., m] for m = 1..ceil(N/2), zero members dropped and near-duplicates merged.
inline std::vector<eigensequence> generate_family(const eigensequence& x, tolerance tol = {}) {
    const long long half = (static_cast<long long>(x.size()) + 1) / 2;
    std::vector<eigensequence> family;
    for (long long m = 1; m <= half; ++m) {
        auto g = generate(x, m, tol);
        if (!g) continue;
        const bool seen = std::any_of(family.begin(), family.end(),
                                      [&](const eigensequence& f) { return approx_equal(f.seq(), g->seq(), tol); });
        if (!seen) family.push_back(std::move(*g));
    }
    return family;
}

/// A real scalar multiple of an eigensequence, one term of linear_combine.
struct weighted_term {
    double weight;
    const eigensequence& x;
};

/**
 * sum_i a_i x_i over a single eigenspace. Throws invalid_input when the terms
 * mix eigenvalues or lengths; none when the sum vanishes.
 */
inline std::optional<eigensequence> linear_combine(std::span<const weighted_term> terms, tolerance tol = {}) {
    if (terms.empty()) throw invalid_input("linear_combine needs at least one term");
    const eigenvalue lambda = terms.front().x.lambda();
    auto acc = sequence::zeros(terms.front().x.size());
    for (const auto& t : terms) {
        if (t.x.lambda() != lambda) throw invalid_input("terms belong to different eigenspaces");
        if (!std::isfinite(t.weight)) throw invalid_input("weights must be finite");
        acc += t.weight * t.x.seq();
    }
    return adopt(std::move(acc), lambda, tol);
}

inline std::optional<eigensequence> linear_combine(std::initializer_list<weighted_term> terms, tolerance tol = {}) {
    return linear_combine(std::span<const weighted_term>(terms.begin(), terms.size()), tol);
}

/**
 * Dimension of the lambda eigenspace for length n: numerical rank of the
 * projector (1/4) sum_p lambda^{-p} D^p, obtained from the singular values of
 * its matrix (columns = projector applied to the standard basis).
 */
inline std::size_t eigenspace_dimension(std::size_t n, eigenvalue lambda) {
    if (n == 0) throw invalid_input("length must be at least 1");
    Eigen::MatrixXcd proj(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t col = 0; col < n; ++col) {
        std::vector<complex> basis(n);
        basis[col] = 1.0;
        const sequence unit(std::move(basis));
        auto acc = sequence::zeros(n);
        for (int p = 0; p < 4; ++p) acc += power_of(lambda, -p) * apply_dft_power(unit, p);
        for (std::size_t row = 0; row < n; ++row)
            proj(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = 0.25 * acc[row];
    }
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(proj);
    const auto& sv = svd.singularValues();
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] > 1e-8) ++rank;
    return rank;
}

} // namespace dftis
