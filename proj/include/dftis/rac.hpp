// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "dftis/dft.hpp"
#include "dftis/eigen.hpp"

namespace dftis {

/// Group index 1..4 <-> eigenvalue +1, -1, +j, -j.
inline eigenvalue group_eigenvalue(int group) {
    switch (group) {
    case 1: return eigenvalue::plus_one;
    case 2: return eigenvalue::minus_one;
    case 3: return eigenvalue::plus_j;
    case 4: return eigenvalue::minus_j;
    default: throw invalid_input("group index must be 1..4, got " + std::to_string(group));
    }
}

inline int group_of(eigenvalue l) { return static_cast<int>(l) + 1; }

/**
 * Which eigenspace groups share the channel: "2" (groups 1,2), "3/123",
 * "3/124", "3/134", "3/234" or "4".
 */
class rac_case {
public:
    static rac_case parse(std::string_view name) {
        for (const auto& c : all())
            if (c.name() == name) return c;
        throw invalid_input("unknown channel case '" + std::string(name) + "'");
    }

    /// The case whose group set is exactly `groups` (any order).
    static rac_case from_groups(std::vector<int> groups) {
        std::sort(groups.begin(), groups.end());
        for (const auto& c : all())
            if (std::equal(groups.begin(), groups.end(), c.groups().begin(), c.groups().end())) return c;
        throw invalid_input("group set does not form a supported channel case");
    }

    static const std::array<rac_case, 6>& all() {
        static const std::array<rac_case, 6> cases{
            rac_case("2", {1, 2}),        rac_case("3/123", {1, 2, 3}), rac_case("3/124", {1, 2, 4}),
            rac_case("3/134", {1, 3, 4}), rac_case("3/234", {2, 3, 4}), rac_case("4", {1, 2, 3, 4})};
        return cases;
    }

    std::size_t users() const noexcept { return groups_.size(); }
    std::span<const int> groups() const noexcept { return groups_; }
    const std::string& name() const noexcept { return name_; }

    bool contains(int group) const { return std::find(groups_.begin(), groups_.end(), group) != groups_.end(); }

    friend bool operator==(const rac_case& a, const rac_case& b) { return a.name_ == b.name_; }

private:
    rac_case(std::string name, std::vector<int> groups) : name_(std::move(name)), groups_(std::move(groups)) {}

    std::string name_;
    std::vector<int> groups_;
};

/// An eigensequence assigned to a user, checked against its group.
class user_signature {
public:
    /**
     * Registers a signature. Rejects groups whose eigenspace is trivial at this
     * length (e.g. group 3 at N = 4) and signatures whose eigenvalue does not
     * match the group.
     */
    static user_signature make(std::string user_id, int group, const eigensequence& sig) {
        check_feasible(group, sig.size());
        if (sig.lambda() != group_eigenvalue(group))
            throw invalid_input("signature of user '" + user_id + "' has eigenvalue " +
                                std::string(to_string(sig.lambda())) + " but group " + std::to_string(group) +
                                " requires " + std::string(to_string(group_eigenvalue(group))));
        return user_signature(std::move(user_id), group, sig);
    }

    /// Certifies a raw sequence against the group's eigenvalue, then registers it.
    static user_signature make(std::string user_id, int group, const sequence& seq, tolerance tol = {}) {
        check_feasible(group, seq.size());
        return user_signature(std::move(user_id), group, eigensequence::make(seq, group_eigenvalue(group), tol));
    }

    const std::string& user_id() const noexcept { return user_id_; }
    int group() const noexcept { return group_; }
    const eigensequence& signature() const noexcept { return signature_; }
    const sequence& seq() const noexcept { return signature_.seq(); }
    std::size_t size() const noexcept { return signature_.size(); }

private:
    user_signature(std::string id, int group, eigensequence sig)
        : user_id_(std::move(id)), group_(group), signature_(std::move(sig)) {}

    static void check_feasible(int group, std::size_t n) {
        const auto l = group_eigenvalue(group);
        if (eigenspace_dimension(n, l) == 0)
            throw invalid_input("group " + std::to_string(group) + " (eigenvalue " + std::string(to_string(l)) +
                                ") has a trivial eigenspace at N = " + std::to_string(n) +
                                "; no signature can be assigned");
    }

    std::string user_id_;
    int group_;
    eigensequence signature_;
};

/// One channel use: the superposition y and the case that produced it.
struct channel_frame {
    sequence y;
    rac_case rac;
};

/// A recovered per-group component a_i x_i.
struct recovered_component {
    int group;
    sequence component;
};

namespace detail {

inline void check_case_signatures(std::span<const user_signature> sigs, const rac_case& rac) {
    if (sigs.size() != rac.users())
        throw invalid_input("case " + rac.name() + " needs " + std::to_string(rac.users()) + " signatures, got " +
                            std::to_string(sigs.size()));
    std::vector<int> groups;
    for (const auto& s : sigs) {
        if (s.size() != sigs.front().size()) throw invalid_input("signatures have mixed lengths");
        groups.push_back(s.group());
    }
    std::sort(groups.begin(), groups.end());
    if (std::adjacent_find(groups.begin(), groups.end()) != groups.end())
        throw invalid_input("two signatures share a group");
    if (!std::equal(groups.begin(), groups.end(), rac.groups().begin(), rac.groups().end()))
        throw invalid_input("signature groups do not match case " + rac.name());
}

} // namespace detail

/// y[n] = sum_i a_i x_i[n]. weights[i] scales sigs[i].
inline channel_frame combine(std::span<const double> weights, std::span<const user_signature> sigs,
                             const rac_case& rac) {
    detail::check_case_signatures(sigs, rac);
    if (weights.size() != sigs.size()) throw invalid_input("one weight per signature is required");
    auto y = sequence::zeros(sigs.front().size());
    for (std::size_t i = 0; i < sigs.size(); ++i) {
        if (!std::isfinite(weights[i])) throw invalid_input("weights must be finite");
        y += weights[i] * sigs[i].seq();
    }
    return {std::move(y), rac};
}

/**
 * Closed-form separation of a frame into its per-group components, using only
 * y, its DFT Y and their even/odd parts. Components come back in case order.
 *
 * A real frame must separate into real components; otherwise y does not lie in
 * the sum of the case's eigenspaces and numerical_error is thrown.
 */
inline std::vector<recovered_component> recover(const channel_frame& frame, tolerance tol = {}) {
    const sequence& y = frame.y;
    const auto spectrum = unitary_dft(y);
    const auto ey = even_part(y);
    const auto oy = odd_part(y);
    const complex j{0, 1};
    const std::string& name = frame.rac.name();

    std::vector<recovered_component> out;
    if (name == "2") {
        out = {{1, 0.5 * (y + spectrum)}, {2, 0.5 * (y - spectrum)}};
    } else if (name == "3/123") {
        out = {{1, 0.5 * (ey - j * oy + spectrum)}, {2, 0.5 * (ey + j * oy - spectrum)}, {3, oy}};
    } else if (name == "3/124") {
        out = {{1, 0.5 * (ey + j * oy + spectrum)}, {2, 0.5 * (ey - j * oy - spectrum)}, {4, oy}};
    } else if (name == "3/134") {
        out = {{1, ey}, {3, 0.5 * (oy + j * ey - j * spectrum)}, {4, 0.5 * (oy - j * ey + j * spectrum)}};
    } else if (name == "3/234") {
        out = {{2, ey}, {3, 0.5 * (oy - j * ey - j * spectrum)}, {4, 0.5 * (oy + j * ey + j * spectrum)}};
    } else {
        const auto eY = even_part(spectrum);
        const auto oY = odd_part(spectrum);
        out = {{1, 0.5 * (ey + eY)}, {2, 0.5 * (ey - eY)}, {3, 0.5 * (oy - j * oY)}, {4, 0.5 * (oy + j * oY)}};
    }

    if (y.max_abs_imag() <= tol.eps) {
        for (const auto& c : out) {
            if (c.component.max_abs_imag() > tol.eps)
                throw numerical_error("real frame produced a complex component for group " + std::to_string(c.group) +
                                      " (imaginary residue " + std::to_string(c.component.max_abs_imag()) +
                                      "); frame is not consistent with case " + name);
        }
    }
    return out;
}

/// Row p, column i holds lambda_i^p, p = 0..t-1.
inline Eigen::MatrixXcd case_matrix(const rac_case& rac) {
    const auto t = static_cast<Eigen::Index>(rac.users());
    Eigen::MatrixXcd m(t, t);
    for (Eigen::Index p = 0; p < t; ++p)
        for (Eigen::Index i = 0; i < t; ++i)
            m(p, i) = power_of(group_eigenvalue(rac.groups()[static_cast<std::size_t>(i)]), static_cast<int>(p));
    return m;
}

/// Vandermonde determinant of case_matrix, prod_{i<k} (lambda_k - lambda_i), exact.
inline complex expected_case_determinant(const rac_case& rac) {
    complex det{1, 0};
    const auto g = rac.groups();
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t k = i + 1; k < g.size(); ++k)
            det *= value_of(group_eigenvalue(g[k])) - value_of(group_eigenvalue(g[i]));
    return det;
}

/**
 * Separation by solving, sample by sample, sum_i lambda_i^p x_i[n] = D^p(y)[n]
 * for p = 0..t-1. Independent of the closed forms used by recover().
 */
inline std::vector<recovered_component> recover_via_matrix(const channel_frame& frame) {
    const auto m = case_matrix(frame.rac);
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
    const complex det = lu.determinant();
    if (std::abs(det) < 1e-12 || std::abs(det - expected_case_determinant(frame.rac)) > 1e-12)
        throw numerical_error("coefficient matrix for case " + frame.rac.name() + " has unexpected determinant");

    const auto t = static_cast<Eigen::Index>(frame.rac.users());
    const auto n = static_cast<Eigen::Index>(frame.y.size());
    Eigen::MatrixXcd rhs(t, n);
    for (Eigen::Index p = 0; p < t; ++p) {
        const auto dp = apply_dft_power(frame.y, static_cast<int>(p));
        for (Eigen::Index k = 0; k < n; ++k) rhs(p, k) = dp[static_cast<std::size_t>(k)];
    }
    const Eigen::MatrixXcd sol = lu.solve(rhs);

    std::vector<recovered_component> out;
    for (Eigen::Index i = 0; i < t; ++i) {
        std::vector<complex> c(static_cast<std::size_t>(n));
        for (Eigen::Index k = 0; k < n; ++k) c[static_cast<std::size_t>(k)] = sol(i, k);
        out.push_back({frame.rac.groups()[static_cast<std::size_t>(i)], sequence(std::move(c))});
    }
    return out;
}

/// Least-squares coefficient a minimising |component - a * signature|, restricted to real a.
inline double extract_coefficient(const sequence& component, const sequence& signature) {
    if (component.size() != signature.size()) throw invalid_input("component and signature lengths differ");
    const double norm = signature.energy();
    if (norm == 0.0) throw invalid_input("signature has zero norm");
    complex inner{};
    for (std::size_t i = 0; i < component.size(); ++i) inner += component[i] * std::conj(signature[i]);
    return inner.real() / norm;
}

inline double extract_coefficient(const sequence& component, const user_signature& sig) {
    return extract_coefficient(component, sig.seq());
}

/**
 * Largest weight magnitude M such that |a_i| <= M keeps the channel energy
 * within e_max: M = sqrt(e_max / sum_n (sum_i |x_i[n]|)^2).
 */
inline double peak_coefficient(double e_max, std::span<const sequence> sigs) {
    if (!(e_max > 0.0) || !std::isfinite(e_max)) throw invalid_input("e_max must be a positive finite number");
    if (sigs.empty()) throw invalid_input("at least one signature is required");
    double denom = 0;
    for (std::size_t n = 0; n < sigs.front().size(); ++n) {
        double s = 0;
        for (const auto& x : sigs) {
            if (x.size() != sigs.front().size()) throw invalid_input("signatures have mixed lengths");
            s += std::abs(x[n]);
        }
        denom += s * s;
    }
    if (denom == 0.0) throw invalid_input("all signatures are zero; peak coefficient is unbounded");
    return std::sqrt(e_max / denom);
}

inline double peak_coefficient(double e_max, std::span<const user_signature> sigs) {
    std::vector<sequence> seqs;
    for (const auto& s : sigs) seqs.push_back(s.seq());
    return peak_coefficient(e_max, std::span<const sequence>(seqs));
}

inline double channel_energy(const channel_frame& frame) { return frame.y.energy(); }

/**
 * Picks one user per group of the case by seeded weighted sampling inside each
 * group. Groups are drawn in case order from a single mt19937_64 stream, so the
 * result depends only on (users order, case, seed, priorities). Without
 * priorities every user weighs 1; a zero priority excludes the user.
 */
inline std::vector<user_signature> schedule(std::span<const user_signature> users, const rac_case& rac,
                                            std::uint64_t seed,
                                            std::optional<std::span<const double>> priorities = std::nullopt) {
    if (priorities && priorities->size() != users.size())
        throw invalid_input("one priority per user is required");
    std::mt19937_64 rng(seed);
    std::vector<user_signature> chosen;
    for (int g : rac.groups()) {
        std::vector<std::size_t> idx;
        std::vector<double> cumulative;
        double total = 0;
        for (std::size_t i = 0; i < users.size(); ++i) {
            if (users[i].group() != g) continue;
            const double w = priorities ? (*priorities)[i] : 1.0;
            if (!(w >= 0.0) || !std::isfinite(w)) throw invalid_input("priorities must be non-negative and finite");
            total += w;
            idx.push_back(i);
            cumulative.push_back(total);
        }
        if (idx.empty()) throw scheduling_error("group " + std::to_string(g) + " has no registered users");
        if (total <= 0.0) throw scheduling_error("group " + std::to_string(g) + " has no user with positive priority");
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * total;
        const auto pick = std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin();
        chosen.push_back(users[idx[static_cast<std::size_t>(std::min<std::ptrdiff_t>(pick, std::ssize(idx) - 1))]]);
    }
    return chosen;
}

} // namespace dftis
