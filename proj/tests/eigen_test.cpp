// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dftis/eigen.hpp"
#include "oracle.hpp"

using namespace dftis;

namespace {

void expect_seq_near(const sequence& got, const oracle::cvec& want, double tol) {
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i)
        EXPECT_LE(std::abs(got[i] - want[i]), tol) << "index " << i << " got " << got[i] << " want " << want[i];
}

/// Residual against the oracle DFT, independent of the library transform.
double oracle_residual(const eigensequence& e) {
    const oracle::cvec x(e.seq().begin(), e.seq().end());
    const auto big = oracle::dft(x);
    double r = 0;
    for (std::size_t i = 0; i < x.size(); ++i) r = std::max(r, std::abs(big[i] - value_of(e.lambda()) * x[i]));
    return r;
}

bool has_parity(const eigensequence& e, double tol) {
    const double s = is_real_eigenvalue(e.lambda()) ? 1.0 : -1.0;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (std::abs(e.seq()[i] - s * e.seq().at(-static_cast<long long>(i))) > tol) return false;
    return true;
}

const sequence x1{1, 0, 1, 0};
const sequence x2{1, -1, -1, -1};

} // namespace

TEST(Eigenvalue, FourthPowerIsOne) {
    for (auto l : all_eigenvalues) {
        EXPECT_EQ(power_of(l, 4), complex(1, 0));
        EXPECT_EQ(parse_eigenvalue(to_string(l)), l);
    }
    EXPECT_EQ(power_of(eigenvalue::plus_j, -1), complex(0, -1));
    EXPECT_THROW(parse_eigenvalue("2"), invalid_input);
}

TEST(Classify, Examples) {
    EXPECT_EQ(classify(x1), eigenvalue::plus_one);
    EXPECT_EQ(classify(x2), eigenvalue::minus_one);
    EXPECT_EQ(classify(sequence{0, 1, 0, -1}), eigenvalue::minus_j);
    EXPECT_EQ(classify(sequence{1, 2, 3, 4}), std::nullopt);
}

TEST(Classify, ZeroIsDegenerate) {
    EXPECT_THROW(classify(sequence::zeros(5)), degenerate_input);
    EXPECT_THROW(classify(sequence{1e-12, 0, 0}), degenerate_input);
}

TEST(Classify, AmbiguousWithinLooseToleranceGivesNoneAndDiagnostic) {
    // Equal-peak mix of a +1 and a +j eigensequence at N = 5: residuals for both
    // hypotheses are ~sqrt(2) while max|x| = 2, so tol = 1.5 admits two eigenvalues.
    const sequence mixed{-0.073, 1.239, -2.0, 0.0, 0.671};
    const auto c = classify_detail(mixed, tolerance(1.5));
    EXPECT_NEAR(c.residual_of(eigenvalue::plus_one), std::sqrt(2.0), 1e-3);
    EXPECT_NEAR(c.residual_of(eigenvalue::plus_j), std::sqrt(2.0), 1e-3);
    EXPECT_FALSE(c.lambda);
    EXPECT_FALSE(c.diagnostic.empty());
}

TEST(Classify, SpectrumIsOneMultiplyPerSample) {
    for (const auto& x : {x1, x2, sequence{0, 1, 0, -1}}) {
        const auto e = eigensequence::certify(x);
        ASSERT_TRUE(e);
        EXPECT_LE(max_abs_diff(e->spectrum(), unitary_dft(x)), 1e-9);
    }
}

TEST(Eigensequence, MakeChecksEigenvalue) {
    EXPECT_NO_THROW(eigensequence::make(x1, eigenvalue::plus_one));
    EXPECT_THROW(eigensequence::make(x1, eigenvalue::minus_one), invalid_input);
    EXPECT_THROW(eigensequence::make(sequence::zeros(4), eigenvalue::minus_one), degenerate_input);
}

TEST(FromEven, Examples) {
    const auto plus = from_even(sequence{1, 0, 0, 0}, +1);
    ASSERT_TRUE(plus);
    EXPECT_EQ(plus->lambda(), eigenvalue::plus_one);
    expect_seq_near(plus->seq(), {1.5, 0.5, 0.5, 0.5}, 1e-15);

    const auto minus = from_even(sequence{1, 0, 0, 0}, -1);
    ASSERT_TRUE(minus);
    EXPECT_EQ(minus->lambda(), eigenvalue::minus_one);
    expect_seq_near(minus->seq(), {0.5, -0.5, -0.5, -0.5}, 1e-15);

    EXPECT_FALSE(from_even(x1, -1));
    EXPECT_THROW(from_even(x1, 0), invalid_input);
}

TEST(FromOdd, Examples) {
    EXPECT_FALSE(from_odd(sequence{0, 1, 0, 0}, +1));

    const auto minus = from_odd(sequence{0, 1, 0, 0}, -1);
    ASSERT_TRUE(minus);
    EXPECT_EQ(minus->lambda(), eigenvalue::minus_j);
    expect_seq_near(minus->seq(), {0, 1, 0, -1}, 1e-15);

    // Frozen from the oracle DFT: O{d1} - j O{D d1} for the unit impulse at n = 1, N = 8.
    const double h = std::sqrt(2.0) / 4;
    const auto plus = from_odd(sequence{0, 1, 0, 0, 0, 0, 0, 0}, +1);
    ASSERT_TRUE(plus);
    EXPECT_EQ(plus->lambda(), eigenvalue::plus_j);
    EXPECT_EQ(classify(plus->seq()), eigenvalue::plus_j);
    expect_seq_near(plus->seq(), {0, 0.25, -h, -0.25, 0, 0.25, h, -0.25}, 1e-15);
}

TEST(Constructions, RandomSeedsAreCertifiedAndHaveParity) {
    std::mt19937_64 rng(33);
    for (std::size_t n = 2; n <= 64; ++n) {
        for (int trial = 0; trial < 4; ++trial) {
            const sequence x(oracle::random_real(rng, n));
            for (int sign : {+1, -1}) {
                for (const auto& y : {from_even(x, sign), from_odd(x, sign)}) {
                    if (!y) continue;
                    EXPECT_LE(oracle_residual(*y), 1e-9) << "n=" << n;
                    EXPECT_TRUE(has_parity(*y, 1e-12)) << "n=" << n;
                    EXPECT_EQ(classify(y->seq()), y->lambda());
                }
            }
        }
    }
}

TEST(Generate, Examples) {
    const auto x = eigensequence::make(x1, eigenvalue::plus_one);
    const auto g1 = generate(x, 1);
    ASSERT_TRUE(g1);
    expect_seq_near(g1->seq(), {2, 2, -2, 2}, 1e-15);
    EXPECT_EQ(g1->lambda(), eigenvalue::plus_one);
    EXPECT_LE(oracle_residual(*g1), 1e-12);

    const auto g2 = generate(x, 2);
    ASSERT_TRUE(g2);
    expect_seq_near(g2->seq(), {4, 0, 4, 0}, 1e-15);

    const auto g0 = generate(x, 0);
    ASSERT_TRUE(g0);
    expect_seq_near(g0->seq(), {4, 0, 4, 0}, 0);
}

TEST(Generate, PreservesEigenvalueAndSymmetry) {
    std::mt19937_64 rng(44);
    for (std::size_t n : {3u, 4u, 7u, 8u, 12u, 15u}) {
        const sequence seed(oracle::random_real(rng, n));
        for (auto maker : {+[](const sequence& s) { return from_even(s, 1); },
                           +[](const sequence& s) { return from_even(s, -1); },
                           +[](const sequence& s) { return from_odd(s, 1); },
                           +[](const sequence& s) { return from_odd(s, -1); }}) {
            const auto x = maker(seed);
            if (!x) continue;
            const auto len = static_cast<long long>(n);
            for (long long m = -2; m <= len + 2; ++m) {
                const auto g = generating_function(x->seq(), m);
                EXPECT_LE(max_abs_diff(g, generating_function(x->seq(), len - m)), 1e-11);
                if (const auto e = generate(*x, m)) {
                    EXPECT_EQ(classify(e->seq()), x->lambda()) << "n=" << n << " m=" << m;
                    EXPECT_LE(oracle_residual(*e), 1e-9);
                }
            }
        }
    }
}

TEST(GenerateFamily, X1Signature) {
    const auto family = generate_family(eigensequence::make(x1, eigenvalue::plus_one));
    ASSERT_EQ(family.size(), 2u);
    expect_seq_near(family[0].seq(), {2, 2, -2, 2}, 1e-15);
    expect_seq_near(family[1].seq(), {4, 0, 4, 0}, 1e-15);
}

TEST(GenerateFamily, LengthOne) {
    const auto family = generate_family(eigensequence::make(sequence{2}, eigenvalue::plus_one));
    ASSERT_EQ(family.size(), 1u);
    expect_seq_near(family[0].seq(), {8}, 0);
}

TEST(GenerateFamily, MembersShareEigenvalueAndAreDistinct) {
    std::mt19937_64 rng(55);
    for (std::size_t n = 2; n <= 20; ++n) {
        const auto x = from_even(sequence(oracle::random_real(rng, n)), -1);
        ASSERT_TRUE(x);
        const auto family = generate_family(*x);
        EXPECT_LE(family.size(), (n + 1) / 2);
        for (std::size_t a = 0; a < family.size(); ++a) {
            EXPECT_EQ(classify(family[a].seq()), x->lambda());
            for (std::size_t b = a + 1; b < family.size(); ++b)
                EXPECT_FALSE(approx_equal(family[a].seq(), family[b].seq()));
        }
    }
}

TEST(LinearCombine, Examples) {
    const auto e1 = eigensequence::make(x1, eigenvalue::plus_one);
    EXPECT_FALSE(linear_combine({{1.0, e1}, {-1.0, e1}}));

    const auto doubled = linear_combine({{2.0, e1}});
    ASSERT_TRUE(doubled);
    expect_seq_near(doubled->seq(), {2, 0, 2, 0}, 0);
    EXPECT_EQ(doubled->lambda(), eigenvalue::plus_one);

    const auto g1 = eigensequence::make(sequence{2, 2, -2, 2}, eigenvalue::plus_one);
    const auto g2 = eigensequence::make(sequence{4, 0, 4, 0}, eigenvalue::plus_one);
    const auto sum = linear_combine({{1.0, g1}, {1.0, g2}});
    ASSERT_TRUE(sum);
    expect_seq_near(sum->seq(), {6, 2, 2, 2}, 0);
    EXPECT_EQ(classify(sum->seq()), eigenvalue::plus_one);
}

TEST(LinearCombine, RejectsMixedEigenspaces) {
    const auto e1 = eigensequence::make(x1, eigenvalue::plus_one);
    const auto e2 = eigensequence::make(x2, eigenvalue::minus_one);
    EXPECT_THROW(linear_combine({{1.0, e1}, {1.0, e2}}), invalid_input);
}

TEST(LinearCombine, ClosureOverRandomCombinations) {
    std::mt19937_64 rng(66);
    std::uniform_real_distribution<double> w(-3, 3);
    for (std::size_t n : {5u, 8u, 13u}) {
        for (int sign : {1, -1}) {
            const auto a = from_odd(sequence(oracle::random_real(rng, n)), sign);
            const auto b = from_odd(sequence(oracle::random_real(rng, n)), sign);
            ASSERT_TRUE(a && b);
            const auto c = linear_combine({{w(rng), *a}, {w(rng), *b}});
            ASSERT_TRUE(c);
            EXPECT_EQ(classify(c->seq()), a->lambda());
        }
    }
}

TEST(EigenspaceDimension, Examples) {
    EXPECT_EQ(eigenspace_dimension(4, eigenvalue::plus_j), 0u);
    EXPECT_EQ(eigenspace_dimension(4, eigenvalue::plus_one), 2u);
    EXPECT_EQ(eigenspace_dimension(1, eigenvalue::plus_one), 1u);
    EXPECT_THROW(eigenspace_dimension(0, eigenvalue::plus_one), invalid_input);
}

TEST(EigenspaceDimension, SumsToLengthAndMatchesIndependentRoutes) {
    for (std::size_t n = 1; n <= 32; ++n) {
        std::size_t total = 0;
        const auto table = oracle::multiplicity_table(n);
        for (auto l : all_eigenvalues) {
            const auto d = eigenspace_dimension(n, l);
            total += d;
            EXPECT_EQ(d, table[static_cast<std::size_t>(l)]) << "n=" << n << " lambda=" << to_string(l);
            EXPECT_NEAR(static_cast<double>(d), oracle::projector_trace(n, value_of(l)), 1e-9);
        }
        EXPECT_EQ(total, n);
    }
}
