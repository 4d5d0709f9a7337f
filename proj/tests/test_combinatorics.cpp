#include <gtest/gtest.h>

#include "bonfbounds/binomial.hpp"
#include "bonfbounds/combinatorics.hpp"
#include "bonfbounds/rational.hpp"
#include "bonfbounds/subsets.hpp"
#include "oracles.hpp"

using namespace bonfbounds;

TEST(Binomial, StandardValues) {
    EXPECT_EQ(binom(6, 3), 20);
    EXPECT_EQ(binom(0, 0), 1);
    EXPECT_EQ(binom(66, 33), 7219428434016265740LL);
    EXPECT_EQ(binom(100, 2), 4950);
}

TEST(Binomial, ExtendedConventionIsZero) {
    EXPECT_EQ(binom(3, 5), 0);
    EXPECT_EQ(binom(-1, 2), 0);
    EXPECT_EQ(binom(-1, -1), 0);
    EXPECT_EQ(binom(4, -1), 0);
}

TEST(Binomial, OverflowIsAnErrorNotAWrap) {
    EXPECT_THROW((void)binom(67, 33), overflow_error);
    EXPECT_THROW((void)binom(200, 100), overflow_error);
    EXPECT_EQ(binom(67, 1), 67);
}

TEST(BinomialTable, PascalAndEdges) {
    const BinomialTable t(30);
    for (int n = 0; n <= 30; ++n) {
        EXPECT_EQ(t(n, 0), 1);
        EXPECT_EQ(t(n, n), 1);
        for (int k = 1; k < n; ++k) ASSERT_EQ(t(n, k), t(n - 1, k - 1) + t(n - 1, k));
    }
    EXPECT_EQ(t(5, 7), 0);
    EXPECT_EQ(t(-2, 1), 0);
    EXPECT_THROW((void)t(31, 2), overflow_error);
    EXPECT_THROW(BinomialTable(67), domain_error);
}

TEST(BinomialTable, AgreesWithMultiplicativeOracle) {
    for (int n = 0; n <= 40; ++n) {
        for (int k = 0; k <= n; ++k) {
            EXPECT_EQ(static_cast<long double>(binom(n, k)), oracle::choose(n, k)) << n << "," << k;
        }
    }
}

TEST(Rational, ReducesAndOrders) {
    const Rational half(wide_int{3}, wide_int{6});
    EXPECT_EQ(half.numerator(), 1);
    EXPECT_EQ(half.denominator(), 2);
    const Rational neg(wide_int{2}, wide_int{-4});
    EXPECT_EQ(neg.numerator(), -1);
    EXPECT_EQ(neg.denominator(), 2);
    EXPECT_EQ(half + neg, Rational(0));
    EXPECT_LT(Rational(wide_int{1}, wide_int{3}), half);
    EXPECT_EQ(half * Rational(wide_int{2}, wide_int{3}), Rational(wide_int{1}, wide_int{3}));
    EXPECT_EQ((half / Rational(wide_int{1}, wide_int{4})), Rational(2));
    EXPECT_EQ(Rational(wide_int{2}, wide_int{3}).str(), "2/3");
    EXPECT_THROW(Rational(wide_int{1}, wide_int{0}), domain_error);
}

TEST(Rational, OverflowDetected) {
    const Rational big(std::int64_t{1} << 62);
    EXPECT_THROW((void)(big * big), overflow_error);
}

TEST(Lemma1, Examples) {
    EXPECT_EQ(lemma1_sum(4, 2), 1);  // 6 - 8 + 3
    EXPECT_EQ(lemma1_sum(1, 3), 0);
    EXPECT_EQ(lemma1_sum(0, 1), 0);
    EXPECT_THROW((void)lemma1_sum(3, 0), domain_error);
    EXPECT_THROW((void)lemma1_sum(61, 1), overflow_error);
}

TEST(Lemma1, IndicatorIdentityExhaustive) {
    for (int m = 0; m <= 20; ++m) {
        for (int r = 1; r <= 20; ++r) {
            ASSERT_EQ(lemma1_sum(m, r), m >= r ? 1 : 0) << "m=" << m << " r=" << r;
        }
    }
}

TEST(Lemma1, HoldsAtCapacity) {
    for (int r = 1; r <= kIdentityCap; r += 7) {
        EXPECT_EQ(lemma1_sum(kIdentityCap, r), 1);
    }
}

TEST(TailIdentity, Examples) {
    auto t = tail_identity(2, 2, 1);
    EXPECT_EQ(t.lhs, 0);
    EXPECT_EQ(t.rhs, 0);
    t = tail_identity(4, 2, 1);
    EXPECT_EQ(t.lhs, -3);
    EXPECT_EQ(t.rhs, -3);
    t = tail_identity(3, 3, 2);
    EXPECT_EQ(t.lhs, 0);
    EXPECT_EQ(t.rhs, 0);
    EXPECT_THROW((void)tail_identity(5, 1, 2), domain_error);
}

TEST(TailIdentity, BothSidesAgreeExhaustive) {
    for (int m = 0; m <= 20; ++m) {
        for (int k = 0; k <= 20; ++k) {
            for (int r = 0; r <= k; ++r) {
                const auto t = tail_identity(m, k, r);
                ASSERT_TRUE(t.lhs == t.rhs) << "m=" << m << " k=" << k << " r=" << r;
            }
        }
    }
}

TEST(TailIdentity, BothSidesAgreeAtCapacity) {
    const auto t = tail_identity(60, 30, 12);
    EXPECT_TRUE(t.lhs == t.rhs);
    EXPECT_NE(t.lhs, 0);
}

TEST(Coefficients, AlphaExamples) {
    EXPECT_EQ(alpha_coefficient(6, 2, 1), Rational(wide_int{1}, wide_int{2}));
    EXPECT_EQ(alpha_coefficient(2, 1, 1), Rational(1));
    EXPECT_EQ(alpha_coefficient(6, 3, 1), Rational(wide_int{2}, wide_int{3}));
    EXPECT_THROW((void)alpha_coefficient(3, 3, 1), domain_error);
    EXPECT_THROW((void)alpha_coefficient(6, 2, 3), domain_error);
    EXPECT_THROW((void)alpha_coefficient(6, 2, 0), domain_error);
}

TEST(Coefficients, GalambosExamples) {
    EXPECT_EQ(galambos_coefficient(6, 2, 1), Rational(wide_int{1}, wide_int{2}));
    EXPECT_EQ(galambos_coefficient(2, 1, 1), Rational(1));
    EXPECT_EQ(galambos_coefficient(5, 4, 2), alpha_coefficient(5, 4, 2));
    // Without the (-1)^{r+k} factor the usual printed form has the wrong sign
    // whenever r + k is odd.
    EXPECT_EQ(galambos_coefficient_unsigned(6, 2, 1), Rational(wide_int{-1}, wide_int{2}));
}

TEST(Coefficients, AlphaEqualsGalambosExhaustive) {
    for (int n = 2; n <= 15; ++n) {
        for (int k = 1; k < n; ++k) {
            for (int r = 1; r <= k; ++r) {
                const Rational a = alpha_coefficient(n, k, r);
                ASSERT_EQ(a, galambos_coefficient(n, k, r)) << n << " " << k << " " << r;
                EXPECT_GT(a, Rational(0));
                if (r == 1) {
                    EXPECT_LE(a, Rational(1));
                }
            }
        }
    }
}

TEST(PermutationWeight, Examples) {
    EXPECT_EQ(permutation_weight(2, 1), Rational(wide_int{1}, wide_int{3}));
    EXPECT_EQ(permutation_weight(1, 1), Rational(wide_int{1}, wide_int{2}));
    Rational sum{0};
    for (int s = 1; s <= 4; ++s) sum += permutation_weight(2, s);
    EXPECT_EQ(sum, Rational(wide_int{2}, wide_int{3}));
    EXPECT_THROW((void)permutation_weight(0, 1), domain_error);
}

TEST(PermutationWeight, TelescopesToOneMinusKOverN) {
    for (int n = 2; n <= 12; ++n) {
        for (int k = 1; k < n; ++k) {
            Rational sum{0};
            for (int s = 1; s <= n - k; ++s) sum += permutation_weight(k, s);
            ASSERT_EQ(sum, Rational(1) - Rational(wide_int{k}, wide_int{n}));
        }
    }
}

TEST(Lemma4, EnumerationExamples) {
    EXPECT_EQ(lemma4_enumerated(2, 1), Rational(wide_int{1}, wide_int{3}));
    EXPECT_EQ(lemma4_enumerated(1, 2), Rational(wide_int{1}, wide_int{6}));
    EXPECT_EQ(lemma4_enumerated(3, 2), Rational(wide_int{3}, wide_int{20}));
    EXPECT_THROW((void)lemma4_enumerated(5, 4), domain_error);
    EXPECT_THROW((void)lemma4_enumerated(0, 2), domain_error);
}

TEST(Lemma4, EnumerationMatchesFormula) {
    for (int k = 1; k < 8; ++k) {
        for (int s = 1; k + s <= 8; ++s) {
            ASSERT_EQ(lemma4_enumerated(k, s), permutation_weight(k, s)) << k << "," << s;
        }
    }
}

TEST(Subsets, LexicographicOrderAndCount) {
    std::vector<std::vector<int>> seen;
    for_each_subset(5, 3, [&](std::span<const int> s) { seen.emplace_back(s.begin(), s.end()); });
    ASSERT_EQ(seen.size(), 10U);
    EXPECT_EQ(seen.front(), (std::vector<int>{1, 2, 3}));
    EXPECT_EQ(seen.back(), (std::vector<int>{3, 4, 5}));
    EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));

    int count = 0;
    for_each_subset(4, 0, [&](std::span<const int> s) { count += s.empty() ? 1 : 100; });
    EXPECT_EQ(count, 1);
    count = 0;
    for_each_subset_in(5, 4, 1, [&](std::span<const int>) { ++count; });
    EXPECT_EQ(count, 0);
}

TEST(Subsets, ColexRankIsDenseBijection) {
    for (int n = 1; n <= 9; ++n) {
        for (int k = 1; k <= n; ++k) {
            std::vector<bool> hit(static_cast<std::size_t>(binom(n, k)), false);
            for_each_subset(n, k, [&](std::span<const int> s) {
                const auto rank = colex_rank(s);
                ASSERT_LT(rank, static_cast<std::int64_t>(hit.size()));
                ASSERT_FALSE(hit[static_cast<std::size_t>(rank)]);
                hit[static_cast<std::size_t>(rank)] = true;
            });
        }
    }
}
