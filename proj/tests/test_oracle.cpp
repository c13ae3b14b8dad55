#include "gapcorr/errors.hpp"
#include "gapcorr/oracle.hpp"

#include <gtest/gtest.h>

using namespace gapcorr;
using enum Orientation;

TEST(Oracle, FullTorusCounts) {
    const long expect[] = {0, 3, 9, 42, 417};
    for (long N = 1; N <= 4; ++N) {
        EXPECT_EQ(count_matchings_bt({N}, {}), expect[N]);
        EXPECT_EQ(count_matchings_kasteleyn({N}, {}), expect[N]);
    }
}

TEST(Oracle, UnbalancedPunch) {
    HolePunch h{{{right, 0, 0}}};
    EXPECT_EQ(count_matchings_bt({3}, h), 0);
    EXPECT_EQ(count_matchings_kasteleyn({3}, h), 0);
    EXPECT_THROW(torus_correlation(3, h), DomainError);
}

TEST(Oracle, Budget) {
    EXPECT_THROW(count_matchings_bt({5}, {}), BudgetExceeded);
    EXPECT_THROW(count_matchings_kasteleyn({33}, {}), BudgetExceeded);
    EXPECT_THROW(count_matchings_bt({4}, {}, 10), BudgetExceeded);
}

TEST(Oracle, BacktrackingAgreesOnPairs) {
    for (long N = 2; N <= 3; ++N)
        for (long a = 0; a < N; ++a)
            for (long b = 0; b < N; ++b)
                for (long c = 0; c < N; ++c)
                    for (long d = 0; d < N; ++d) {
                        HolePunch h{{{right, a, b}, {left, c, d}}};
                        EXPECT_EQ(count_matchings_bt({N}, h), count_matchings_kasteleyn({N}, h));
                    }
}

TEST(Oracle, LozengeRatio) {
    for (long N = 2; N <= 8; ++N) {
        EXPECT_EQ(torus_correlation(N, {{{right, 0, 0}, {left, 0, 0}}}), Rational(1, 3));
        EXPECT_EQ(torus_correlation(N, {{{right, 1, 1}, {left, 1, 2}}}), Rational(1, 3));
    }
    EXPECT_EQ(torus_correlation(5, {}), 1);
}

TEST(Oracle, FromConfig) {
    MultiholeConfig cfg{{Multihole{right, 1, {0}, 1, 1}, Multihole{left, 1, {0}, 3, 1}}, 0};
    HolePunch h = HolePunch::from_config(cfg);
    EXPECT_EQ(h.cells.size(), 8u);
    const Rational r8 = torus_correlation(8, h), r12 = torus_correlation(12, h);
    const double w = correlation(cfg).to_double();
    EXPECT_LT(std::abs(r12.get_d() / w - 1), std::abs(r8.get_d() / w - 1));
}

TEST(Oracle, MultimodularDeterminant) {
    EXPECT_EQ(det_multimodular({}), 1);
    EXPECT_EQ(det_multimodular({{2, 1}, {1, 2}}), 3);
    EXPECT_EQ(det_multimodular({{0, 1}, {1, 0}}), -1);
    EXPECT_EQ(det_multimodular({{1, 2}, {2, 4}}), 0);
    // large entries exercise several primes
    const long big = 1L << 40;
    Integer expect = Integer(big) * Integer(big) * Integer(big) - 1;
    EXPECT_EQ(det_multimodular({{big, 1, 0}, {0, big, 1}, {1, 0, big}}), expect + 2);
}
