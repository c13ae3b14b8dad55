#include "gapcorr/coupling.hpp"
#include "gapcorr/errors.hpp"
#include "gapcorr/ucoeff.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace gapcorr;

TEST(UCoeff, GeneralizedBinomial) {
    EXPECT_EQ(gbinom(5, 2), 10);
    EXPECT_EQ(gbinom(-1, 3), -1);
    EXPECT_EQ(gbinom(-2, 2), 3);
    EXPECT_EQ(gbinom(4, 0), 1);
    EXPECT_EQ(gbinom(2, 3), 0);
}

TEST(UCoeff, Anchors) {
    EXPECT_EQ(u_coeff(0, 1, 0).coeff, 0);
    EXPECT_EQ(u_coeff(0, 0, 1).coeff, 1);
    EXPECT_EQ(u_coeff(0, 2, -1).coeff, -1);
    EXPECT_NEAR(u_coeff(0, 0, 1).value(128).to_double(), std::sqrt(3.0) / (2 * M_PI), 1e-16);
    EXPECT_THROW(u_coeff(17, 0, 0), DomainError);
    EXPECT_THROW(u_coeff(-1, 0, 0), DomainError);
}

TEST(UCoeff, ZeroOrderClosedForm) {
    for (long a = -10; a <= 10; ++a)
        for (long b = -10; b <= 10; ++b) {
            const long m = ((a - b - 1) % 3 + 3) % 3;
            const long expect = m == 0 ? 0 : (m == 1 ? 1 : -1);
            EXPECT_EQ(u_coeff(0, a, b).coeff, expect) << a << "," << b;
        }
}

TEST(UCoeff, Identity) {
    EXPECT_TRUE(u_identity_check(0, 3, 1));
    EXPECT_TRUE(u_identity_check(2, -4, 5));
    EXPECT_TRUE(u_identity_check(5, 0, 0));
    for (int s = 0; s <= 6; ++s)
        for (long a = -8; a <= 8; ++a)
            for (long b = -8; b <= 8; ++b) EXPECT_TRUE(u_identity_check(s, a, b)) << s << " " << a << " " << b;
}

TEST(UCoeff, SeriesResidual) {
    EXPECT_TRUE(p_series_residual(1, 0, 0, 0, 256).is_finite());
    // first-order residual scales like (3r)^-2
    const double r10 = p_series_residual(10, 0, 0, 0, 256).to_double();
    const double r20 = p_series_residual(20, 0, 0, 0, 256).to_double();
    EXPECT_LT(r10, 10.0 / 900);
    EXPECT_NEAR(std::log(r10 / r20) / std::log(2.0), 2.0, 0.2);
    EXPECT_THROW(p_series_residual(0, 0, 0, 0, 256), DomainError);
}
