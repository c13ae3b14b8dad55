#include "gapcorr/coupling.hpp"
#include "gapcorr/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace gapcorr;

TEST(Coupling, BaseValues) {
    EXPECT_EQ(p_base(-1, -1), (ExactPValue{0, Rational(-1, 2)}));
    EXPECT_EQ(p_base(-2, -1), (ExactPValue{0, Rational(1, 4)}));
    EXPECT_EQ(p_base(-1, -2), (ExactPValue{0, Rational(1, 4)}));
    EXPECT_THROW(p_base(0, -1), DomainError);
}

TEST(Coupling, ExactAnchors) {
    EXPECT_EQ(p_exact(-1, 0), (ExactPValue{Rational(1, 3), 0}));
    EXPECT_EQ(p_exact(0, 0), (ExactPValue{Rational(1, 3), 0}));
    EXPECT_EQ(p_exact(0, -1), -p_exact(-1, -1) - p_exact(0, -2));
    EXPECT_NEAR(p_exact(-1, -1).value(128).to_double(), -0.27566444771089600, 1e-16);
}

TEST(Coupling, ArcAgreesWithBase) {
    for (long x = -8; x <= -1; ++x)
        for (long y = -8; y <= -1; ++y) EXPECT_EQ(p_arc(x, y), p_base(x, y)) << x << "," << y;
}

TEST(Coupling, Quadrature) {
    EXPECT_NEAR(p_quadrature(-1, -1, 128).to_double(), -0.27566444771089600, 1e-16);
    HPReal third(Rational(1, 3), 128);
    EXPECT_LT(abs(p_quadrature(-1, 0, 128) - third).to_double(), 1e-30);
    EXPECT_LT(abs(p_quadrature(-3, -1, 128) - p_exact(-3, -1).value(128)).to_double(), 1e-30);
    EXPECT_LT(abs(p_quadrature(-7, 5, 128) - p_exact(-7, 5).value(128)).to_double(), 1e-30);
}

TEST(Coupling, EvalMatchesExact) {
    EXPECT_NEAR(p_eval(-1, 0, 128).to_double(), 1.0 / 3, 1e-16);
    EXPECT_NEAR(p_eval(0, 0, 128).to_double(), 1.0 / 3, 1e-16);
    // far along the axis P behaves like U_0(0,0)/(3r) with 3r = 30
    const double far = p_eval(-31, -1, 128).to_double();
    EXPECT_NEAR(far * 30, -std::sqrt(3.0) / 2 / M_PI, 0.05);
}

TEST(Coupling, RecurrenceAndSymmetries) {
    EXPECT_NO_THROW(coupling_prebuild(20));
    EXPECT_GE(coupling_cache_size(), 41u * 41u);
}

TEST(Coupling, RingFormRecovery) {
    for (auto [x, y] : {std::pair{-1L, -1L}, {-4L, 2L}, {-3L, -5L}, {-1L, 0L}, {-9L, 4L}}) EXPECT_NO_THROW(ring_form_check(x, y));
    auto fit = fit_ring_form(HPReal(Rational(1, 3), 256));
    ASSERT_TRUE(fit.has_value());
    EXPECT_EQ(*fit, (ExactPValue{Rational(1, 3), 0}));
}

TEST(Coupling, StringForm) {
    EXPECT_EQ(p_exact(-1, 0).str(), "1/3");
    EXPECT_EQ(p_exact(-1, -1).str(), "-1/2*sqrt3/pi");
    EXPECT_EQ(p_exact(-3, 0).str(), p_exact(-3, 0).rat.get_str() + " + " + p_exact(-3, 0).trans.get_str() + "*sqrt3/pi");
}
