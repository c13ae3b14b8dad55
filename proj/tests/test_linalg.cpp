#include "gapcorr/linalg.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace gapcorr;

TEST(Linalg, Identity) {
    HPMatrix m(3, 3, HPReal(128));
    for (std::size_t i = 0; i < 3; ++i) m(i, i) = HPReal(1L, 128);
    EXPECT_EQ(det_hp(m, 128).to_double(), 1.0);
}

TEST(Linalg, Empty) {
    EXPECT_EQ(det_hp(HPMatrix(), 128).to_double(), 1.0);
    EXPECT_EQ(det_exact(QMatrix()), 1);
}

TEST(Linalg, RandomRationalAgainstBareiss) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> num(-30, 30), den(1, 9);
    for (int trial = 0; trial < 20; ++trial) {
        QMatrix q(5, 5);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j) {
                q(i, j) = Rational(num(rng), den(rng));
                q(i, j).canonicalize();
            }
        const Rational exact = det_exact(q);
        const HPReal approx = det_hp(to_hp(q, 256), 256);
        const HPReal diff = abs(approx - HPReal(exact, 256));
        EXPECT_LE(diff.to_double(), std::ldexp(1.0, -128) * std::max(1.0, std::abs(exact.get_d())));
    }
}

TEST(Linalg, BareissSmall) {
    ZMatrix z(2, 2);
    z(0, 0) = 3, z(0, 1) = 7, z(1, 0) = 1, z(1, 1) = -4;
    EXPECT_EQ(det_bareiss(z), -19);
    ZMatrix s(2, 2);
    s(0, 0) = 0, s(0, 1) = 1, s(1, 0) = 1, s(1, 1) = 0;
    EXPECT_EQ(det_bareiss(s), -1);
}

TEST(Linalg, Complex) {
    HPCMatrix m(2, 2, HPComplex{HPReal(128), HPReal(128)});
    m(0, 0) = HPComplex{HPReal(0L, 128), HPReal(1L, 128)};
    m(1, 1) = HPComplex{HPReal(0L, 128), HPReal(1L, 128)};
    HPComplex d = det_hp(m, 128);
    EXPECT_EQ(d.re.to_double(), -1.0);
    EXPECT_EQ(d.im.to_double(), 0.0);
}
