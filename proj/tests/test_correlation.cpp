#include "gapcorr/correlation.hpp"
#include "gapcorr/coupling.hpp"
#include "gapcorr/errors.hpp"
#include "gapcorr/ucoeff.hpp"

#include "random_configs.hpp"

#include <gtest/gtest.h>

using namespace gapcorr;
using enum Orientation;

namespace {

const double kTri = 3.0 / (4 * M_PI * M_PI);

Multihole triangle(Orientation o, long x, long y) { return Multihole{o, 1, {0}, x, y}; }

} // namespace

TEST(Correlation, MonomerAnchors) {
    EXPECT_NEAR(monomer_correlation({{right, 0, 0}}, {{left, 0, 0}}, 128).to_double(), 1.0 / 3, 1e-16);
    EXPECT_NEAR(monomer_correlation({{right, 0, 0}, {right, 1, -1}}, {}, 128).to_double(), kTri, 1e-16);
    HPMatrix m = monomer_matrix({{right, 0, 0}}, {{left, 5, 0}}, 128);
    EXPECT_EQ(m(0, 0), p_eval(-5, 0, 128));
    EXPECT_THROW(monomer_correlation({{right, 0, 0}}, {{left, 5, 0}}, 128), PairingUnsatisfied);
}

TEST(Correlation, MonomerErrors) {
    EXPECT_THROW(monomer_correlation({{right, 0, 0}}, {{left, 0, 0}, {left, 1, 0}}, 128), ChargeNegative);
    EXPECT_THROW(monomer_correlation({{right, 0, 0}}, {}, 128), ParityError);
    EXPECT_THROW(monomer_correlation({{right, 0, 0}}, {{left, 7, 7}}, 128), PairingUnsatisfied);
    EXPECT_THROW(monomer_correlation({{left, 0, 0}}, {{left, 0, 0}}, 128), DomainError);
}

TEST(Correlation, Pairability) {
    EXPECT_TRUE(monomers_pairable({{right, 0, 0}}, {{left, 0, 0}}));
    EXPECT_TRUE(monomers_pairable({{right, -1, 0}, {right, 0, -1}}, {}));
    EXPECT_FALSE(monomers_pairable({{right, 0, 0}, {right, 5, 5}}, {}));
}

TEST(Correlation, SingleTriangle) {
    MultiholeConfig cfg{{triangle(right, 0, 0)}, 0};
    EXPECT_NEAR(correlation(cfg, 128).to_double(), kTri, 1e-16);
    HPMatrix m = build_matrix(cfg, ObliqueVector(0L, 0L), 128);
    ASSERT_EQ(m.rows(), 2u);
    EXPECT_EQ(m(0, 1).to_double(), 0.0);
    EXPECT_NEAR(abs(m(0, 0) * m(1, 1)).to_double(), kTri, 1e-16);
}

TEST(Correlation, TwoTriangleBlock) {
    const long R = 7;
    MultiholeConfig cfg{{triangle(right, 0, 0), triangle(left, R, 0)}, 0};
    HPMatrix m = build_matrix(cfg, ObliqueVector(0L, 0L), 128);
    const long off[2][2][2] = {{{-1, -1}, {-2, 0}}, {{0, -2}, {-1, -1}}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            EXPECT_EQ(m(i, j), p_eval(-R + off[i][j][0], off[i][j][1], 128));
}

TEST(Correlation, RelativeChange) {
    MultiholeConfig cfg{{triangle(right, 0, 0), triangle(left, 48, 0)}, 0};
    EXPECT_TRUE(relative_change(cfg, 0, 0).is_zero());
    const double t = relative_change(cfg, 1, 0).to_double();
    EXPECT_NEAR(t * 48 / 2, 1.0, 0.1);
}

TEST(Correlation, Validation) {
    EXPECT_THROW((MultiholeConfig{{triangle(right, 0, 0), triangle(right, 1, 0)}, 0}.validate()), OverlapError);
    EXPECT_THROW((MultiholeConfig{{triangle(left, 0, 0)}, 0}.validate()), ChargeNegative);
    EXPECT_THROW((MultiholeConfig{{Multihole{right, Rational(1, 2), {0, 1}, 0, 0}}, 0}.validate()), DomainError);
    MultiholeConfig cfg{{triangle(right, 0, 0), triangle(left, 2, 0)}, 0};
    EXPECT_NO_THROW(build_matrix(cfg, ObliqueVector(1L, 0L), 128));
    EXPECT_THROW(build_matrix(cfg, ObliqueVector(2L, 0L), 128), OverlapError);
}

TEST(Correlation, ScaledAnchors) {
    ScaledConfig sc{{ScaledHole{right, 1, {0}, ObliqueVector(Rational(1, 2), Rational(0)), std::nullopt}}, 0,
                    PositionMode::exact};
    EXPECT_EQ(sc.anchor(0, 8), (std::pair<long, long>{4, 0}));
    EXPECT_THROW(sc.anchor(0, 7), DomainError);
    sc.mode = PositionMode::rounded;
    EXPECT_EQ(sc.anchor(0, 7), (std::pair<long, long>{4, 0}));
    sc.holes[0].residues = std::array<int, 2>{0, 1};
    EXPECT_EQ(sc.anchor(0, 7), (std::pair<long, long>{3, 1}));
}

// Block construction from triangle anchors against the stacked monomer matrix.
TEST(Correlation, TriangleBlocksMatchMonomers) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 5; ++trial) {
        MultiholeConfig cfg = fixtures::random_multihole_config(rng);
        HPReal a = abs(det_hp(fixtures::triangle_block_matrix(cfg, 128), 128));
        StackedMonomers st = stacked_monomers(cfg);
        HPReal b = monomer_correlation(st.rights, st.lefts, 128);
        EXPECT_LE(rel_diff(a, b).to_double(), 1e-25);
    }
}
