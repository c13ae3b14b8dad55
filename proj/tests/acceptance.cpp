// Acceptance criteria 1-9. One PASS/FAIL line per criterion; exit status 1 if any fails.
#include "gapcorr/asymptotics.hpp"
#include "gapcorr/coupling.hpp"
#include "gapcorr/errors.hpp"
#include "gapcorr/oracle.hpp"
#include "gapcorr/ucoeff.hpp"

#include "random_configs.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

using namespace gapcorr;
using enum Orientation;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream note;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) note << "failed: " << what << "; ";
        ok = ok && cond;
    }
};

const HPReal& tri_factor() {
    static const HPReal f = HPReal(3L, 256) / (HPReal(4L, 256) * HPReal::pi(256) * HPReal::pi(256));
    return f;
}

void c1(Outcome& o) {
    o.require(p_exact(-1, 0) == ExactPValue{Rational(1, 3), 0}, "P(-1,0) = 1/3");
    o.require(p_exact(-1, -1) == ExactPValue{0, Rational(-1, 2)}, "P(-1,-1) = -sqrt3/(2 pi)");
    double worst = 0;
    for (long x = -15; x <= -1; ++x)
        for (long y = -15; y <= 15; ++y) {
            double d = abs(p_quadrature(x, y, 128) - p_exact(x, y).value(128)).to_double();
            worst = std::max(worst, d);
        }
    o.require(worst <= 1e-25, "quadrature grid");
    o.note << "max |quadrature - exact| = " << worst;
}

void c2(Outcome& o) {
    bool sym = true;
    try {
        coupling_prebuild(30);
    } catch (const InconsistencyError&) {
        sym = false;
    }
    o.require(sym, "P recurrence and symmetries on |x|,|y| <= 30");
    bool ident = true;
    for (int s = 0; s <= 6; ++s)
        for (long a = -8; a <= 8; ++a)
            for (long b = -8; b <= 8; ++b) ident = ident && u_identity_check(s, a, b);
    o.require(ident, "U identity for s <= 6");
    bool u0 = true;
    for (long a = -10; a <= 10; ++a)
        for (long b = -10; b <= 10; ++b) {
            const long m = ((a - b - 1) % 3 + 3) % 3;
            u0 = u0 && u_coeff(0, a, b).coeff == (m == 0 ? 0 : (m == 1 ? 1 : -1));
        }
    o.require(u0, "U_0 closed form");
    o.note << "recurrence/symmetry/identity/U_0 checked exactly";
}

void c3(Outcome& o) {
    for (int S = 0; S <= 2; ++S) {
        std::vector<double> xs, ys;
        for (long r = 10; r <= 100; r += 10) {
            xs.push_back(static_cast<double>(r));
            ys.push_back(p_series_residual(r, 0, 0, S, 256).to_double());
        }
        const double slope = loglog_slope(xs, ys);
        o.note << "S=" << S << " slope " << slope << "; ";
        o.require(std::abs(slope + (S + 2)) <= 0.1, "residual slope for S=" + std::to_string(S));
    }
}

void c4(Outcome& o) {
    const HPReal third(Rational(1, 3), 256);
    const HPReal loz = monomer_correlation({{right, 0, 0}}, {{left, 0, 0}}, 256);
    o.require(abs(loz - third).to_double() <= 1e-20, "lozenge = 1/3");
    const HPReal tri = correlation(MultiholeConfig{{Multihole{right, 1, {0}, 0, 0}}, 0}, 256);
    o.require(abs(tri - tri_factor()).to_double() <= 1e-20, "triangle = 3/(4 pi^2)");
    std::mt19937_64 rng(4);
    double worst = 0;
    for (int trial = 0; trial < 10; ++trial) {
        MultiholeConfig cfg = fixtures::random_multihole_config(rng);
        StackedMonomers st = stacked_monomers(cfg);
        HPReal a = abs(det_hp(fixtures::triangle_block_matrix(cfg, 256), 256));
        HPReal b = monomer_correlation(st.rights, st.lefts, 256);
        worst = std::max(worst, rel_diff(a, b).to_double());
    }
    o.require(worst <= 1e-20, "triangle vs monomer pairs");
    o.note << "worst triangle/monomer rel diff " << worst;
}

void c5(Outcome& o) {
    std::mt19937_64 rng(5);
    double worst = 0, worst_res = 0;
    for (int trial = 0; trial < 24; ++trial) {
        LimitConfig lc = fixtures::random_limit_config(rng);
        HPReal pf = product_formula(lc, 256);
        HPReal det = det_hp(dominant_matrix(lc, 256), 256).re;
        worst = std::max(worst, (abs(det - pf) / pf).to_double());
        for (auto& h : lc.holes) h.residues = {(h.residues[0] + 1) % 3, (h.residues[1] + 2) % 3};
        HPReal det2 = det_hp(dominant_matrix(lc, 256), 256).re;
        worst_res = std::max(worst_res, (abs(det2 - pf) / pf).to_double());
    }
    o.require(worst <= 1e-9, "product formula");
    o.require(worst_res <= 1e-9, "residue independence");
    o.note << "24 configs, max rel err " << worst << ", after residue shift " << worst_res;
}

ScaledConfig two_holes() {
    return ScaledConfig{{ScaledHole{right, 1, {0}, ObliqueVector(0L, 0L), std::nullopt},
                         ScaledHole{left, 1, {0}, ObliqueVector(1L, 0L), std::nullopt}},
                        0, PositionMode::exact};
}

void c6(Outcome& o) {
    SweepTable t = convergence_sweep(two_holes(), 1, 0, {12, 16, 24, 32, 48, 64}, 256);
    const double rt = t.rows.back().r_t.to_double();
    o.require(std::abs(rt - 2) <= 0.2, "R*T within 10% of 2 at R=64");
    o.require(t.slope && *t.slope >= -1.3 && *t.slope <= -0.7, "error slope in [-1.3,-0.7]");
    o.note << "R*T:";
    for (const auto& r : t.rows) o.note << " " << r.r_t.to_double();
    o.note << "; slope " << (t.slope ? *t.slope : NAN);
}

void c7(Outcome& o) {
    const long R = 48;
    ScaledConfig sc = two_holes();
    MultiholeConfig cfg = sc.at(R);
    LimitConfig lc = limit_config(sc, R);
    const ObliqueVector T = t_field(lc);
    const HPReal scale = HPReal(Rational(lc.holes[0].charge()) / (2 * R), 256);
    const CartesianVector pred = scale * oblique_to_cartesian(T, 256);
    const CartesianVector v1 = average_step_exact(cfg, 1, 256);
    const double ang1 = angle_deg(v1, pred);
    const double mag = (v1.norm() / pred.norm()).to_double();
    o.require(ang1 <= 2, "rho=1 direction within 2 degrees");
    o.require(std::abs(mag - 1) <= 0.05, "rho=1 magnitude within 5%");
    const CartesianVector v2 = average_step_exact(cfg, 2, 256);
    const double ang2 = angle_deg(v2, pred);
    o.require(ang2 <= 2, "rho=2 direction within 2 degrees");
    o.note << "rho=1 angle " << ang1 << " deg, magnitude ratio " << mag << "; rho=2 angle " << ang2 << " deg";
}

void c8(Outcome& o) {
    std::mt19937_64 rng(8);
    double worst = 0;
    for (int trial = 0; trial < 10; ++trial) {
        MultiholeConfig cfg = fixtures::random_multihole_config(rng, 3);
        HPMatrix m = build_matrix(cfg, ObliqueVector(0L, 0L), 256);
        HPReal a = abs(det_hp(m, 256));
        HPReal b = abs(det_hp(dd_transform(m, cfg, true), 256));
        worst = std::max(worst, rel_diff(a, b).to_double());
    }
    o.require(worst <= 1e-20, "determinant preserved");
    o.note << "10 configs, max rel diff " << worst;
}

void c9(Outcome& o) {
    long checked = 0, mismatched = 0;
    for (long N = 1; N <= 3; ++N) {
        std::vector<Monomer> R, L;
        for (long a = 0; a < N; ++a)
            for (long b = 0; b < N; ++b) {
                R.push_back({right, a, b});
                L.push_back({left, a, b});
            }
        auto check = [&](const HolePunch& h) {
            ++checked;
            if (count_matchings_bt({N}, h) != count_matchings_kasteleyn({N}, h)) ++mismatched;
        };
        check({});
        for (const auto& r : R)
            for (const auto& l : L) check({{r, l}});
        for (std::size_t i = 0; i < R.size(); ++i)
            for (std::size_t j = i + 1; j < R.size(); ++j)
                for (std::size_t k = 0; k < L.size(); ++k)
                    for (std::size_t m = k + 1; m < L.size(); ++m) check({{R[i], R[j], L[k], L[m]}});
    }
    o.require(mismatched == 0, "backtracking = Kasteleyn");
    bool third = true;
    for (long N = 2; N <= 8; ++N) third = third && torus_correlation(N, {{{right, 0, 0}, {left, 0, 0}}}) == Rational(1, 3);
    o.require(third, "lozenge ratio 1/3");
    MultiholeConfig cfg{{Multihole{right, 1, {0}, 1, 1}, Multihole{left, 1, {0}, 3, 1}}, 0};
    const double w = correlation(cfg, 256).to_double();
    const double r24 = torus_correlation(24, HolePunch::from_config(cfg)).get_d();
    o.require(std::abs(r24 / w - 1) <= 0.1, "N=24 torus vs determinant within 10%");
    o.note << checked << " punches, " << mismatched << " mismatches; N=24 ratio " << r24 << " vs " << w;
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
        {"coupling anchors and quadrature", c1},
        {"identity suites", c2},
        {"asymptotic series residual slopes", c3},
        {"correlation anchors", c4},
        {"product formula", c5},
        {"relative change convergence", c6},
        {"average step direction", c7},
        {"divided-difference determinant preservation", c8},
        {"torus oracle", c9},
    };
    int failures = 0;
    int idx = 0;
    for (const auto& [name, run] : criteria) {
        ++idx;
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            run(o);
        } catch (const std::exception& e) {
            o.ok = false;
            o.note << "exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %d (%s): %s [%.1fs] %s\n", idx, name, o.ok ? "PASS" : "FAIL", secs, o.note.str().c_str());
        std::fflush(stdout);
        failures += !o.ok;
    }
    return failures ? 1 : 0;
}
