#include "gapcorr/geometry.hpp"

#include "gapcorr/errors.hpp"

#include <cmath>

namespace gapcorr {

Rational euclid_dot(const ObliqueVector& u, const ObliqueVector& v) {
    return u.x * v.x + Rational(1, 2) * (u.x * v.y + u.y * v.x) + u.y * v.y;
}

Rational euclid_norm2(const ObliqueVector& v) { return v.x * v.x + v.x * v.y + v.y * v.y; }

HPReal euclid_norm(const ObliqueVector& v, mpfr_prec_t prec) { return sqrt(HPReal(euclid_norm2(v), prec)); }

HPReal proj(const ObliqueVector& u, const ObliqueVector& v, mpfr_prec_t prec) {
    if (u.is_zero()) throw ZeroDirection("projection onto the zero vector");
    Rational num = Rational(1, 2) * (u.x * (2 * v.x + v.y) + u.y * (v.x + 2 * v.y));
    return HPReal(num, prec) / euclid_norm(u, prec);
}

ObliqueVector e_field(const ObliqueVector& a, const ObliqueVector& b) {
    ObliqueVector d = b - a;
    if (d.is_zero()) throw CoincidentPoints("E(a;b) with a = b = " + a.str());
    Rational n2 = euclid_norm2(d);
    return {d.x / n2, d.y / n2};
}

CartesianVector oblique_to_cartesian(const HPReal& x, const HPReal& y) {
    mpfr_prec_t prec = std::max(x.prec(), y.prec());
    HPReal h = HPReal::sqrt3(prec) / HPReal(2L, prec);
    HPReal half(0.5, prec);
    return {h * (x + y), half * (y - x)};
}

CartesianVector oblique_to_cartesian(const ObliqueVector& v, mpfr_prec_t prec) {
    return oblique_to_cartesian(HPReal(v.x, prec), HPReal(v.y, prec));
}

std::pair<HPReal, HPReal> cartesian_to_oblique(const CartesianVector& c) {
    mpfr_prec_t prec = std::max(c.cx.prec(), c.cy.prec());
    HPReal s = c.cx / HPReal::sqrt3(prec);  // (x + y) / 2
    return {s - c.cy, s + c.cy};
}

std::array<std::pair<ObliqueVector, CartesianVector>, 6> unit_steps(mpfr_prec_t prec) {
    const long steps[6][2] = {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}};
    std::array<std::pair<ObliqueVector, CartesianVector>, 6> out;
    for (int i = 0; i < 6; ++i) {
        ObliqueVector o(steps[i][0], steps[i][1]);
        out[i] = {o, oblique_to_cartesian(o, prec)};
    }
    return out;
}

double angle_deg(const CartesianVector& a, const CartesianVector& b) {
    HPReal cross = a.cx * b.cy - a.cy * b.cx;
    return std::fabs(atan2(cross, a.dot(b)).to_double()) * 180.0 / M_PI;
}

} // namespace gapcorr
