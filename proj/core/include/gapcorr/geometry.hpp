#pragma once

#include "gapcorr/hp.hpp"

#include <array>
#include <string>
#include <utility>

namespace gapcorr {

// Point or vector in the 60 degree oblique system.
struct ObliqueVector {
    Rational x;
    Rational y;

    ObliqueVector() = default;
    ObliqueVector(Rational xx, Rational yy) : x(std::move(xx)), y(std::move(yy)) {}
    ObliqueVector(long xx, long yy) : x(xx), y(yy) {}

    bool is_zero() const { return x == 0 && y == 0; }

    ObliqueVector& operator+=(const ObliqueVector& o) { x += o.x; y += o.y; return *this; }
    ObliqueVector& operator-=(const ObliqueVector& o) { x -= o.x; y -= o.y; return *this; }
    friend ObliqueVector operator+(ObliqueVector a, const ObliqueVector& b) { return a += b; }
    friend ObliqueVector operator-(ObliqueVector a, const ObliqueVector& b) { return a -= b; }
    friend ObliqueVector operator-(const ObliqueVector& a) { return {-a.x, -a.y}; }
    friend ObliqueVector operator*(const Rational& s, const ObliqueVector& a) { return {s * a.x, s * a.y}; }
    friend bool operator==(const ObliqueVector& a, const ObliqueVector& b) { return a.x == b.x && a.y == b.y; }

    std::string str() const { return "(" + x.get_str() + "," + y.get_str() + ")"; }
};

struct CartesianVector {
    HPReal cx;
    HPReal cy;

    explicit CartesianVector(mpfr_prec_t prec = kDefaultPrec) : cx(prec), cy(prec) {}
    CartesianVector(HPReal a, HPReal b) : cx(std::move(a)), cy(std::move(b)) {}

    CartesianVector& operator+=(const CartesianVector& o) { cx += o.cx; cy += o.cy; return *this; }
    friend CartesianVector operator+(CartesianVector a, const CartesianVector& b) { return a += b; }
    friend CartesianVector operator*(const HPReal& s, const CartesianVector& a) { return {s * a.cx, s * a.cy}; }

    HPReal norm() const { return sqrt(cx * cx + cy * cy); }
    HPReal dot(const CartesianVector& o) const { return cx * o.cx + cy * o.cy; }
};

// Gram form [[1, 1/2], [1/2, 1]].
Rational euclid_dot(const ObliqueVector& u, const ObliqueVector& v);
Rational euclid_norm2(const ObliqueVector& v);
HPReal euclid_norm(const ObliqueVector& v, mpfr_prec_t prec = kDefaultPrec);

HPReal proj(const ObliqueVector& u, const ObliqueVector& v, mpfr_prec_t prec = kDefaultPrec);

// E(a;b) = (b - a) / |b - a|^2
ObliqueVector e_field(const ObliqueVector& a, const ObliqueVector& b);

// (1,0) -> (sqrt3/2, -1/2), (0,1) -> (sqrt3/2, 1/2)
CartesianVector oblique_to_cartesian(const ObliqueVector& v, mpfr_prec_t prec = kDefaultPrec);
CartesianVector oblique_to_cartesian(const HPReal& x, const HPReal& y);
std::pair<HPReal, HPReal> cartesian_to_oblique(const CartesianVector& c);

std::array<std::pair<ObliqueVector, CartesianVector>, 6> unit_steps(mpfr_prec_t prec = kDefaultPrec);

// Angle between two Cartesian vectors, in degrees.
double angle_deg(const CartesianVector& a, const CartesianVector& b);

} // namespace gapcorr
