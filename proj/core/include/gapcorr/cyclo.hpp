#pragma once

#include "gapcorr/hp.hpp"

#include <string>

namespace gapcorr {

// u + v*zeta with zeta = exp(2 pi i / 3), zeta^2 = -1 - zeta.
struct CycloRational {
    Rational u;
    Rational v;

    CycloRational() = default;
    CycloRational(Rational uu, Rational vv = 0) : u(std::move(uu)), v(std::move(vv)) {}

    static CycloRational zeta() { return {0, 1}; }
    static CycloRational zeta_pow(long e);

    CycloRational& operator+=(const CycloRational& o);
    CycloRational& operator-=(const CycloRational& o);
    CycloRational& operator*=(const CycloRational& o);
    CycloRational& operator/=(const CycloRational& o);
    CycloRational operator-() const { return {-u, -v}; }

    friend CycloRational operator+(CycloRational a, const CycloRational& b) { return a += b; }
    friend CycloRational operator-(CycloRational a, const CycloRational& b) { return a -= b; }
    friend CycloRational operator*(CycloRational a, const CycloRational& b) { return a *= b; }
    friend CycloRational operator/(CycloRational a, const CycloRational& b) { return a /= b; }
    friend bool operator==(const CycloRational& a, const CycloRational& b) { return a.u == b.u && a.v == b.v; }

    // Field norm u^2 - uv + v^2 = |u + v zeta|^2.
    Rational norm() const { return u * u - u * v + v * v; }
    CycloRational conjugate() const { return {u - v, -v}; }
    CycloRational pow(long e) const;

    HPComplex to_complex(mpfr_prec_t prec) const;
    std::string str() const;
};

// <f> = f(zeta) - f(zeta^-1) for real-coefficient f is r * i*sqrt(3); returns r.
inline Rational bracket(const CycloRational& f) { return f.v; }

} // namespace gapcorr
