#include "gapcorr/cyclo.hpp"

#include "gapcorr/errors.hpp"

namespace gapcorr {

CycloRational CycloRational::zeta_pow(long e) {
    switch (((e % 3) + 3) % 3) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    default: return {-1, -1};
    }
}

CycloRational& CycloRational::operator+=(const CycloRational& o) {
    u += o.u;
    v += o.v;
    return *this;
}

CycloRational& CycloRational::operator-=(const CycloRational& o) {
    u -= o.u;
    v -= o.v;
    return *this;
}

CycloRational& CycloRational::operator*=(const CycloRational& o) {
    Rational nu = u * o.u - v * o.v;
    Rational nv = u * o.v + v * o.u - v * o.v;
    u = nu;
    v = nv;
    return *this;
}

CycloRational& CycloRational::operator/=(const CycloRational& o) {
    Rational n = o.norm();
    if (n == 0) throw DomainError("division by zero in Q(zeta)");
    *this *= o.conjugate();
    u /= n;
    v /= n;
    return *this;
}

CycloRational CycloRational::pow(long e) const {
    if (e < 0) return CycloRational(1) / pow(-e);
    CycloRational result(1), base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

HPComplex CycloRational::to_complex(mpfr_prec_t prec) const {
    // zeta = -1/2 + i sqrt(3)/2
    HPReal hv(v, prec);
    HPReal re = HPReal(u, prec) - hv / HPReal(2L, prec);
    HPReal im = hv * HPReal::sqrt3(prec) / HPReal(2L, prec);
    return {re, im};
}

std::string CycloRational::str() const { return u.get_str() + " + (" + v.get_str() + ")z"; }

} // namespace gapcorr
