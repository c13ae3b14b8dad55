#pragma once

#include "gapcorr/cyclo.hpp"
#include "gapcorr/hp.hpp"

namespace gapcorr {

inline constexpr int kMaxUIndex = 16;

// U = coeff * sqrt(3) / (2 pi)
struct UValue {
    Rational coeff;

    HPReal value(mpfr_prec_t prec) const;
    friend bool operator==(const UValue& a, const UValue& b) { return a.coeff == b.coeff; }
};

// Generalized binomial n(n-1)...(n-j+1)/j! for any integer n.
Rational gbinom(long n, long j);

UValue u_coeff(int s, long a, long b);

bool u_identity_check(int s, long a, long b);

// |P(-3r-1+a, -1+b) - sum_{s<=S} (3r)^(-s-1) U_s(a,b)|
HPReal p_series_residual(long r, long a, long b, int S, mpfr_prec_t prec);

} // namespace gapcorr
