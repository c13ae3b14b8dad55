#pragma once

#include "gapcorr/hp.hpp"

#include <cstddef>
#include <optional>
#include <string>

namespace gapcorr {

// rat + trans * sqrt(3)/pi
struct ExactPValue {
    Rational rat;
    Rational trans;

    ExactPValue& operator+=(const ExactPValue& o) { rat += o.rat; trans += o.trans; return *this; }
    ExactPValue& operator-=(const ExactPValue& o) { rat -= o.rat; trans -= o.trans; return *this; }
    ExactPValue operator-() const { return {-rat, -trans}; }
    friend ExactPValue operator+(ExactPValue a, const ExactPValue& b) { return a += b; }
    friend ExactPValue operator-(ExactPValue a, const ExactPValue& b) { return a -= b; }
    friend ExactPValue operator*(long k, const ExactPValue& a) { return {k * a.rat, k * a.trans}; }
    friend bool operator==(const ExactPValue& a, const ExactPValue& b) { return a.rat == b.rat && a.trans == b.trans; }

    bool is_zero() const { return rat == 0 && trans == 0; }
    HPReal value(mpfr_prec_t prec) const;
    std::string str() const;
};

// Base domain x, y <= -1, where the integrand is a polynomial.
ExactPValue p_base(long x, long y);

// Contour integral along the unit-circle arc through -1, valid for x <= -1 and any y.
ExactPValue p_arc(long x, long y);

// All of Z^2, memoized. Throws InconsistencyError when two orbit representatives disagree.
ExactPValue p_exact(long x, long y);

HPReal p_quadrature(long x, long y, mpfr_prec_t prec);

HPReal p_eval(long x, long y, mpfr_prec_t prec);

// Fills the cache on |x|,|y| <= L and checks the recurrence and both symmetries there.
void coupling_prebuild(long L);

std::size_t coupling_cache_size();
void coupling_cache_clear();

// Integer-relation fit of v against (1, sqrt3/pi); nullopt when no small relation is found.
std::optional<ExactPValue> fit_ring_form(const HPReal& v, long max_height = 1L << 40);

// Quadrature at prec bits, relation fit, comparison with p_exact. Throws InconsistencyError on mismatch.
void ring_form_check(long x, long y, mpfr_prec_t prec = 256);

} // namespace gapcorr
