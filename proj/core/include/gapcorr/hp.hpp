#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <string>
#include <utility>

namespace gapcorr {

using Rational = mpq_class;
using Integer = mpz_class;

inline constexpr mpfr_prec_t kDefaultPrec = 256;

// RAII wrapper over mpfr_t. Binary operations round to the larger operand precision.
class HPReal {
public:
    explicit HPReal(mpfr_prec_t prec = kDefaultPrec);
    HPReal(long v, mpfr_prec_t prec);
    HPReal(double v, mpfr_prec_t prec);
    HPReal(const Rational& q, mpfr_prec_t prec);
    HPReal(const Integer& z, mpfr_prec_t prec);
    HPReal(const std::string& decimal, mpfr_prec_t prec);

    HPReal(const HPReal& o);
    HPReal(HPReal&& o) noexcept;
    HPReal& operator=(const HPReal& o);
    HPReal& operator=(HPReal&& o) noexcept;
    ~HPReal();

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    HPReal with_prec(mpfr_prec_t prec) const;

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    std::string str(int digits = 20) const;
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    HPReal& operator+=(const HPReal& o);
    HPReal& operator-=(const HPReal& o);
    HPReal& operator*=(const HPReal& o);
    HPReal& operator/=(const HPReal& o);
    HPReal operator-() const;

    friend HPReal operator+(HPReal a, const HPReal& b) { return a += b; }
    friend HPReal operator-(HPReal a, const HPReal& b) { return a -= b; }
    friend HPReal operator*(HPReal a, const HPReal& b) { return a *= b; }
    friend HPReal operator/(HPReal a, const HPReal& b) { return a /= b; }

    friend bool operator==(const HPReal& a, const HPReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend std::partial_ordering operator<=>(const HPReal& a, const HPReal& b);

    static HPReal pi(mpfr_prec_t prec);
    static HPReal sqrt3(mpfr_prec_t prec);

private:
    void widen_to(mpfr_prec_t p);
    mpfr_t v_;
};

HPReal abs(const HPReal& x);
HPReal sqrt(const HPReal& x);
HPReal log(const HPReal& x);
HPReal exp(const HPReal& x);
HPReal cos(const HPReal& x);
HPReal sin(const HPReal& x);
HPReal atan2(const HPReal& y, const HPReal& x);
HPReal pow(const HPReal& x, long n);
HPReal max(const HPReal& a, const HPReal& b);

struct HPComplex {
    HPReal re;
    HPReal im;

    explicit HPComplex(mpfr_prec_t prec = kDefaultPrec) : re(prec), im(prec) {}
    HPComplex(HPReal r, HPReal i) : re(std::move(r)), im(std::move(i)) {}
    explicit HPComplex(HPReal r) : re(r), im(r.prec()) {}

    mpfr_prec_t prec() const { return re.prec() > im.prec() ? re.prec() : im.prec(); }

    HPComplex& operator+=(const HPComplex& o);
    HPComplex& operator-=(const HPComplex& o);
    HPComplex& operator*=(const HPComplex& o);
    HPComplex& operator/=(const HPComplex& o);
    HPComplex operator-() const { return {-re, -im}; }

    friend HPComplex operator+(HPComplex a, const HPComplex& b) { return a += b; }
    friend HPComplex operator-(HPComplex a, const HPComplex& b) { return a -= b; }
    friend HPComplex operator*(HPComplex a, const HPComplex& b) { return a *= b; }
    friend HPComplex operator/(HPComplex a, const HPComplex& b) { return a /= b; }

    HPReal norm2() const { return re * re + im * im; }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

HPReal abs(const HPComplex& z);
HPComplex conj(const HPComplex& z);
HPComplex pow(const HPComplex& z, long n);
HPComplex polar(const HPReal& theta);

// Relative difference |a-b|/max(|a|,|b|), 0 when both vanish.
HPReal rel_diff(const HPReal& a, const HPReal& b);

Rational parse_rational(const std::string& text);
std::string rational_str(const Rational& q);

} // namespace gapcorr
