#include "gapcorr/hp.hpp"

#include "gapcorr/errors.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace gapcorr {

HPReal::HPReal(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
}

HPReal::HPReal(long v, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, v, MPFR_RNDN);
}

HPReal::HPReal(double v, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, v, MPFR_RNDN);
}

HPReal::HPReal(const Rational& q, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

HPReal::HPReal(const Integer& z, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
}

HPReal::HPReal(const std::string& decimal, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    if (mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN) != 0) {
        mpfr_clear(v_);
        throw DomainError("not a decimal number: " + decimal);
    }
}

HPReal::HPReal(const HPReal& o) {
    mpfr_init2(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

HPReal::HPReal(HPReal&& o) noexcept {
    mpfr_init2(v_, o.prec());
    mpfr_swap(v_, o.v_);
}

HPReal& HPReal::operator=(const HPReal& o) {
    if (this != &o) {
        mpfr_set_prec(v_, o.prec());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

HPReal& HPReal::operator=(HPReal&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

HPReal::~HPReal() { mpfr_clear(v_); }

HPReal HPReal::with_prec(mpfr_prec_t prec) const {
    HPReal r(prec);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
}

void HPReal::widen_to(mpfr_prec_t p) {
    if (p > prec()) mpfr_prec_round(v_, p, MPFR_RNDN);
}

std::string HPReal::str(int digits) const {
    if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
    std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
    return std::string(buf.data());
}

HPReal& HPReal::operator+=(const HPReal& o) {
    widen_to(o.prec());
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

HPReal& HPReal::operator-=(const HPReal& o) {
    widen_to(o.prec());
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

HPReal& HPReal::operator*=(const HPReal& o) {
    widen_to(o.prec());
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

HPReal& HPReal::operator/=(const HPReal& o) {
    widen_to(o.prec());
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

HPReal HPReal::operator-() const {
    HPReal r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
}

std::partial_ordering operator<=>(const HPReal& a, const HPReal& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    int c = mpfr_cmp(a.v_, b.v_);
    if (c < 0) return std::partial_ordering::less;
    if (c > 0) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
}

HPReal HPReal::pi(mpfr_prec_t prec) {
    HPReal r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

HPReal HPReal::sqrt3(mpfr_prec_t prec) {
    HPReal r(prec);
    mpfr_sqrt_ui(r.v_, 3, MPFR_RNDN);
    return r;
}

HPReal abs(const HPReal& x) {
    HPReal r(x);
    mpfr_abs(r.raw(), r.raw(), MPFR_RNDN);
    return r;
}

HPReal sqrt(const HPReal& x) {
    HPReal r(x);
    mpfr_sqrt(r.raw(), r.raw(), MPFR_RNDN);
    return r;
}

HPReal log(const HPReal& x) {
    HPReal r(x);
    mpfr_log(r.raw(), r.raw(), MPFR_RNDN);
    return r;
}

HPReal exp(const HPReal& x) {
    HPReal r(x);
    mpfr_exp(r.raw(), r.raw(), MPFR_RNDN);
    return r;
}

HPReal cos(const HPReal& x) {
    HPReal r(x);
    mpfr_cos(r.raw(), r.raw(), MPFR_RNDN);
    return r;
}

HPReal sin(const HPReal& x) {
    HPReal r(x);
    mpfr_sin(r.raw(), r.raw(), MPFR_RNDN);
    return r;
}

HPReal atan2(const HPReal& y, const HPReal& x) {
    HPReal r(std::max(x.prec(), y.prec()));
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}

HPReal pow(const HPReal& x, long n) {
    HPReal r(x);
    mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
    return r;
}

HPReal max(const HPReal& a, const HPReal& b) { return a < b ? b : a; }

HPComplex& HPComplex::operator+=(const HPComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
}

HPComplex& HPComplex::operator-=(const HPComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

HPComplex& HPComplex::operator*=(const HPComplex& o) {
    HPReal r = re * o.re - im * o.im;
    HPReal i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

HPComplex& HPComplex::operator/=(const HPComplex& o) {
    HPReal d = o.norm2();
    HPReal r = (re * o.re + im * o.im) / d;
    HPReal i = (im * o.re - re * o.im) / d;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

HPReal abs(const HPComplex& z) {
    HPReal r(z.prec());
    mpfr_hypot(r.raw(), z.re.raw(), z.im.raw(), MPFR_RNDN);
    return r;
}

HPComplex conj(const HPComplex& z) { return {z.re, -z.im}; }

HPComplex pow(const HPComplex& z, long n) {
    if (n < 0) {
        HPComplex one(HPReal(1L, z.prec()));
        return one / pow(z, -n);
    }
    HPComplex result(HPReal(1L, z.prec()));
    HPComplex base = z;
    while (n > 0) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n) base *= base;
    }
    return result;
}

HPComplex polar(const HPReal& theta) { return {cos(theta), sin(theta)}; }

HPReal rel_diff(const HPReal& a, const HPReal& b) {
    HPReal scale = max(abs(a), abs(b));
    if (scale.is_zero()) return HPReal(std::max(a.prec(), b.prec()));
    return abs(a - b) / scale;
}

Rational parse_rational(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    auto bad = [&] { return DomainError("not an exact rational: '" + text + "'"); };
    if (t.empty()) throw bad();
    auto slash = t.find('/');
    auto valid_int = [](const std::string& s) {
        std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i >= s.size()) return false;
        return std::all_of(s.begin() + static_cast<long>(i), s.end(),
                           [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    };
    std::string num = t.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') throw bad();
    if (num[0] == '+') num.erase(0, 1);
    Integer d(den);
    if (d == 0) throw bad();
    Rational q(Integer(num), d);
    q.canonicalize();
    return q;
}

std::string rational_str(const Rational& q) { return q.get_str(); }

} // namespace gapcorr
