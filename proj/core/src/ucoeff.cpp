#include "gapcorr/ucoeff.hpp"

#include "gapcorr/coupling.hpp"
#include "gapcorr/errors.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>
#include <vector>

namespace gapcorr {

HPReal UValue::value(mpfr_prec_t prec) const {
    if (coeff == 0) return HPReal(prec);
    return HPReal(coeff, prec) * HPReal::sqrt3(prec) / (HPReal(2L, prec) * HPReal::pi(prec));
}

Rational gbinom(long n, long j) {
    if (j < 0) return 0;
    Integer num = 1, den = 1;
    for (long i = 0; i < j; ++i) {
        num *= n - i;
        den *= i + 1;
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

namespace {

using Poly = std::vector<Integer>;  // coefficient of x^k at index k

// p(x+1) - p(x)
Poly forward_difference(const Poly& p) {
    Poly shifted(p.size());
    Integer binom;
    for (std::size_t k = 0; k < p.size(); ++k)
        for (std::size_t i = 0; i <= k; ++i) {
            mpz_bin_uiui(binom.get_mpz_t(), k, i);
            shifted[i] += p[k] * binom;
        }
    for (std::size_t k = 0; k < p.size(); ++k) shifted[k] -= p[k];
    while (shifted.size() > 1 && shifted.back() == 0) shifted.pop_back();
    return shifted;
}

Integer evaluate(const Poly& p, long x0) {
    Integer acc = 0;
    for (std::size_t k = p.size(); k-- > 0;) acc = acc * x0 + p[k];
    return acc;
}

struct UCache {
    std::shared_mutex mutex;
    std::map<std::tuple<int, long, long>, UValue> map;
};

UCache& ucache() {
    static UCache c;
    return c;
}

UValue compute_u(int s, long a, long b) {
    const long x0 = a + b - 1;
    Poly p(static_cast<std::size_t>(s) + 1);
    p[static_cast<std::size_t>(s)] = 1;
    CycloRational at_zeta, at_inverse;
    for (int j = 0; j <= s; ++j) {
        Rational c = gbinom(b + j - 1, j) * Rational(evaluate(p, x0));
        if (c != 0) {
            CycloRational zp = CycloRational::zeta_pow(a - b - 1 - j);
            CycloRational zm = CycloRational::zeta_pow(-(a - b - 1 - j));
            at_zeta += CycloRational(zp.u * c, zp.v * c);
            at_inverse += CycloRational(zm.u * c, zm.v * c);
        }
        p = forward_difference(p);
    }
    // The bracket must be a rational multiple of zeta - zeta^-1 = 1 + 2 zeta.
    CycloRational diff = at_zeta - at_inverse;
    if (2 * diff.u != diff.v)
        throw InconsistencyError("U bracket is not purely imaginary at s=" + std::to_string(s));
    // -(i/2pi) * u * i sqrt3 = u sqrt3 / (2 pi)
    return UValue{diff.u};
}

} // namespace

UValue u_coeff(int s, long a, long b) {
    if (s < 0 || s > kMaxUIndex) throw DomainError("u_coeff index out of range: " + std::to_string(s));
    auto& c = ucache();
    const auto key = std::make_tuple(s, a, b);
    {
        std::shared_lock lock(c.mutex);
        auto it = c.map.find(key);
        if (it != c.map.end()) return it->second;
    }
    UValue v = compute_u(s, a, b);
    std::unique_lock lock(c.mutex);
    return c.map.emplace(key, v).first->second;
}

bool u_identity_check(int s, long a, long b) {
    return u_coeff(s, a, b).coeff + u_coeff(s, a - 1, b).coeff + u_coeff(s, a, b - 1).coeff == 0;
}

HPReal p_series_residual(long r, long a, long b, int S, mpfr_prec_t prec) {
    if (r < 1) throw DomainError("p_series_residual needs r >= 1");
    if (S < 0) throw DomainError("p_series_residual needs S >= 0");
    HPReal sum(prec);
    const HPReal three_r(3L * r, prec);
    for (int s = 0; s <= S; ++s) sum += pow(three_r, -s - 1) * u_coeff(s, a, b).value(prec);
    return abs(p_eval(-3 * r - 1 + a, -1 + b, prec) - sum);
}

} // namespace gapcorr
