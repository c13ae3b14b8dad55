#include "gapcorr/coupling.hpp"

#include "gapcorr/cyclo.hpp"
#include "gapcorr/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

namespace gapcorr {

namespace {

long magnitude_bits(const Rational& q) {
    if (q == 0) return 0;
    return static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2)) + 1;
}

} // namespace

// Far from the origin rat and trans are huge and nearly cancel, so work with extra bits.
HPReal ExactPValue::value(mpfr_prec_t prec) const {
    const long extra = std::max({0L, magnitude_bits(rat), magnitude_bits(trans)}) + 64;
    const mpfr_prec_t wp = prec + extra;
    HPReal r(rat, wp);
    if (trans != 0) r += HPReal(trans, wp) * HPReal::sqrt3(wp) / HPReal::pi(wp);
    return r.with_prec(prec);
}

std::string ExactPValue::str() const {
    if (trans == 0) return rat.get_str();
    if (rat == 0) return trans.get_str() + "*sqrt3/pi";
    return rat.get_str() + " + " + trans.get_str() + "*sqrt3/pi";
}

ExactPValue p_base(long x, long y) {
    if (x > -1 || y > -1)
        throw DomainError("p_base needs x, y <= -1, got (" + std::to_string(x) + "," + std::to_string(y) + ")");
    return p_arc(x, y);
}

ExactPValue p_arc(long x, long y) {
    if (x > -1) throw DomainError("p_arc needs x <= -1");
    const unsigned long n = static_cast<unsigned long>(-x - 1);
    // (-1-t)^n = (-1)^n sum_k C(n,k) t^k; term t^(k-y-1) integrated from zeta to zeta^2.
    ExactPValue out;
    CycloRational F;
    Integer binom;
    for (unsigned long k = 0; k <= n; ++k) {
        mpz_bin_uiui(binom.get_mpz_t(), n, k);
        if (n & 1) binom = -binom;
        long e = static_cast<long>(k) - y - 1;
        if (e == -1) {
            Rational c(binom, 3);
            c.canonicalize();
            out.rat += c;
        } else {
            CycloRational term = CycloRational::zeta_pow(e + 1);
            Rational c(binom, e + 1);
            c.canonicalize();
            F += CycloRational(term.u * c, term.v * c);
        }
    }
    // (F(zeta^2) - F(zeta)) / (2 pi i) = -Im F(zeta) / pi
    out.trans = -F.v / 2;
    return out;
}

namespace {

struct PairHash {
    std::size_t operator()(const std::pair<long, long>& p) const noexcept {
        return std::hash<long>()(p.first) * 1000003u ^ std::hash<long>()(p.second);
    }
};

struct CouplingCache {
    std::shared_mutex mutex;
    std::unordered_map<std::pair<long, long>, ExactPValue, PairHash> map;
};

CouplingCache& cache() {
    static CouplingCache c;
    return c;
}

ExactPValue derive(long x, long y) {
    const long z = -x - y - 1;
    const std::array<std::pair<long, long>, 6> orbit{{{x, y}, {y, x}, {z, x}, {x, z}, {y, z}, {z, y}}};
    std::optional<ExactPValue> first;
    std::pair<long, long> used{};
    for (const auto& rep : orbit) {
        if (rep.first > -1) continue;
        if (!first) {
            first = p_arc(rep.first, rep.second);
            used = rep;
        } else if (rep != used) {
            ExactPValue second = p_arc(rep.first, rep.second);
            if (!(second == *first))
                throw InconsistencyError("P(" + std::to_string(x) + "," + std::to_string(y) +
                                         ") differs between orbit representatives");
            break;
        }
    }
    if (!first) throw InconsistencyError("no orbit representative with first coordinate <= -1");
    return *first;
}

} // namespace

ExactPValue p_exact(long x, long y) {
    auto& c = cache();
    {
        std::shared_lock lock(c.mutex);
        auto it = c.map.find({x, y});
        if (it != c.map.end()) return it->second;
    }
    ExactPValue v = derive(x, y);
    std::unique_lock lock(c.mutex);
    auto [it, inserted] = c.map.emplace(std::make_pair(x, y), v);
    if (!inserted && !(it->second == v)) throw InconsistencyError("concurrent derivations disagree");
    return it->second;
}

HPReal p_eval(long x, long y, mpfr_prec_t prec) { return p_exact(x, y).value(prec); }

void coupling_prebuild(long L) {
    for (long x = -L; x <= L; ++x)
        for (long y = -L; y <= L; ++y) {
            ExactPValue v = p_exact(x, y);
            if (!(v == p_exact(y, x)) || !(v == p_exact(-x - y - 1, x)))
                throw InconsistencyError("symmetry fails at (" + std::to_string(x) + "," + std::to_string(y) + ")");
            if ((x != 0 || y != 0) && !(v + p_exact(x - 1, y) + p_exact(x, y - 1)).is_zero())
                throw InconsistencyError("recurrence fails at (" + std::to_string(x) + "," + std::to_string(y) + ")");
        }
}

std::size_t coupling_cache_size() {
    std::shared_lock lock(cache().mutex);
    return cache().map.size();
}

void coupling_cache_clear() {
    std::unique_lock lock(cache().mutex);
    cache().map.clear();
}

// ---------------------------------------------------------------------------
// Gauss-Legendre quadrature along the arc

namespace {

struct GLRule {
    std::vector<HPReal> nodes;
    std::vector<HPReal> weights;
};

const GLRule& gl_rule(int n, mpfr_prec_t prec) {
    static std::mutex m;
    static std::map<std::pair<int, mpfr_prec_t>, GLRule> rules;
    std::lock_guard lock(m);
    auto it = rules.find({n, prec});
    if (it != rules.end()) return it->second;

    GLRule rule;
    const HPReal one(1L, prec), two(2L, prec);
    const HPReal eps = pow(two, -static_cast<long>(prec) + 4);
    for (int i = 1; i <= n; ++i) {
        HPReal x(std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5)), prec);
        HPReal dp(prec);
        for (int iter = 0; iter < 200; ++iter) {
            HPReal p0 = one, p1 = x;
            for (int k = 2; k <= n; ++k) {
                HPReal p2 = (HPReal(2L * k - 1, prec) * x * p1 - HPReal(static_cast<long>(k - 1), prec) * p0) /
                            HPReal(static_cast<long>(k), prec);
                p0 = std::move(p1);
                p1 = std::move(p2);
            }
            dp = HPReal(static_cast<long>(n), prec) * (x * p1 - p0) / (x * x - one);
            HPReal dx = p1 / dp;
            x -= dx;
            if (abs(dx) <= eps) break;
        }
        rule.nodes.push_back(x);
        rule.weights.push_back(two / ((one - x * x) * dp * dp));
    }
    return rules.emplace(std::make_pair(n, prec), std::move(rule)).first->second;
}

HPReal arc_gl(long x, long y, const HPReal& a, const HPReal& b, int n, mpfr_prec_t prec) {
    const GLRule& rule = gl_rule(n, prec);
    const HPReal half(0.5, prec);
    HPReal mid = half * (a + b), rad = half * (b - a);
    HPReal sum(prec);
    const long nn = -x - 1;
    for (int i = 0; i < n; ++i) {
        HPReal theta = mid + rad * rule.nodes[i];
        HPComplex t = polar(theta);
        HPComplex f = polar(HPReal(-y, prec) * theta);
        HPComplex base(-HPReal(1L, prec) - t.re, -t.im);
        f *= pow(base, nn);
        sum += rule.weights[i] * f.re;
    }
    return sum * rad;
}

} // namespace

HPReal p_quadrature(long x, long y, mpfr_prec_t prec) {
    if (x > -1) throw DomainError("p_quadrature needs x <= -1");
    const mpfr_prec_t wp = prec + 32;
    const HPReal pi = HPReal::pi(wp);
    const HPReal a = HPReal(2L, wp) * pi / HPReal(3L, wp);
    const HPReal b = HPReal(4L, wp) * pi / HPReal(3L, wp);
    auto integral = [&](int n) {
        return (arc_gl(x, y, a, pi, n, wp) + arc_gl(x, y, pi, b, n, wp)) / (HPReal(2L, wp) * pi);
    };
    const HPReal tol = pow(HPReal(2L, wp), -static_cast<long>(prec) - 8);
    HPReal prev = integral(16);
    for (int n = 32; n <= 2048; n *= 2) {
        HPReal cur = integral(n);
        HPReal scale = max(HPReal(1L, wp), abs(cur));
        if (abs(cur - prev) <= tol * scale) return cur.with_prec(prec);
        prev = std::move(cur);
    }
    throw QuadratureNonConvergence("arc integral for P(" + std::to_string(x) + "," + std::to_string(y) +
                                   ") did not settle within 2048 nodes");
}

// ---------------------------------------------------------------------------
// Integer relation by LLL on a 3 x 4 integer lattice

namespace {

using IVec = std::vector<Integer>;

Rational dot_q(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Integer round_q(const Rational& q) {
    Integer num = 2 * q.get_num() + q.get_den();
    Integer den = 2 * q.get_den();
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return r;
}

void lll(std::vector<IVec>& b) {
    const std::size_t n = b.size(), dim = b[0].size();
    std::vector<std::vector<Rational>> bs(n, std::vector<Rational>(dim));
    std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n));
    std::vector<Rational> B(n);
    auto gram_schmidt = [&] {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t d = 0; d < dim; ++d) bs[i][d] = b[i][d];
            for (std::size_t j = 0; j < i; ++j) {
                Rational s = 0;
                for (std::size_t d = 0; d < dim; ++d) s += Rational(b[i][d]) * bs[j][d];
                mu[i][j] = s / B[j];
                for (std::size_t d = 0; d < dim; ++d) bs[i][d] -= mu[i][j] * bs[j][d];
            }
            B[i] = dot_q(bs[i], bs[i]);
        }
    };
    gram_schmidt();
    std::size_t k = 1;
    int guard = 0;
    while (k < n && ++guard < 100000) {
        for (std::size_t j = k; j-- > 0;) {
            Integer q = round_q(mu[k][j]);
            if (q != 0) {
                for (std::size_t d = 0; d < dim; ++d) b[k][d] -= q * b[j][d];
                gram_schmidt();
            }
        }
        if (B[k] >= (Rational(3, 4) - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            gram_schmidt();
            k = k > 1 ? k - 1 : 1;
        }
    }
}

Integer scaled(const HPReal& v, long bits) {
    HPReal t(v);
    mpfr_mul_2si(t.raw(), t.raw(), bits, MPFR_RNDN);
    Integer z;
    mpfr_get_z(z.get_mpz_t(), t.raw(), MPFR_RNDN);
    return z;
}

} // namespace

std::optional<ExactPValue> fit_ring_form(const HPReal& v, long max_height) {
    const mpfr_prec_t prec = v.prec();
    const long bits = static_cast<long>(prec) - 16;
    const HPReal kappa = HPReal::sqrt3(prec) / HPReal::pi(prec);
    std::vector<IVec> basis = {
        {1, 0, 0, scaled(v, bits)},
        {0, 1, 0, scaled(HPReal(1L, prec), bits)},
        {0, 0, 1, scaled(kappa, bits)},
    };
    lll(basis);
    for (const IVec& c : basis) {
        if (c[0] == 0) continue;
        if (abs(c[0]) > max_height || abs(c[1]) > max_height || abs(c[2]) > max_height) continue;
        HPReal resid = HPReal(c[0], prec) * v + HPReal(c[1], prec) + HPReal(c[2], prec) * kappa;
        HPReal bound = pow(HPReal(2L, prec), -static_cast<long>(prec) / 2);
        if (abs(resid) > bound) continue;
        Rational rat(-c[1], c[0]), trans(-c[2], c[0]);
        rat.canonicalize();
        trans.canonicalize();
        return ExactPValue{rat, trans};
    }
    return std::nullopt;
}

void ring_form_check(long x, long y, mpfr_prec_t prec) {
    HPReal q = p_quadrature(x, y, prec);
    auto fit = fit_ring_form(q);
    ExactPValue ref = p_exact(x, y);
    if (!fit || !(*fit == ref))
        throw InconsistencyError("quadrature value of P(" + std::to_string(x) + "," + std::to_string(y) +
                                 ") does not fit " + ref.str());
}

} // namespace gapcorr
