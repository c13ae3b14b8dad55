#include "gapcorr/asymptotics.hpp"

#include "gapcorr/coupling.hpp"
#include "gapcorr/ucoeff.hpp"

#include <cmath>
#include <functional>
#include <future>
#include <limits>

namespace gapcorr {

namespace {

Rational qpow(const Rational& base, long e) {
    Rational r = 1;
    Rational b = e < 0 ? Rational(1) / base : base;
    for (long i = 0; i < std::labs(e); ++i) r *= b;
    return r;
}

Rational binom_q(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(b);
}

// Z^e with Z = zeta (which = +1) or zeta^-1 (which = -1).
CycloRational zpow(int which, long e) { return CycloRational::zeta_pow(which * e); }

using ZetaFn = std::function<CycloRational(int)>;

// <f> = f(zeta) - f(zeta^-1) = r (1 + 2 zeta); returns r.
Rational bracket_coeff(const ZetaFn& f) {
    CycloRational d = f(+1) - f(-1);
    if (2 * d.u != d.v) throw InconsistencyError("bracket is not purely imaginary");
    return d.u;
}

HPComplex bracket_complex(const ZetaFn& f, mpfr_prec_t prec) {
    HPComplex d = f(+1).to_complex(prec) - f(-1).to_complex(prec);
    // divide by 2 pi i
    HPReal twopi = HPReal(2L, prec) * HPReal::pi(prec);
    return {d.im / twopi, -d.re / twopi};
}

void apply_row_dd(HPMatrix& M, const std::vector<std::size_t>& rows, const std::vector<long>& nodes,
                  bool with_prefactors) {
    const std::size_t s = rows.size(), cols = M.cols();
    const mpfr_prec_t prec = cols ? M(rows[0], 0).prec() : kDefaultPrec;
    std::vector<std::vector<HPReal>> cur(s);
    for (std::size_t k = 0; k < s; ++k)
        for (std::size_t c = 0; c < cols; ++c) cur[k].push_back(M(rows[k], c));
    std::vector<std::vector<HPReal>> out{cur[0]};
    for (std::size_t r = 1; r < s; ++r) {
        for (std::size_t j = 0; j + r < s; ++j) {
            HPReal h(nodes[j + r] - nodes[j], prec);
            for (std::size_t c = 0; c < cols; ++c) cur[j][c] = (cur[j + 1][c] - cur[j][c]) / h;
        }
        out.push_back(cur[0]);
    }
    for (std::size_t k = 0; k < s; ++k) {
        HPReal pf(1L, prec);
        if (with_prefactors)
            for (std::size_t j = 0; j < k; ++j) pf *= HPReal(nodes[k] - nodes[j], prec);
        for (std::size_t c = 0; c < cols; ++c) M(rows[k], c) = out[k][c] * pf;
    }
}

HPMatrix transpose(const HPMatrix& m) {
    HPMatrix t(m.cols(), m.rows(), HPReal(kDefaultPrec));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    return t;
}

} // namespace

HPMatrix dd_transform(const HPMatrix& m, const MultiholeConfig& cfg, bool with_prefactors) {
    HPMatrix M = m;
    std::size_t r0 = 0;
    for (const auto& h : cfg.holes) {
        if (h.orientation != Orientation::right) continue;
        for (std::size_t par = 0; par < 2; ++par) {
            std::vector<std::size_t> rows;
            for (std::size_t k = 0; k < h.size(); ++k) rows.push_back(r0 + 2 * k + par);
            apply_row_dd(M, rows, h.offsets, with_prefactors);
        }
        r0 += 2 * h.size();
    }
    HPMatrix Mt = transpose(M);
    std::size_t c0 = 0;
    for (const auto& h : cfg.holes) {
        if (h.orientation != Orientation::left) continue;
        std::vector<long> nodes;
        for (long b : h.offsets) nodes.push_back(-b);
        for (std::size_t par = 0; par < 2; ++par) {
            std::vector<std::size_t> cols;
            for (std::size_t l = 0; l < h.size(); ++l) cols.push_back(c0 + 2 * l + par);
            apply_row_dd(Mt, cols, nodes, with_prefactors);
        }
        c0 += 2 * h.size();
    }
    return transpose(Mt);
}

long LimitConfig::S() const {
    long s = 0;
    for (const auto& h : holes)
        if (h.orientation == Orientation::right) s += static_cast<long>(h.size);
    return s;
}

long LimitConfig::T() const {
    long t = 0;
    for (const auto& h : holes)
        if (h.orientation == Orientation::left) t += static_cast<long>(h.size);
    return t;
}

bool slope_admissible(const Rational& q) {
    Rational d = 1 - q;
    return mpz_divisible_ui_p(d.get_num_mpz_t(), 3) != 0;
}

void LimitConfig::validate(bool require_admissible) const {
    if (R < 1) throw DomainError("R must be positive");
    if (!holes.empty() && moving_index >= holes.size()) throw DomainError("moving index out of range");
    if (S() < T()) throw ChargeNegative("total charge < 0");
    for (std::size_t i = 0; i < holes.size(); ++i) {
        if (holes[i].size == 0) throw DomainError("multihole without offsets");
        if (require_admissible && !slope_admissible(holes[i].slope))
            throw DomainError("slope " + holes[i].slope.get_str() + " violates 3 | 1 - q");
        for (std::size_t j = i + 1; j < holes.size(); ++j)
            if (holes[i].pos == holes[j].pos)
                throw CoincidentScaledPositions("holes " + std::to_string(i) + " and " + std::to_string(j) +
                                                " share position " + holes[i].pos.str());
    }
}

LimitConfig limit_config(const ScaledConfig& sc, long R) {
    LimitConfig lc;
    lc.R = R;
    lc.moving_index = sc.moving_index;
    for (std::size_t i = 0; i < sc.holes.size(); ++i) {
        const ScaledHole& h = sc.holes[i];
        auto [x, y] = sc.anchor(i, R);
        lc.holes.push_back(LimitHole{h.orientation, h.slope, h.offsets.size(), h.pos,
                                     {static_cast<int>(((x % 3) + 3) % 3), static_cast<int>(((y % 3) + 3) % 3)}});
    }
    return lc;
}

LimitConfig sample_limit_config(std::mt19937_64& rng, std::size_t max_size) {
    static const std::vector<Rational> slopes{Rational(1), Rational(-2), Rational(4), Rational(-1, 2),
                                              Rational(2, 5), Rational(-5, 4), Rational(1, 4), Rational(7)};
    std::uniform_int_distribution<int> nholes(1, 3), coord(-4, 4), res(0, 2), side(0, 1);
    std::uniform_int_distribution<std::size_t> size(1, std::max<std::size_t>(max_size, 1)), pick(0, slopes.size() - 1);
    std::uniform_int_distribution<long> scale(1, 50);
    for (;;) {
        LimitConfig lc;
        lc.R = scale(rng);
        for (int i = nholes(rng); i > 0; --i) {
            LimitHole h;
            h.orientation = side(rng) ? Orientation::left : Orientation::right;
            h.slope = slopes[pick(rng)];
            h.size = size(rng);
            h.pos = ObliqueVector(Rational(coord(rng)) / 2, Rational(coord(rng)) / 2);
            h.residues = {res(rng), res(rng)};
            lc.holes.push_back(h);
        }
        try {
            lc.validate();
        } catch (const InputError&) {
            continue;
        }
        return lc;
    }
}

namespace {

// Fills the dominant matrix through a per-entry callback taking the bracketed function.
void dominant_entries(const LimitConfig& lc, const std::function<void(std::size_t, std::size_t, const ZetaFn&)>& put) {
    lc.validate();
    const long nu = lc.S() - lc.T();
    const Rational R(lc.R);
    const long ex[2][2] = {{-1, -3}, {1, -1}};
    std::size_t r0 = 0;
    for (const auto& rh : lc.holes) {
        if (rh.orientation != Orientation::right) continue;
        const Rational& q = rh.slope;
        const long ab = rh.residues[0] - rh.residues[1];
        std::size_t c0 = 0;
        for (const auto& lh : lc.holes) {
            if (lh.orientation != Orientation::left) continue;
            const Rational& qq = lh.slope;
            const long e0 = ab - lh.residues[0] + lh.residues[1];
            const Rational dz = lh.pos.x - rh.pos.x, dw = lh.pos.y - rh.pos.y;
            for (long k = 1; k <= static_cast<long>(rh.size); ++k)
                for (long l = 1; l <= static_cast<long>(lh.size); ++l)
                    for (int di = 0; di < 2; ++di)
                        for (int dj = 0; dj < 2; ++dj) {
                            const long e = ex[di][dj] + e0;
                            ZetaFn f = [=](int w) {
                                CycloRational Z = zpow(w, 1);
                                CycloRational num = zpow(w, e) * CycloRational(binom_q(k + l - 2, l - 1)) *
                                                    (CycloRational(1) - CycloRational(q) * Z).pow(k - 1) *
                                                    (CycloRational(1) - CycloRational(qq) * Z).pow(l - 1);
                                CycloRational den = (CycloRational(dz) - Z * CycloRational(dw)) * CycloRational(R);
                                return num / den.pow(k + l - 1);
                            };
                            put(r0 + 2 * static_cast<std::size_t>(k - 1) + di,
                                c0 + 2 * static_cast<std::size_t>(l - 1) + dj, f);
                        }
            c0 += 2 * lh.size;
        }
        const Rational x = rh.pos.x, y = rh.pos.y;
        for (long k = 1; k <= static_cast<long>(rh.size); ++k)
            for (long l = 1; l <= nu; ++l) {
                if (k > l) continue;
                for (int di = 0; di < 2; ++di)
                    for (int dj = 0; dj < 2; ++dj) {
                        const long e = ex[di][dj] + ab;
                        ZetaFn f = [=](int w) {
                            CycloRational Z = zpow(w, 1);
                            CycloRational num = zpow(w, e) * CycloRational(binom_q(l - 1, k - 1)) *
                                                (CycloRational(1) - CycloRational(q) * Z).pow(k - 1);
                            CycloRational den = (CycloRational(x) - Z * CycloRational(y)) * CycloRational(R);
                            return num * den.pow(l - k);
                        };
                        put(r0 + 2 * static_cast<std::size_t>(k - 1) + di,
                            c0 + 2 * static_cast<std::size_t>(l - 1) + dj, f);
                    }
            }
        r0 += 2 * rh.size;
    }
}

} // namespace

QMatrix dominant_matrix_exact(const LimitConfig& lc) {
    const std::size_t n = 2 * static_cast<std::size_t>(lc.S());
    QMatrix M(n, n, Rational(0));
    dominant_entries(lc, [&](std::size_t i, std::size_t j, const ZetaFn& f) { M(i, j) = bracket_coeff(f); });
    return M;
}

HPCMatrix dominant_matrix(const LimitConfig& lc, mpfr_prec_t prec) {
    const std::size_t n = 2 * static_cast<std::size_t>(lc.S());
    HPCMatrix M(n, n, HPComplex(prec));
    dominant_entries(lc, [&](std::size_t i, std::size_t j, const ZetaFn& f) { M(i, j) = bracket_complex(f, prec); });
    return M;
}

Rational product_formula_exact(const LimitConfig& lc) {
    lc.validate(false);
    Rational c = 1;
    long N = 0;
    for (std::size_t i = 0; i < lc.holes.size(); ++i) {
        const LimitHole& hi = lc.holes[i];
        const long si = static_cast<long>(hi.size);
        const Rational& q = hi.slope;
        c *= qpow(1 + q + q * q, si * (si - 1) / 2);
        for (std::size_t j = i + 1; j < lc.holes.size(); ++j) {
            const LimitHole& hj = lc.holes[j];
            const long e = si * static_cast<long>(hj.size);
            const Rational d2 = euclid_norm2(hi.pos - hj.pos);
            if (hi.orientation == hj.orientation) {
                c *= qpow(d2, e);
                N += 2 * e;
            } else {
                c *= qpow(d2, -e);
                N -= 2 * e;
            }
        }
    }
    return c * qpow(Rational(lc.R), N);
}

HPReal product_formula(const LimitConfig& lc, mpfr_prec_t prec) {
    HPReal pi = HPReal::pi(prec);
    HPReal base = HPReal(3L, prec) / (HPReal(4L, prec) * pi * pi);
    return pow(base, lc.S()) * HPReal(product_formula_exact(lc), prec);
}

ObliqueVector t_field(const LimitConfig& lc) {
    lc.validate(false);
    ObliqueVector T(0L, 0L);
    if (lc.holes.empty()) return T;
    const ObliqueVector& p1 = lc.holes[lc.moving_index].pos;
    for (std::size_t j = 0; j < lc.holes.size(); ++j) {
        if (j == lc.moving_index) continue;
        T += Rational(lc.holes[j].charge()) / 2 * e_field(lc.holes[j].pos, p1);
    }
    return T;
}

HPReal predict_relative_change(const LimitConfig& lc, long alpha, long beta, mpfr_prec_t prec) {
    if (alpha == 0 && beta == 0) return HPReal(prec);
    const ObliqueVector T = t_field(lc);
    const ObliqueVector d(alpha, beta);
    const long q1 = lc.holes.at(lc.moving_index).charge();
    Rational v = euclid_dot(T, d) * q1 / lc.R;
    HPReal dot_form(v, prec);
    HPReal proj_form = HPReal(q1, prec) * euclid_norm(d, prec) * proj(d, T, prec) / HPReal(lc.R, prec);
    HPReal scale = HPReal(std::labs(q1), prec) * euclid_norm(d, prec) * euclid_norm(T, prec) / HPReal(lc.R, prec);
    if (abs(dot_form - proj_form) > HPReal(1e-15, prec) * scale)
        throw InconsistencyError("dot and projection forms of the prediction disagree");
    return dot_form;
}

std::vector<ObliqueVector> step_disc(long rho) {
    if (rho < 1) throw DomainError("rho must be >= 1");
    std::vector<ObliqueVector> out;
    for (long a = -2 * rho; a <= 2 * rho; ++a)
        for (long b = -2 * rho; b <= 2 * rho; ++b)
            if ((a || b) && a * a + a * b + b * b <= rho * rho) out.emplace_back(a, b);
    return out;
}

CartesianVector average_step_exact(const MultiholeConfig& cfg, long rho, mpfr_prec_t prec) {
    const auto disc = step_disc(rho);
    for (const auto& d : disc) cfg.displaced(d.x.get_num().get_si(), d.y.get_num().get_si()).validate();
    const HPReal base = correlation(cfg, prec);
    CartesianVector v(prec);
    for (const auto& d : disc) {
        HPReal ratio = correlation(cfg.displaced(d.x.get_num().get_si(), d.y.get_num().get_si()), prec) / base;
        v += ratio * oblique_to_cartesian(d, prec);
    }
    HPReal n(static_cast<long>(disc.size()), prec);
    return {v.cx / n, v.cy / n};
}

CartesianVector average_step_unit_form(const MultiholeConfig& cfg, mpfr_prec_t prec) {
    CartesianVector v(prec);
    for (const auto& [o, c] : unit_steps(prec))
        v += relative_change(cfg, o.x.get_num().get_si(), o.y.get_num().get_si(), prec) * c;
    HPReal six(6L, prec);
    return {v.cx / six, v.cy / six};
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) return std::numeric_limits<double>::quiet_NaN();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

SweepTable convergence_sweep(const ScaledConfig& sc, long alpha, long beta, const std::vector<long>& R_list,
                             mpfr_prec_t prec) {
    auto row_at = [&](long R) {
        MultiholeConfig cfg = sc.at(R);
        LimitConfig lc = limit_config(sc, R);
        HPReal te = relative_change(cfg, alpha, beta, prec);
        HPReal tp = predict_relative_change(lc, alpha, beta, prec);
        HPReal hr(R, prec);
        HPReal err = abs(hr * te - hr * tp);
        return std::make_pair(SweepRow{R, te, tp, hr * te, err}, t_field(lc).is_zero());
    };
    std::vector<std::future<std::pair<SweepRow, bool>>> jobs;
    for (long R : R_list) jobs.push_back(std::async(std::launch::async, row_at, R));

    SweepTable table;
    bool field_zero = false;
    std::vector<double> xs, ys;
    for (auto& j : jobs) {
        auto [row, zero] = j.get();
        field_zero = field_zero || zero;
        xs.push_back(static_cast<double>(row.R));
        ys.push_back(row.abs_err.to_double());
        table.rows.push_back(std::move(row));
    }
    bool positive = !ys.empty();
    for (double y : ys) positive = positive && y > 0;
    if (!field_zero && positive && ys.size() >= 2) table.slope = loglog_slope(xs, ys);
    return table;
}

namespace {

HPReal lead_value(const Rational& c, mpfr_prec_t prec) {
    return HPReal(c, prec) * HPReal::sqrt3(prec) / (HPReal(2L, prec) * HPReal::pi(prec));
}

std::vector<long> nodes_for(const Rational& q, int count) {
    std::vector<long> nodes;
    const long den = q.get_den().get_si();
    for (int j = 0; j < count; ++j) nodes.push_back(j * den);
    return nodes;
}

} // namespace

double dd_asymptotics_check(int k, int l, const Rational& q, const Rational& qq, long u, long v,
                            const std::vector<long>& n_list, mpfr_prec_t prec) {
    if (k < 0 || l < 0) throw DomainError("orders must be non-negative");
    if (!slope_admissible(q) || !slope_admissible(qq)) throw DomainError("slopes must satisfy 3 | 1 - q");
    if (u == 0 && v == 0) throw DomainError("direction (u,v) must be nonzero");
    const auto A = nodes_for(q, k + 1), B = nodes_for(qq, l + 1);
    std::vector<double> xs, ys;
    const HPReal floor_v = pow(HPReal(2L, prec), -static_cast<long>(prec) / 2);
    for (long n : n_list) {
        const long rn = n * u, sn = n * v;
        std::vector<std::pair<long, HPReal>> outer;
        for (long b : B) {
            std::vector<std::pair<long, HPReal>> inner;
            for (long a : A) {
                Rational qa = q * a, qb = qq * b;
                inner.emplace_back(a, p_eval(rn + a + b, sn + qa.get_num().get_si() + qb.get_num().get_si(), prec));
            }
            outer.emplace_back(b, divided_difference(inner, k));
        }
        HPReal val = divided_difference(outer, l);
        ZetaFn g = [&](int w) {
            CycloRational Z = zpow(w, 1);
            CycloRational num = zpow(w, rn - sn - 1) * (CycloRational(1) - CycloRational(q) * Z).pow(k) *
                                (CycloRational(1) - CycloRational(qq) * Z).pow(l);
            CycloRational den = CycloRational(Rational(-rn)) + Z * CycloRational(Rational(sn));
            return num / den.pow(k + l + 1);
        };
        Rational c = binom_q(k + l, k) * bracket_coeff(g);
        HPReal resid = abs(val - lead_value(c, prec));
        if (resid > floor_v) {
            xs.push_back(static_cast<double>(n));
            ys.push_back(resid.to_double());
        }
    }
    return loglog_slope(xs, ys);
}

std::optional<double> dd_u_asymptotics_check(int k, int l, const Rational& q, long x1, long y1,
                                             const std::vector<long>& n_list, mpfr_prec_t prec) {
    if (k < 0 || l < 0 || l > kMaxUIndex) throw DomainError("orders out of range");
    if (!slope_admissible(q)) throw DomainError("slope must satisfy 3 | 1 - q");
    if (x1 == 0 && y1 == 0) throw DomainError("position must be nonzero");
    const auto A = nodes_for(q, k + 1);
    std::vector<double> xs, ys;
    for (long n : n_list) {
        const long X = n * x1, Y = n * y1;
        std::vector<std::pair<long, HPReal>> vals;
        for (long a : A) {
            Rational qa = q * a;
            vals.emplace_back(a, u_coeff(l, X + a, Y + qa.get_num().get_si()).value(prec));
        }
        HPReal val = divided_difference(vals, k);
        ZetaFn g = [&](int w) {
            CycloRational Z = zpow(w, 1);
            CycloRational num = zpow(w, X - Y - 1) * (CycloRational(1) - CycloRational(q) * Z).pow(k);
            CycloRational base = CycloRational(Rational(x1)) - Z * CycloRational(Rational(y1));
            return num * base.pow(l - k);
        };
        Rational c = binom_q(l, k) * bracket_coeff(g) * qpow(Rational(n), l - k);
        HPReal resid = abs(val - lead_value(c, prec));
        HPReal scale = max(HPReal(1L, prec), abs(val));
        if (resid > pow(HPReal(2L, prec), -static_cast<long>(prec) / 2) * scale) {
            xs.push_back(static_cast<double>(n));
            ys.push_back(resid.to_double());
        }
    }
    if (xs.size() < 2) return std::nullopt;
    return loglog_slope(xs, ys);
}

} // namespace gapcorr
