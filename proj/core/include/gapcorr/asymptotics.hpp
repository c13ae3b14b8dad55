#pragma once

#include "gapcorr/correlation.hpp"
#include "gapcorr/cyclo.hpp"
#include "gapcorr/errors.hpp"
#include "gapcorr/geometry.hpp"
#include "gapcorr/linalg.hpp"

#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace gapcorr {

inline void divide_by(HPReal& x, long h) { x /= HPReal(h, x.prec()); }
inline void divide_by(Rational& x, long h) { x /= h; }

// D^r f(c_1) from (c_j, f(c_j)), j = 1..r+1.
template <class T>
T divided_difference(const std::vector<std::pair<long, T>>& values, int r) {
    if (r < 0 || static_cast<std::size_t>(r) >= values.size())
        throw DomainError("divided difference order must be below the number of nodes");
    std::set<long> seen;
    for (const auto& v : values)
        if (!seen.insert(v.first).second) throw DuplicateNodes("node " + std::to_string(v.first) + " repeated");
    const auto n = static_cast<std::size_t>(r) + 1;
    std::vector<T> cur;
    for (std::size_t j = 0; j < n; ++j) cur.push_back(values[j].second);
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t j = 0; j + k < n; ++j) {
            cur[j] = cur[j + 1] - cur[j];
            divide_by(cur[j], values[j + k].first - values[j].first);
        }
    return cur[0];
}

// Rows of each right multihole (odd and even separately) over nodes a, columns of each left
// multihole over nodes -b. With prefactors the determinant is unchanged.
HPMatrix dd_transform(const HPMatrix& m, const MultiholeConfig& cfg, bool with_prefactors);

struct LimitHole {
    Orientation orientation = Orientation::right;
    Rational slope = 1;
    std::size_t size = 1;
    ObliqueVector pos;
    std::array<int, 2> residues{0, 0};

    long charge() const { return orientation == Orientation::right ? 2 * static_cast<long>(size) : -2 * static_cast<long>(size); }
};

struct LimitConfig {
    std::vector<LimitHole> holes;
    std::size_t moving_index = 0;
    long R = 1;

    long S() const;
    long T() const;
    void validate(bool require_admissible = true) const;
};

// 3 | 1 - q read 3-adically: 3 divides the numerator of 1 - q in lowest terms.
bool slope_admissible(const Rational& q);

LimitConfig limit_config(const ScaledConfig& sc, long R);

// Random valid configuration: up to three multiholes of size <= max_size, admissible slopes,
// half-integer positions, random residues, nonnegative charge.
LimitConfig sample_limit_config(std::mt19937_64& rng, std::size_t max_size = 3);

// Entries as exact multiples r of sqrt(3)/(2 pi).
QMatrix dominant_matrix_exact(const LimitConfig& lc);
HPCMatrix dominant_matrix(const LimitConfig& lc, mpfr_prec_t prec = kDefaultPrec);

// Rational factor c with product = (3/(4 pi^2))^S * c.
Rational product_formula_exact(const LimitConfig& lc);
HPReal product_formula(const LimitConfig& lc, mpfr_prec_t prec = kDefaultPrec);

ObliqueVector t_field(const LimitConfig& lc);

HPReal predict_relative_change(const LimitConfig& lc, long alpha, long beta, mpfr_prec_t prec = kDefaultPrec);

// Displacements with alpha^2 + alpha beta + beta^2 <= rho^2, origin excluded.
std::vector<ObliqueVector> step_disc(long rho);

CartesianVector average_step_exact(const MultiholeConfig& cfg, long rho, mpfr_prec_t prec = kDefaultPrec);

// (1/6) sum T_{e_i} e_i
CartesianVector average_step_unit_form(const MultiholeConfig& cfg, mpfr_prec_t prec = kDefaultPrec);

struct SweepRow {
    long R;
    HPReal t_exact;
    HPReal t_pred;
    HPReal r_t;
    HPReal abs_err;
};

struct SweepTable {
    std::vector<SweepRow> rows;
    std::optional<double> slope;
};

SweepTable convergence_sweep(const ScaledConfig& sc, long alpha, long beta, const std::vector<long>& R_list,
                             mpfr_prec_t prec = kDefaultPrec);

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Iterated divided differences of P along offset nodes against their closed-form leading term.
double dd_asymptotics_check(int k, int l, const Rational& q, const Rational& qq, long u, long v,
                            const std::vector<long>& n_list, mpfr_prec_t prec = kDefaultPrec);

// Same for D^k U_l. Returns nullopt when every residual vanishes at working precision.
std::optional<double> dd_u_asymptotics_check(int k, int l, const Rational& q, long x1, long y1,
                                             const std::vector<long>& n_list, mpfr_prec_t prec = kDefaultPrec);

} // namespace gapcorr
