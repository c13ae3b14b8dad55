#pragma once

#include "gapcorr/asymptotics.hpp"
#include "gapcorr/correlation.hpp"
#include "gapcorr/coupling.hpp"
#include "gapcorr/ucoeff.hpp"

#include <random>

namespace gapcorr::fixtures {

inline LimitConfig random_limit_config(std::mt19937_64& rng) { return sample_limit_config(rng); }

// Random finite configuration of disjoint multiholes with nonnegative charge.
inline MultiholeConfig random_multihole_config(std::mt19937_64& rng, int max_size = 2) {
    std::uniform_int_distribution<int> nholes(1, 3), size(1, max_size), coord(-12, 12), side(0, 1), gap(1, 3);
    const std::vector<Rational> slopes{Rational(1), Rational(-2), Rational(1, 2), Rational(0), Rational(-1, 3)};
    std::uniform_int_distribution<std::size_t> pick(0, slopes.size() - 1);
    for (;;) {
        MultiholeConfig cfg;
        const int n = nholes(rng);
        for (int i = 0; i < n; ++i) {
            Multihole h;
            h.offsets.clear();
            h.orientation = side(rng) ? Orientation::left : Orientation::right;
            h.slope = slopes[pick(rng)];
            const long den = h.slope.get_den().get_si();
            long a = 0;
            for (int k = size(rng); k > 0; --k) {
                h.offsets.push_back(a);
                a += den * gap(rng) * 2;
            }
            h.x = coord(rng);
            h.y = coord(rng);
            cfg.holes.push_back(h);
        }
        cfg.moving_index = std::uniform_int_distribution<std::size_t>(0, cfg.holes.size() - 1)(rng);
        try {
            cfg.validate();
        } catch (const Error&) {
            continue;
        }
        return cfg;
    }
}

// Matrix assembled blockwise from triangle anchors: P at offsets from each (right, left) anchor pair,
// U_t at offsets from each right anchor.
inline HPMatrix triangle_block_matrix(const MultiholeConfig& cfg, mpfr_prec_t prec) {
    std::vector<std::pair<long, long>> rt, lt;
    for (const auto& h : cfg.holes)
        for (const auto& c : h.centers()) (h.orientation == Orientation::right ? rt : lt).push_back(c);
    const std::size_t n = 2 * rt.size();
    const std::size_t nu = rt.size() - lt.size();
    HPMatrix m(n, n, HPReal(prec));
    const long aoff[2][2][2] = {{{-1, -1}, {-2, 0}}, {{0, -2}, {-1, -1}}};
    const long boff[2][2][2] = {{{0, 0}, {-1, 1}}, {{1, -1}, {0, 0}}};
    for (std::size_t i = 0; i < rt.size(); ++i)
        for (int k = 0; k < 2; ++k) {
            for (std::size_t j = 0; j < lt.size(); ++j)
                for (int l = 0; l < 2; ++l)
                    m(2 * i + k, 2 * j + l) = p_eval(rt[i].first - lt[j].first + aoff[k][l][0],
                                                     rt[i].second - lt[j].second + aoff[k][l][1], prec);
            for (std::size_t t = 0; t < nu; ++t)
                for (int l = 0; l < 2; ++l)
                    m(2 * i + k, 2 * lt.size() + 2 * t + l) =
                        u_coeff(static_cast<int>(t), rt[i].first + boff[k][l][0], rt[i].second + boff[k][l][1])
                            .value(prec);
        }
    return m;
}

} // namespace gapcorr::fixtures
