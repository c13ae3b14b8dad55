#include "gapcorr/correlation.hpp"

#include "gapcorr/coupling.hpp"
#include "gapcorr/errors.hpp"
#include "gapcorr/ucoeff.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>

#include <algorithm>
#include <set>

namespace gapcorr {

std::string to_string(Orientation o) { return o == Orientation::right ? "right" : "left"; }

std::array<std::pair<long, long>, 3> corners(const Monomer& m) {
    if (m.orientation == Orientation::right)
        return {{{m.a, m.b + 1}, {m.a + 1, m.b}, {m.a + 1, m.b + 1}}};
    return {{{m.a, m.b + 1}, {m.a + 1, m.b}, {m.a, m.b}}};
}

bool share_vertex(const Monomer& p, const Monomer& q) {
    for (const auto& u : corners(p))
        for (const auto& v : corners(q))
            if (u == v) return true;
    return false;
}

bool adjacent(const Monomer& r, const Monomer& l) {
    if (r.orientation != Orientation::right || l.orientation != Orientation::left) return false;
    return (l.a == r.a && l.b == r.b) || (l.a == r.a + 1 && l.b == r.b) || (l.a == r.a && l.b == r.b + 1);
}

std::array<Monomer, 4> triangle_cells(Orientation o, long X, long Y) {
    using enum Orientation;
    if (o == right) return {{{left, X, Y}, {right, X, Y}, {right, X - 1, Y}, {right, X, Y - 1}}};
    return {{{right, X, Y}, {left, X, Y}, {left, X + 1, Y}, {left, X, Y + 1}}};
}

std::array<Monomer, 2> triangle_monomers(Orientation o, long X, long Y) {
    using enum Orientation;
    if (o == right) return {{{right, X - 1, Y}, {right, X, Y - 1}}};
    return {{{left, X, Y + 1}, {left, X + 1, Y}}};
}

long Multihole::charge() const {
    long s = static_cast<long>(offsets.size());
    return orientation == Orientation::right ? 2 * s : -2 * s;
}

std::vector<std::pair<long, long>> Multihole::centers() const {
    std::vector<std::pair<long, long>> out;
    for (long a : offsets) {
        Rational qa = slope * a;
        if (qa.get_den() != 1) throw DomainError("slope times offset is not an integer");
        out.emplace_back(x + a, y + qa.get_num().get_si());
    }
    return out;
}

long MultiholeConfig::S() const {
    long s = 0;
    for (const auto& h : holes)
        if (h.orientation == Orientation::right) s += static_cast<long>(h.size());
    return s;
}

long MultiholeConfig::T() const {
    long t = 0;
    for (const auto& h : holes)
        if (h.orientation == Orientation::left) t += static_cast<long>(h.size());
    return t;
}

void check_disjoint(const MultiholeConfig& cfg) {
    std::set<Monomer> seen;
    for (std::size_t i = 0; i < cfg.holes.size(); ++i)
        for (const auto& [X, Y] : cfg.holes[i].centers())
            for (const Monomer& c : triangle_cells(cfg.holes[i].orientation, X, Y))
                if (!seen.insert(c).second)
                    throw OverlapError("unit triangle " + to_string(c.orientation) + "(" + std::to_string(c.a) +
                                       "," + std::to_string(c.b) + ") covered twice");
}

void MultiholeConfig::validate() const {
    if (!holes.empty() && moving_index >= holes.size()) throw DomainError("moving index out of range");
    for (const auto& h : holes) {
        if (h.offsets.empty()) throw DomainError("multihole without offsets");
        for (std::size_t i = 1; i < h.offsets.size(); ++i)
            if (h.offsets[i] <= h.offsets[i - 1]) throw DomainError("offsets must be strictly increasing");
        for (long a : h.offsets)
            if (Rational(h.slope * a).get_den() != 1) throw DomainError("slope times offset is not an integer");
    }
    if (S() < T()) throw ChargeNegative("total charge " + std::to_string(charge()) + " < 0");
    if (nu() > kMaxUIndex) throw DomainError("nu = " + std::to_string(nu()) + " exceeds the U index cap");
    check_disjoint(*this);
}

MultiholeConfig MultiholeConfig::displaced(long alpha, long beta) const {
    MultiholeConfig c = *this;
    if (!c.holes.empty()) {
        c.holes[moving_index].x += alpha;
        c.holes[moving_index].y += beta;
    }
    return c;
}

StackedMonomers stacked_monomers(const MultiholeConfig& cfg) {
    StackedMonomers out;
    for (const auto& h : cfg.holes) {
        auto& dst = h.orientation == Orientation::right ? out.rights : out.lefts;
        for (const auto& [X, Y] : h.centers())
            for (const Monomer& m : triangle_monomers(h.orientation, X, Y)) dst.push_back(m);
    }
    return out;
}

HPMatrix monomer_matrix(const std::vector<Monomer>& rights, const std::vector<Monomer>& lefts, mpfr_prec_t prec) {
    const std::size_t m = rights.size(), n = lefts.size();
    const std::size_t nu = (m - n) / 2;
    HPMatrix M(m, m, HPReal(prec));
    for (std::size_t i = 0; i < m; ++i) {
        const long a = rights[i].a, b = rights[i].b;
        for (std::size_t j = 0; j < n; ++j) M(i, j) = p_eval(a - lefts[j].a, b - lefts[j].b, prec);
        for (std::size_t t = 0; t < nu; ++t) {
            M(i, n + 2 * t) = u_coeff(static_cast<int>(t), a + 1, b).value(prec);
            M(i, n + 2 * t + 1) = u_coeff(static_cast<int>(t), a, b + 1).value(prec);
        }
    }
    return M;
}

bool monomers_pairable(const std::vector<Monomer>& rights, const std::vector<Monomer>& lefts) {
    std::vector<Monomer> all = rights;
    all.insert(all.end(), lefts.begin(), lefts.end());
    const std::size_t n = all.size();
    if (n % 2) return false;
    using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (share_vertex(all[i], all[j])) boost::add_edge(i, j, g);
    std::vector<boost::graph_traits<Graph>::vertex_descriptor> mate(n);
    boost::edmonds_maximum_cardinality_matching(g, &mate[0]);
    return 2 * boost::matching_size(g, &mate[0]) == n;
}

HPReal monomer_correlation(const std::vector<Monomer>& rights, const std::vector<Monomer>& lefts, mpfr_prec_t prec) {
    for (const auto& r : rights)
        if (r.orientation != Orientation::right) throw DomainError("left monomer in the right list");
    for (const auto& l : lefts)
        if (l.orientation != Orientation::left) throw DomainError("right monomer in the left list");
    if (rights.size() < lefts.size()) throw ChargeNegative("more left than right monomers");
    if ((rights.size() - lefts.size()) % 2) throw ParityError("m - n is odd");
    if ((rights.size() - lefts.size()) / 2 > static_cast<std::size_t>(kMaxUIndex))
        throw DomainError("too many U columns");
    if (!monomers_pairable(rights, lefts)) throw PairingUnsatisfied("no pairing into vertex-sharing monomers");
    return abs(det_hp(monomer_matrix(rights, lefts, prec), prec));
}

HPMatrix build_matrix(const MultiholeConfig& cfg, const ObliqueVector& displacement, mpfr_prec_t prec) {
    if (displacement.x.get_den() != 1 || displacement.y.get_den() != 1)
        throw DomainError("displacement must be integral");
    MultiholeConfig moved = cfg.displaced(displacement.x.get_num().get_si(), displacement.y.get_num().get_si());
    moved.validate();
    StackedMonomers st = stacked_monomers(moved);
    return monomer_matrix(st.rights, st.lefts, prec);
}

HPReal correlation(const MultiholeConfig& cfg, mpfr_prec_t prec) {
    cfg.validate();
    const ObliqueVector zero(0L, 0L);
    const HPReal tol(1e-15, prec);
    HPReal prev = abs(det_hp(build_matrix(cfg, zero, prec), prec));
    for (mpfr_prec_t p = 2 * prec; p <= kMaxEscalationPrec; p *= 2) {
        HPReal cur = abs(det_hp(build_matrix(cfg, zero, p), p));
        if (rel_diff(prev, cur) < tol) return cur;
        prev = std::move(cur);
    }
    throw PrecisionExhausted("correlation did not stabilise below " + std::to_string(kMaxEscalationPrec) + " bits");
}

HPReal relative_change(const MultiholeConfig& cfg, long alpha, long beta, mpfr_prec_t prec) {
    if (alpha == 0 && beta == 0) {
        cfg.validate();
        return HPReal(prec);
    }
    HPReal base = correlation(cfg, prec);
    HPReal moved = correlation(cfg.displaced(alpha, beta), prec);
    return moved / base - HPReal(1L, prec);
}

std::pair<long, long> ScaledConfig::anchor(std::size_t i, long R) const {
    const ScaledHole& h = holes.at(i);
    auto coord = [&](const Rational& v, int k) -> long {
        Rational t = v * R;
        if (mode == PositionMode::exact) {
            if (t.get_den() != 1) throw DomainError("exact mode needs R * position to be an integer");
            return t.get_num().get_si();
        }
        Integer f;
        Rational half = t + Rational(1, 2);
        mpz_fdiv_q(f.get_mpz_t(), half.get_num_mpz_t(), half.get_den_mpz_t());
        long base = f.get_si();
        if (!h.residues) return base;
        const int r = ((*h.residues)[k] % 3 + 3) % 3;
        long best = base;
        Rational best_d = -1;
        for (long c = base - 1; c <= base + 1; ++c) {
            if (((c % 3) + 3) % 3 != r) continue;
            Rational d = abs(Rational(c) - t);
            if (best_d < 0 || d < best_d) { best = c; best_d = d; }
        }
        return best;
    };
    return {coord(h.pos.x, 0), coord(h.pos.y, 1)};
}

MultiholeConfig ScaledConfig::at(long R) const {
    MultiholeConfig cfg;
    cfg.moving_index = moving_index;
    for (std::size_t i = 0; i < holes.size(); ++i) {
        auto [x, y] = anchor(i, R);
        cfg.holes.push_back(Multihole{holes[i].orientation, holes[i].slope, holes[i].offsets, x, y});
    }
    return cfg;
}

} // namespace gapcorr
