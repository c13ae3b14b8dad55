#include "gapcorr/oracle.hpp"

#include "gapcorr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <functional>
#include <mutex>
#include <set>

namespace gapcorr {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

long wrap(long v, long N) { return ((v % N) + N) % N; }

struct Cells {
    long N;
    std::vector<char> right_removed;
    std::vector<char> left_removed;

    std::size_t id(long a, long b) const { return static_cast<std::size_t>(wrap(a, N) * N + wrap(b, N)); }
    bool right_alive(long a, long b) const { return !right_removed[id(a, b)]; }
    bool left_alive(long a, long b) const { return !left_removed[id(a, b)]; }
};

Cells make_cells(const TorusGraph& g, const HolePunch& h) {
    if (g.N < 1) throw DomainError("torus side must be positive");
    Cells c{g.N, std::vector<char>(static_cast<std::size_t>(g.N * g.N), 0),
            std::vector<char>(static_cast<std::size_t>(g.N * g.N), 0)};
    for (const Monomer& m : h.cells) {
        auto& v = m.orientation == Orientation::right ? c.right_removed : c.left_removed;
        char& slot = v[c.id(m.a, m.b)];
        if (slot) throw DomainError("punched cell listed twice modulo N");
        slot = 1;
    }
    return c;
}

// Left neighbour of r(a,b) along direction d: 0 -> l(a,b), 1 -> l(a+1,b), 2 -> l(a,b+1).
std::pair<long, long> left_of(long a, long b, int d) {
    if (d == 1) return {a + 1, b};
    if (d == 2) return {a, b + 1};
    return {a, b};
}

} // namespace

HolePunch HolePunch::from_config(const MultiholeConfig& cfg) {
    HolePunch p;
    for (const auto& hole : cfg.holes)
        for (const auto& [X, Y] : hole.centers())
            for (const Monomer& m : triangle_cells(hole.orientation, X, Y)) p.cells.push_back(m);
    return p;
}

// ---------------------------------------------------------------------------
// Exhaustive backtracking

Integer count_matchings_bt(const TorusGraph& g, const HolePunch& h, std::uint64_t node_budget) {
    if (g.N > kBacktrackMaxN) throw BudgetExceeded("backtracking is limited to N <= 4");
    const Cells c = make_cells(g, h);
    const long N = g.N;
    std::vector<std::size_t> rights;
    std::vector<std::vector<std::size_t>> adj;  // per right, left ids with multiplicity
    std::size_t lefts_alive = 0;
    for (long a = 0; a < N; ++a)
        for (long b = 0; b < N; ++b) {
            if (c.left_alive(a, b)) ++lefts_alive;
            if (!c.right_alive(a, b)) continue;
            rights.push_back(c.id(a, b));
            std::vector<std::size_t> nb;
            for (int d = 0; d < 3; ++d) {
                auto [la, lb] = left_of(a, b, d);
                if (c.left_alive(la, lb)) nb.push_back(c.id(la, lb));
            }
            adj.push_back(nb);
        }
    if (rights.size() != lefts_alive) return 0;

    std::vector<char> used(static_cast<std::size_t>(N * N), 0);
    std::vector<char> done(rights.size(), 0);
    std::uint64_t nodes = 0;
    std::function<Integer(std::size_t)> rec = [&](std::size_t remaining) -> Integer {
        if (++nodes > node_budget) throw BudgetExceeded("backtracking node budget exhausted");
        if (remaining == 0) return 1;
        // most constrained unmatched right vertex
        std::size_t pick = rights.size(), best = 4;
        for (std::size_t i = 0; i < rights.size(); ++i) {
            if (done[i]) continue;
            std::size_t opts = 0;
            for (std::size_t l : adj[i]) opts += !used[l];
            if (opts < best) { best = opts; pick = i; }
            if (best == 0) return 0;
        }
        Integer total = 0;
        done[pick] = 1;
        for (std::size_t l : adj[pick]) {
            if (used[l]) continue;
            used[l] = 1;
            total += rec(remaining - 1);
            used[l] = 0;
        }
        done[pick] = 0;
        return total;
    };
    return rec(rights.size());
}

// ---------------------------------------------------------------------------
// Multi-modular determinant

namespace {

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

const std::vector<u64>& prime_pool(std::size_t count) {
    static std::vector<u64> pool;
    static std::mutex m;
    std::lock_guard lock(m);
    Integer cand((1UL << 62) - 1);
    if (!pool.empty()) cand = Integer(std::to_string(pool.back() - 2));
    while (pool.size() < count) {
        if (mpz_probab_prime_p(cand.get_mpz_t(), 40)) pool.push_back(std::stoull(cand.get_str()));
        cand -= 2;
    }
    return pool;
}

// Row elimination tracking each row's last nonzero column, so banded matrices stay cheap.
u64 det_mod(const std::vector<std::vector<long>>& m, u64 p) {
    const std::size_t n = m.size();
    std::vector<u64> A(n * n);
    std::vector<std::size_t> hi(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            long v = m[i][j];
            A[i * n + j] = v >= 0 ? static_cast<u64>(v) % p : p - (static_cast<u64>(-v) % p);
            if (A[i * n + j] == p) A[i * n + j] = 0;
            if (A[i * n + j]) hi[i] = j;
        }
    u64 det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = n;
        for (std::size_t i = k; i < n; ++i)
            if (A[i * n + k]) { piv = i; break; }
        if (piv == n) return 0;
        if (piv != k) {
            std::swap_ranges(A.begin() + static_cast<long>(piv * n), A.begin() + static_cast<long>(piv * n + n),
                             A.begin() + static_cast<long>(k * n));
            std::swap(hi[piv], hi[k]);
            det = det ? p - det : 0;
        }
        const u64 pivot = A[k * n + k];
        det = mulmod(det, pivot, p);
        const u64 inv = powmod(pivot, p - 2, p);
        const u64* rk = &A[k * n];
        for (std::size_t i = k + 1; i < n; ++i) {
            u64* ri = &A[i * n];
            if (!ri[k]) continue;
            const u64 f = mulmod(ri[k], inv, p);
            for (std::size_t c = k; c <= hi[k]; ++c) {
                if (!rk[c]) continue;
                u64 t = mulmod(f, rk[c], p);
                ri[c] = ri[c] >= t ? ri[c] - t : ri[c] + p - t;
            }
            hi[i] = std::max(hi[i], hi[k]);
        }
    }
    return det;
}

} // namespace

Integer det_multimodular(const std::vector<std::vector<long>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    double bits = 1;
    for (const auto& row : m) {
        if (row.size() != n) throw DomainError("determinant of a non-square matrix");
        double s = 0;
        for (long v : row) s += static_cast<double>(v) * static_cast<double>(v);
        if (s == 0) return 0;
        bits += 0.5 * std::log2(s);
    }
    const std::size_t count = static_cast<std::size_t>(std::ceil((bits + 2) / 61.0)) + 1;
    const auto& primes = prime_pool(count);
    Integer x = 0, mod = 1;
    for (std::size_t i = 0; i < count; ++i) {
        const u64 p = primes[i];
        const u64 r = det_mod(m, p);
        Integer P(std::to_string(p));
        Integer xr = x % P;
        Integer diff = (Integer(std::to_string(r)) - xr) % P;
        if (diff < 0) diff += P;
        Integer inv;
        Integer modp = mod % P;
        mpz_invert(inv.get_mpz_t(), modp.get_mpz_t(), P.get_mpz_t());
        x += mod * ((diff * inv) % P);
        mod *= P;
    }
    if (2 * x > mod) x -= mod;
    return x;
}

// ---------------------------------------------------------------------------
// Kasteleyn counting

namespace {

struct Edge {
    std::size_t r, l;  // matrix indices
    int sign;
    bool seam_a, seam_b;
};

std::vector<std::vector<Monomer>> removed_components(const Cells& c) {
    const long N = c.N;
    std::vector<Monomer> removed;
    for (long a = 0; a < N; ++a)
        for (long b = 0; b < N; ++b) {
            if (c.right_removed[c.id(a, b)]) removed.push_back({Orientation::right, a, b});
            if (c.left_removed[c.id(a, b)]) removed.push_back({Orientation::left, a, b});
        }
    std::vector<std::size_t> parent(removed.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
        return parent[i] == i ? i : parent[i] = find(parent[i]);
    };
    for (std::size_t i = 0; i < removed.size(); ++i)
        for (std::size_t j = 0; j < removed.size(); ++j) {
            const Monomer& r = removed[i];
            const Monomer& l = removed[j];
            if (r.orientation != Orientation::right || l.orientation != Orientation::left) continue;
            for (int d = 0; d < 3; ++d) {
                auto [la, lb] = left_of(r.a, r.b, d);
                if (wrap(la, N) == l.a && wrap(lb, N) == l.b) parent[find(i)] = find(j);
            }
        }
    std::vector<std::vector<Monomer>> comps;
    std::vector<long> index(removed.size(), -1);
    for (std::size_t i = 0; i < removed.size(); ++i) {
        std::size_t root = find(i);
        if (index[root] < 0) {
            index[root] = static_cast<long>(comps.size());
            comps.emplace_back();
        }
        comps[static_cast<std::size_t>(index[root])].push_back(removed[i]);
    }
    return comps;
}

// Kasteleyn signs: all +1 on the full torus; every pair of odd-size removed components is joined
// by a dual string, and each edge it crosses changes sign.
std::vector<Edge> signed_edges(const Cells& c, std::size_t& nr, std::size_t& nl) {
    const long N = c.N;
    std::vector<long> ridx(static_cast<std::size_t>(N * N), -1), lidx(static_cast<std::size_t>(N * N), -1);
    nr = nl = 0;
    for (long a = 0; a < N; ++a)
        for (long b = 0; b < N; ++b) {
            if (c.right_alive(a, b)) ridx[c.id(a, b)] = static_cast<long>(nr++);
            if (c.left_alive(a, b)) lidx[c.id(a, b)] = static_cast<long>(nl++);
        }
    std::vector<int> flip(static_cast<std::size_t>(N * N * 3), 1);
    auto cross = [&](long a, long b, int d) { flip[c.id(a, b) * 3 + static_cast<std::size_t>(d)] *= -1; };

    std::vector<std::pair<long, long>> ends;
    for (const auto& comp : removed_components(c))
        if (comp.size() % 2) ends.push_back(corners(comp.front())[0]);
    for (std::size_t i = 0; i + 1 < ends.size(); i += 2) {
        long u = wrap(ends[i].first, N), v = wrap(ends[i].second, N);
        const long tu = wrap(ends[i + 1].first, N), tv = wrap(ends[i + 1].second, N);
        while (u != tu) {
            long base = u < tu ? u : u - 1;  // lattice edge (base,v)-(base+1,v)
            cross(base, v - 1, 2);           // r(base,v-1) - l(base,v)
            u += u < tu ? 1 : -1;
        }
        while (v != tv) {
            long base = v < tv ? v : v - 1;  // lattice edge (u,base)-(u,base+1)
            cross(u - 1, base, 1);           // r(u-1,base) - l(u,base)
            v += v < tv ? 1 : -1;
        }
    }

    std::vector<Edge> edges;
    for (long a = 0; a < N; ++a)
        for (long b = 0; b < N; ++b) {
            if (!c.right_alive(a, b)) continue;
            for (int d = 0; d < 3; ++d) {
                auto [la, lb] = left_of(a, b, d);
                if (!c.left_alive(la, lb)) continue;
                edges.push_back(Edge{static_cast<std::size_t>(ridx[c.id(a, b)]),
                                     static_cast<std::size_t>(lidx[c.id(la, lb)]),
                                     flip[c.id(a, b) * 3 + static_cast<std::size_t>(d)],
                                     d == 1 && a == N - 1, d == 2 && b == N - 1});
            }
        }
    return edges;
}

} // namespace

std::array<Integer, 4> kasteleyn_determinants(const TorusGraph& g, const HolePunch& h) {
    if (g.N > kKasteleynMaxN) throw BudgetExceeded("Kasteleyn counting is limited to N <= 32");
    const Cells c = make_cells(g, h);
    std::size_t nr = 0, nl = 0;
    const std::vector<Edge> edges = signed_edges(c, nr, nl);
    std::array<Integer, 4> dets;
    if (nr != nl) {
        dets.fill(0);
        return dets;
    }
    for (int theta = 0; theta < 4; ++theta) {
        const bool ta = theta & 2, tb = theta & 1;
        std::vector<std::vector<long>> K(nr, std::vector<long>(nl, 0));
        for (const Edge& e : edges) {
            int s = e.sign;
            if (ta && e.seam_a) s = -s;
            if (tb && e.seam_b) s = -s;
            K[e.r][e.l] += s;
        }
        dets[static_cast<std::size_t>(theta)] = det_multimodular(K);
    }
    return dets;
}

Integer count_matchings_kasteleyn(const TorusGraph& g, const HolePunch& h) {
    const auto D = kasteleyn_determinants(g, h);
    // Within each seam-parity class every matching carries the same sign, so the class count is
    // |sum_theta (-1)^(theta.h) D_theta| / 4.
    Integer total = 0;
    for (int hcls = 0; hcls < 4; ++hcls) {
        Integer s = 0;
        for (int theta = 0; theta < 4; ++theta) {
            int dotp = ((hcls & 2) && (theta & 2)) + ((hcls & 1) && (theta & 1));
            s += (dotp % 2 ? -1 : 1) * D[static_cast<std::size_t>(theta)];
        }
        total += abs(s);
    }
    if (mpz_divisible_ui_p(total.get_mpz_t(), 4) == 0)
        throw InconsistencyError("Kasteleyn class sums are not divisible by 4");
    return total / 4;
}

Rational torus_correlation(long N, const HolePunch& h) {
    long charge = 0;
    for (const Monomer& m : h.cells) charge += m.orientation == Orientation::right ? 1 : -1;
    if (charge != 0) throw DomainError("torus correlation needs a charge-balanced punch");
    const TorusGraph g{N};
    Integer full = count_matchings_kasteleyn(g, HolePunch{});
    Integer punched = count_matchings_kasteleyn(g, h);
    Rational r(punched, full);
    r.canonicalize();
    return r;
}

} // namespace gapcorr
