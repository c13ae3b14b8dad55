#pragma once

#include "gapcorr/correlation.hpp"
#include "gapcorr/hp.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace gapcorr {

// Triangular lattice on the rhombus N(1,0), N(0,1) with opposite sides identified.
// Right r(a,b) touches l(a,b), l(a+1,b), l(a,b+1).
struct TorusGraph {
    long N = 1;
};

struct HolePunch {
    std::vector<Monomer> cells;

    static HolePunch from_config(const MultiholeConfig& cfg);
};

inline constexpr long kBacktrackMaxN = 4;
inline constexpr long kKasteleynMaxN = 32;

Integer count_matchings_bt(const TorusGraph& g, const HolePunch& h, std::uint64_t node_budget = 50'000'000);

Integer count_matchings_kasteleyn(const TorusGraph& g, const HolePunch& h);

// Signed determinants of the four twisted Kasteleyn matrices, index 2*theta_a + theta_b.
std::array<Integer, 4> kasteleyn_determinants(const TorusGraph& g, const HolePunch& h);

Rational torus_correlation(long N, const HolePunch& h);

// Determinant of an integer matrix by elimination modulo 62-bit primes and CRT.
Integer det_multimodular(const std::vector<std::vector<long>>& m);

} // namespace gapcorr
