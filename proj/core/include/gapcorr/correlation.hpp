#pragma once

#include "gapcorr/geometry.hpp"
#include "gapcorr/hp.hpp"
#include "gapcorr/linalg.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace gapcorr {

enum class Orientation { right, left };

std::string to_string(Orientation o);

// Unit triangle r(a,b) or l(a,b).
struct Monomer {
    Orientation orientation;
    long a;
    long b;

    friend bool operator==(const Monomer&, const Monomer&) = default;
    friend auto operator<=>(const Monomer&, const Monomer&) = default;
};

// Lattice vertices of a unit triangle, in vertex coordinates.
std::array<std::pair<long, long>, 3> corners(const Monomer& m);
bool share_vertex(const Monomer& p, const Monomer& q);
bool adjacent(const Monomer& r, const Monomer& l);

// Side-2 triangle centred at (X,Y): four unit cells, and its two stacked monomers.
std::array<Monomer, 4> triangle_cells(Orientation o, long X, long Y);
std::array<Monomer, 2> triangle_monomers(Orientation o, long X, long Y);

struct Multihole {
    Orientation orientation = Orientation::right;
    Rational slope = 1;
    std::vector<long> offsets{0};
    long x = 0;
    long y = 0;

    std::size_t size() const { return offsets.size(); }
    long charge() const;
    std::vector<std::pair<long, long>> centers() const;
};

struct MultiholeConfig {
    std::vector<Multihole> holes;
    std::size_t moving_index = 0;

    long S() const;
    long T() const;
    long nu() const { return S() - T(); }
    long charge() const { return 2 * nu(); }

    // Throws on malformed offsets, negative charge, nu above the U cap or overlapping holes.
    void validate() const;
    MultiholeConfig displaced(long alpha, long beta) const;
};

void check_disjoint(const MultiholeConfig& cfg);

struct StackedMonomers {
    std::vector<Monomer> rights;
    std::vector<Monomer> lefts;
};

StackedMonomers stacked_monomers(const MultiholeConfig& cfg);

// [P(a_i-c_j, b_i-d_j) | U_t(a_i+1,b_i), U_t(a_i,b_i+1)], no precondition checks.
HPMatrix monomer_matrix(const std::vector<Monomer>& rights, const std::vector<Monomer>& lefts, mpfr_prec_t prec);

// Pairing by maximum matching on the shares-a-vertex graph.
bool monomers_pairable(const std::vector<Monomer>& rights, const std::vector<Monomer>& lefts);

HPReal monomer_correlation(const std::vector<Monomer>& rights, const std::vector<Monomer>& lefts,
                           mpfr_prec_t prec = kDefaultPrec);

HPMatrix build_matrix(const MultiholeConfig& cfg, const ObliqueVector& displacement,
                      mpfr_prec_t prec = kDefaultPrec);

// |det M| with precision doubling until two consecutive values agree to 1e-15.
HPReal correlation(const MultiholeConfig& cfg, mpfr_prec_t prec = kDefaultPrec);

HPReal relative_change(const MultiholeConfig& cfg, long alpha, long beta, mpfr_prec_t prec = kDefaultPrec);

inline constexpr mpfr_prec_t kMaxEscalationPrec = 1L << 14;

// Position sequences x^(R) for a hole family at scale R.
enum class PositionMode { exact, rounded };

struct ScaledHole {
    Orientation orientation = Orientation::right;
    Rational slope = 1;
    std::vector<long> offsets{0};
    ObliqueVector pos;
    std::optional<std::array<int, 2>> residues;
};

struct ScaledConfig {
    std::vector<ScaledHole> holes;
    std::size_t moving_index = 0;
    PositionMode mode = PositionMode::exact;

    std::pair<long, long> anchor(std::size_t i, long R) const;
    MultiholeConfig at(long R) const;
};

} // namespace gapcorr
