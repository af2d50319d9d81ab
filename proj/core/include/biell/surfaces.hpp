#ifndef BIELL_SURFACES_HPP
#define BIELL_SURFACES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "biell/elliptic.hpp"

namespace biell {

// Bielliptic surfaces S = (E1 x E2)/G, where the finite abelian group G
// acts on E1 by translation and on E2 by a point automorphism.  The
// classical Bagnera-de Franchis classification sorts them into seven
// families; the data attached to each family below drives everything else
// in this library.

struct ClassificationRow {
    int type = 0;                  // 1..7
    std::vector<int> group;        // invariant factors of G (d1 | d2)
    long group_order = 0;          // |G|
    long canonical_order = 0;      // order of the canonical class in Pic
    std::vector<int> h2_torsion;   // invariant factors of H^2(S, Z)_tor
    long lambda = 0;               // |G| / canonical_order
    int epsilon = 0;               // 2 for 2-power canonical order, else 3
    long exponent_bound = 0;       // 4|G| when |G| is even, 9|G| when odd
};

// All seven families, in type order.
const std::vector<ClassificationRow>& classification_table();
const ClassificationRow& table_row(int type);

// Five of the families are covered by a smaller-group family: quotienting
// by a subgroup H < G of prime index gives an intermediate bielliptic
// surface mapping onto S with degree [G : H].  Types 1 and 5 (cyclic of
// prime order) have no intermediate stage.
struct CoverStep {
    int base_type = 0;  // the family being covered
    int cover_type = 0; // family of the covering surface
    long degree = 0;    // = |G_base| / |G_cover|
};
std::optional<CoverStep> intermediate_cover(int base_type);

// Smallest element of exact multiplicative order n in F_p; requires
// n | p - 1 (input_error otherwise).  Deterministic, so instance data
// built from it is reproducible.
std::uint64_t unity_root(std::uint64_t p, unsigned n);

// The order-n automorphism of E used in the quotient construction:
//   n = 2:  (x, y) -> (x, -y)            any curve
//   n = 3:  (x, y) -> (zeta3 x, y)       requires A = 0
//   n = 4:  (x, y) -> (-x, i y)          requires B = 0
// applied pointwise over F_p.
FpPoint twist_point(unsigned n, const FpCurve& E, const FpPoint& Q);

// Concrete quotient data over F_p: G acts on E1 x E2 by
// (P, Q) -> (P + P0, twist(Q)), generated by a translation point P0 and
// the order-n twist above.  The action is free exactly when P0 has exact
// order n, since every nontrivial group element translates the first
// factor by a nonzero multiple of P0.
struct SurfaceActionSpec {
    int type = 0;  // 1, 3 or 5; the other families need two independent
                   // translations and are not modeled pointwise here
    FpCurve e1;
    FpPoint p0;    // translation point on e1
    FpCurve e2;
};

struct ActionCheck {
    bool ok = false;
    std::vector<std::string> violations; // empty iff ok
};

// Validate a quotient datum: matching fields, the congruence on p needed
// for the twist to exist, the curve shape it needs, and the exact order of
// the translation point.
ActionCheck validate_action(const SurfaceActionSpec& s);

} // namespace biell

#endif
