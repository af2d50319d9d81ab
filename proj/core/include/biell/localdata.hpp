#ifndef BIELL_LOCALDATA_HPP
#define BIELL_LOCALDATA_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "biell/config.hpp"
#include "biell/elliptic.hpp"
#include "biell/numeric.hpp"

namespace biell {

// Local theory of a rational elliptic curve at a prime p >= 5.  Everything
// here stays in short Weierstrass form, which is why 2 and 3 are excluded;
// the j-invariant functions at the bottom work at every prime.

struct MinimalModel {
    EllipticCurve curve;  // equation minimal at p (coefficients p-integral)
    long scale_exponent;  // k with (A, B) -> (A / p^{4k}, B / p^{6k})
};

// Scale (x, y) -> (p^{2k} x, p^{3k} y) with the largest k keeping the
// equation p-integral.  The result satisfies v(disc) < 12 or v(c4) < 4.
MinimalModel minimal_at_p(const EllipticCurve& E, std::uint64_t p);

enum class ReductionClass {
    good,
    split_multiplicative,
    nonsplit_multiplicative,
    additive,
};
std::string to_string(ReductionClass c);

struct ReductionData {
    std::uint64_t p = 0;
    long scale_exponent = 0; // input model -> minimal model
    long v_disc_min = 0;     // valuation of the minimal discriminant
    Valuation v_c4_min = Valuation::infinity();
    Valuation v_j = Valuation::infinity(); // model-independent
    ReductionClass cls = ReductionClass::good;
};

// Classify the reduction of E at p >= 5.  Multiplicative reduction is
// split exactly when -c6 of the minimal model is a square mod p (the
// tangent slopes at the node live in F_p in that case).
ReductionData reduction_type(const EllipticCurve& E, std::uint64_t p);

// v_p(j) < 0, i.e. E acquires multiplicative reduction over some extension.
// Valid at every prime, including 2 and 3.
bool potentially_multiplicative(const EllipticCurve& E, std::uint64_t p);

struct NonIsogenyCertificate {
    std::uint64_t p = 0;  // witness prime
    Valuation v_j1 = Valuation::infinity();
    Valuation v_j2 = Valuation::infinity(); // exactly one of the two is < 0
};

// Isogenous curves share their set of potentially multiplicative primes, so
// a prime where exactly one j-invariant is non-integral proves the curves
// are not geometrically isogenous.  Returns the smallest such prime among
// the divisors of either j-denominator, or nullopt when the two sets agree
// (which proves nothing either way).
std::optional<NonIsogenyCertificate>
geometric_nonisogeny_certificate(const EllipticCurve& E1, const EllipticCurve& E2);

struct TateData {
    std::uint64_t p = 0;
    long v_q = 0;             // = v(minimal disc) = -v(j)
    SquareClass q_class = SquareClass::one; // square class of the Tate parameter
};

// Tate parameter data for a curve with split multiplicative reduction at p:
// E(Q_p) = Q_p^x / q^Z with v(q) = -v(j).  The square class of q equals the
// square class of the minimal discriminant (q * j is a 1-unit, hence a
// square, and c4 is a unit square times a 1-unit under multiplicative
// reduction, so disc = c4^3 / j has the class of 1/j, i.e. of q).
TateData tate_data(const EllipticCurve& E, std::uint64_t p);

// --- p-adic roots of division cubics -------------------------------------

struct PadicRoot {
    Int residue;             // canonical residue mod p^prec
    int prec = 0;
    std::optional<Rat> exact; // set when the root is a rational number
};

// All roots in Z_p of x^3 + Ax + B, given to the requested precision and
// sorted by residue.  A and B must be p-integral with nonzero discriminant;
// since the cubic is monic, every Q_p-root is integral, so this list is the
// full Q_p story.  Simple residue roots are lifted by Newton iteration;
// around a repeated residue root the disk is rescaled (x = r + pt) and
// searched recursively, which must separate the roots before the precision
// budget runs out (it always does for nonzero discriminant, given enough
// precision).
std::vector<PadicRoot> zp_roots(const Rat& A, const Rat& B, std::uint64_t p,
                                int prec = kDefaultPadicPrecision);

// --- the field generated by the 2-torsion --------------------------------

enum class TwoTorsionFieldStatus {
    rational,             // all of E[2] is Q_p-rational
    unramified_quadratic, // one root rational, unramified quadratic rest
    ramified_quadratic,   // one root rational, ramified quadratic rest
    quartic,              // legacy tag: division cubic irreducible over Q_p
                          // (splitting degree 3 or 6; see description)
};
std::string to_string(TwoTorsionFieldStatus s);

struct TwoTorsionField {
    TwoTorsionFieldStatus status = TwoTorsionFieldStatus::rational;
    SquareClass disc_class = SquareClass::one; // class of the cubic discriminant
    std::vector<PadicRoot> roots; // Z_p roots, minimal-model coordinates
    std::string description;
};

// Determine Q_p(E[2]) at p >= 5 by counting Z_p roots of the division cubic
// of the p-minimal model.  The quadratic part is pinned down by the square
// class of the cubic discriminant: the splitting field always contains its
// square root.
TwoTorsionField full_two_torsion_field(const EllipticCurve& E, std::uint64_t p,
                                       int prec = kDefaultPadicPrecision);

// --- split multiplicative reduction: node and mu_2 ------------------------

// x-coordinate mod p of the node of the reduced curve, i.e. the repeated
// root of the division cubic of the minimal model.  Requires multiplicative
// reduction.
std::uint64_t node_residue(const EllipticCurve& E, std::uint64_t p);

// The 2-torsion point cutting the identity component: under the Tate
// parametrization E(Q_p) = Q_p^x / q^Z it is the image of -1, and its
// x-coordinate is the unique division-cubic root whose reduction avoids the
// node.  That root is simple mod p, so it always lies in Z_p, whether or
// not the other two do.  Minimal-model coordinates.
PadicRoot mu2_root(const EllipticCurve& E, std::uint64_t p,
                   int prec = kDefaultPadicPrecision);

// Same point as an exact rational point on the *input* model; throws
// precondition_error when its coordinates are irrational (use mu2_root).
RatPoint mu2_point(const EllipticCurve& E, std::uint64_t p);

} // namespace biell

#endif
