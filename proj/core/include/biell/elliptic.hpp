#ifndef BIELL_ELLIPTIC_HPP
#define BIELL_ELLIPTIC_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "biell/errors.hpp"
#include "biell/fp.hpp"
#include "biell/numeric.hpp"

namespace biell {

// --- generic short Weierstrass machinery --------------------------------
//
// y^2 = x^3 + A x + B over an exact field whose elements support
// +, -, *, /, ==.  The chord-tangent formulas below avoid field-specific
// constants by building small integers out of repeated addition.

template <typename K>
struct CurveEq {
    K A, B;
};

template <typename K>
struct Pt {
    bool infinity = true;
    K x{}, y{};

    static Pt at_infinity() { return Pt{}; }
    static Pt affine(const K& x, const K& y) { return Pt{false, x, y}; }

    bool operator==(const Pt& o) const
    {
        if (infinity || o.infinity) return infinity == o.infinity;
        return x == o.x && y == o.y;
    }
};

template <typename K>
bool on_curve(const CurveEq<K>& E, const Pt<K>& P)
{
    if (P.infinity) return true;
    K lhs = P.y * P.y;
    K rhs = P.x * P.x * P.x + E.A * P.x + E.B;
    return lhs == rhs;
}

template <typename K>
Pt<K> ec_neg(const Pt<K>& P)
{
    if (P.infinity) return P;
    return Pt<K>::affine(P.x, -P.y);
}

template <typename K>
Pt<K> ec_add(const CurveEq<K>& E, const Pt<K>& P, const Pt<K>& Q)
{
    if (!on_curve(E, P) || !on_curve(E, Q))
        throw input_error("ec_add: point not on curve");
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    K lambda;
    if (P.x == Q.x) {
        if (is_zero(P.y + Q.y))
            return Pt<K>::at_infinity(); // vertical chord or 2-torsion tangent
        K x2 = P.x * P.x;
        lambda = (x2 + x2 + x2 + E.A) / (P.y + P.y);
    } else {
        lambda = (Q.y - P.y) / (Q.x - P.x);
    }
    K x3 = lambda * lambda - P.x - Q.x;
    K y3 = lambda * (P.x - x3) - P.y;
    return Pt<K>::affine(x3, y3);
}

template <typename K>
Pt<K> ec_mul(const CurveEq<K>& E, Int n, Pt<K> P)
{
    if (n < 0) {
        n = -n;
        P = ec_neg(P);
    }
    Pt<K> acc = Pt<K>::at_infinity();
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t()))
            acc = ec_add(E, acc, P);
        P = ec_add(E, P, P);
        n >>= 1;
    }
    return acc;
}

// --- curves over Q -------------------------------------------------------

using RatPoint = Pt<Rat>;

struct EllipticCurve {
    Rat A, B;
    std::string label; // optional display name (e.g. an LMFDB label)

    CurveEq<Rat> eq() const { return {A, B}; }
};

// Construct y^2 = x^3 + A x + B, rejecting singular equations.
EllipticCurve make_curve(const Rat& A, const Rat& B, const std::string& label = "");

// Long Weierstrass ingestion [a1,a2,a3,a4,a6]: complete the square and
// depress the cubic.  The result has the same c4, c6 (so it is isomorphic
// over Q to the input).
EllipticCurve curve_from_long_form(const std::vector<Rat>& a,
                                   const std::string& label = "");

struct CurveInvariants {
    Rat c4, c6, disc, j; // j = c4^3 / disc
};

// c4 = -48A, c6 = -864B, disc = -16(4A^3 + 27B^2); c4^3 - c6^2 = 1728*disc.
CurveInvariants invariants(const EllipticCurve& E);

// Rational 2-torsion: the point at infinity followed by the points (r, 0)
// for rational roots r of the division cubic, sorted by x.
std::vector<RatPoint> two_torsion(const EllipticCurve& E);

// Exact order of P, searched by repeated addition up to `bound`;
// nullopt if the order exceeds the bound (point presumed non-torsion).
std::optional<Int> torsion_point_order(const EllipticCurve& E, const RatPoint& P,
                                       const Int& bound);

// All integer roots of the monic cubic x^3 + Ax + B (A, B rational) -- the
// rational-root scan used by two_torsion; exposed for reuse and testing.
std::vector<Rat> rational_cubic_roots(const Rat& A, const Rat& B);

// --- curves over F_p ------------------------------------------------------

using FpPoint = Pt<FpElem>;

struct FpCurve {
    CurveEq<FpElem> eq;
    std::uint64_t p;
};

// Reduce a rational curve at a prime of good definition for the coefficient
// denominators (p >= 5, p not dividing either denominator, nonsingular
// reduction required).
FpCurve reduce_curve(const EllipticCurve& E, std::uint64_t p);
FpCurve make_fp_curve(std::uint64_t A, std::uint64_t B, std::uint64_t p);

// Exhaustive point count: 1 + sum over x of (1 + chi(x^3+Ax+B)) with chi
// the Euler-criterion quadratic character.  Refuses p beyond the
// enumeration bound.
Int count_points(const FpCurve& E, std::int64_t bound_override = 0);

// Every affine point, sorted by (x, y) canonical residues.
std::vector<FpPoint> enumerate_points(const FpCurve& E,
                                      std::int64_t bound_override = 0);

// 2-torsion over F_p (root scan of the division cubic).
std::vector<FpPoint> two_torsion(const FpCurve& E,
                                 std::int64_t bound_override = 0);

struct GroupStructure {
    Int order;              // #E(F_p)
    std::vector<Int> invariant_factors; // [d2] cyclic, or [d1, d2] with d1 | d2
    std::vector<FpPoint> generators;    // matching orders, d1 first
};

// Z/d1 x Z/d2 decomposition by maximal-order element plus complement
// search; d1 | d2 and d1 | p - 1.
GroupStructure group_structure(const FpCurve& E, std::int64_t bound_override = 0);

// Order of a point in E(F_p) (exact; uses the factored group order).
Int fp_point_order(const FpCurve& E, const FpPoint& P,
                   std::int64_t bound_override = 0);

std::string point_to_string(const RatPoint& P);
std::string point_to_string(const FpPoint& P);

} // namespace biell

#endif
