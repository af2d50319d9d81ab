#ifndef BIELL_BRAUER_HPP
#define BIELL_BRAUER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "biell/elliptic.hpp"
#include "biell/localdata.hpp"
#include "biell/numeric.hpp"

namespace biell {

// Local order-2 obstruction pipeline for a product of elliptic curves over
// Q_p.  Everything is reduced to linear algebra over the two-element field:
// homomorphisms between the 2-torsion groups in bases whose first vector
// cuts the identity component of the special fiber.

// --- F_2 matrices ----------------------------------------------------------

// 2x2 matrix over the field with two elements.  As a homomorphism
// E1[2] -> E2[2] in marked bases (P1, P2) / (P1', P2'), the columns are the
// images of P1 and P2.
struct HomMatrix {
    unsigned char a[2][2] = {{0, 0}, {0, 0}}; // a[row][col], entries 0 or 1

    static HomMatrix zero() { return {}; }
    static HomMatrix identity();
    // 4-bit row-major encoding: code = a00 + 2*a01 + 4*a10 + 8*a11.
    static HomMatrix from_code(unsigned code);
    unsigned code() const;

    bool is_zero() const { return code() == 0; }
    bool invertible() const; // nonzero determinant over F_2

    HomMatrix operator+(const HomMatrix& o) const; // entrywise xor
    HomMatrix operator*(const HomMatrix& o) const; // composition mod 2
    bool operator==(const HomMatrix& o) const { return code() == o.code(); }
    bool operator!=(const HomMatrix& o) const { return !(*this == o); }

    std::string to_string() const; // [[a00, a01], [a10, a11]]
};

// Action of the local Galois group on a 2-torsion group, written in a marked
// basis; one matrix per topological generator.  An empty list is the trivial
// action (the full 2-torsion is rational over the field in question).
struct GaloisAction {
    std::vector<HomMatrix> generators;

    bool trivial() const { return generators.empty(); }
};

// Every generator must be invertible; throws input_error otherwise.
void validate_galois_action(const GaloisAction& action);

// --- working fields ---------------------------------------------------------

// An extension of Q_p obtained by adjoining square roots, tracked by the
// square classes that were adjoined.  The span (under class multiplication)
// of the listed classes is trivialized over the field.
struct WorkingField {
    std::uint64_t p = 0;
    std::vector<SquareClass> adjoined; // nontrivial generators, deduplicated

    bool is_base() const { return adjoined.empty(); }
    bool contains(SquareClass c) const; // c trivial or in the span
    std::string name() const;           // "Q_11", "Q_11(sqrt(2))", ...
};

WorkingField base_field(std::uint64_t p);

// Smallest square-class extension of Q_p over which E[2] is rational.
// Requires the division cubic to have a Z_p root (guaranteed under
// multiplicative reduction); a curve whose cubic is irreducible over Q_p
// needs a cubic extension, which this tower cannot reach -> input_error.
WorkingField splitting_field(const EllipticCurve& E, std::uint64_t p);

WorkingField compositum(const WorkingField& a, const WorkingField& b);

// --- marked 2-torsion bases --------------------------------------------------

// x-coordinate of a 2-torsion point of the p-minimal model (such points have
// y = 0 there).  Either a Z_p root of the division cubic, or -- when the
// remaining two roots are conjugate over a quadratic extension -- the pair's
// shared quadratic factor x^2 + b x + c, held to the stated precision.
struct TorsionX {
    std::optional<PadicRoot> root;
    Int quad_b{0}, quad_c{0};
    int prec = 0;

    std::string to_string() const;
};

// Basis (P1, P2) of E[2] over the working field with P1 spanning the
// identity-component line: P1 is the 2-torsion point whose reduction avoids
// the node, and P2 is the remaining point with the smallest canonical
// x-residue (a reproducible tie-break).  When only P1 is rational over Q_p,
// P2 is either conjugate root over the quadratic extension; the two choices
// differ by a basis change fixing the P1 line, which no downstream count
// depends on.
struct TwoTorsionBasis {
    std::string curve_label;
    std::uint64_t p = 0;
    EllipticCurve minimal; // the model whose coordinates are used
    TorsionX P1;
    TorsionX P2;
    std::vector<SquareClass> extensions; // adjoined to reach the working field
    GaloisAction action; // on E[2] over the working field; trivial by design

    std::string to_string() const;
};

// Requires split multiplicative reduction at p >= 5 (precondition_error
// otherwise) and a working field containing the splitting extension
// (input_error otherwise).
TwoTorsionBasis two_torsion_basis(const EllipticCurve& E, std::uint64_t p,
                                  const WorkingField& field);

// --- the Hom module and its distinguished pieces -----------------------------

struct HomModule {
    std::vector<HomMatrix> all;         // all 16 matrices, in code order
    std::vector<HomMatrix> equivariant; // commuting with the paired actions
};

// Homomorphisms E1[2] -> E2[2] equivariant for the given actions; the k-th
// generators of the two lists describe the same Galois element, so the lists
// must have equal length (input_error otherwise).  Trivial actions leave all
// 16 matrices.
HomModule hom_module(const GaloisAction& on_e1, const GaloisAction& on_e2);
HomModule hom_module(const TwoTorsionBasis& b1, const TwoTorsionBasis& b2);

// Homomorphisms that kill the second basis vector: g(P2) = 0, i.e. second
// column zero.  A subgroup; exactly 4 of the full 16.
std::vector<HomMatrix> h2_subgroup(const std::vector<HomMatrix>& homs);

// Composite "restrict to the P1 line, project modulo the P1' line": the
// lower-left entry.  Additive in g; the obstruction class of g is nonzero
// exactly when this is 1.
int class_in_Q(const HomMatrix& g);

// --- the end-to-end witness --------------------------------------------------

struct ObstructionReport {
    EllipticCurve e1, e2;
    std::uint64_t p = 0;
    ReductionData red1, red2;
    std::optional<NonIsogenyCertificate> nonisogeny; // nullopt: not certified
    bool conditional = false; // conclusion assumes non-isogenous curves
    WorkingField field;
    TwoTorsionBasis b1, b2;
    std::size_t hom_count = 0;     // |equivariant homomorphisms|
    std::size_t h2_count = 0;      // |H2 within the equivariant part|
    std::size_t witness_count = 0; // elements of H2 with nonzero class
    std::optional<HomMatrix> witness; // smallest code among the witnesses
    bool conclusion = false;          // a witness exists

    std::string to_string() const;
};

// Runs the whole pipeline at p >= 5: reduction checks (both curves must be
// split multiplicative; a good-reduction curve is rejected with a message
// explaining that its transcendental 2-torsion is 2-divisible, so nothing of
// order 2 can be certified), non-isogeny certificate (when inconclusive the
// report is emitted with the conditional flag instead of failing), working
// field construction, bases, Hom-module enumeration, and the witness search
// in H2 with nonzero class.
ObstructionReport obstruction_witness(const EllipticCurve& E1,
                                      const EllipticCurve& E2, std::uint64_t p);

} // namespace biell

#endif
