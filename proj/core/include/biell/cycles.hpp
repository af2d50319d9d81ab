#ifndef BIELL_CYCLES_HPP
#define BIELL_CYCLES_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "biell/elliptic.hpp"
#include "biell/snf.hpp"
#include "biell/surfaces.hpp"

namespace biell {

// Machinery for degree-zero cycle classes on a product of two elliptic
// curves modulo a free quotient action.  Points of each factor are modeled
// as coordinate vectors over a finitely generated abelian group; cycles are
// formal sums of point pairs; the normalization map nu lands in the tensor
// product of the two groups, where the kernel of the Albanese map becomes
// computable by integer linear algebra.

using Coords = std::vector<Int>;

std::string coords_to_string(const Coords& v);

// Z^free_rank + sum Z/torsion[i], with generators ordered free block first.
// Optionally carries a marked translation element (the image of the group
// generator acting on this factor) and/or an automorphism in these
// coordinates.
struct MarkedGroup {
    long free_rank = 0;
    std::vector<Int> torsion;        // moduli of the torsion generators
    std::optional<Coords> p0;        // marked translation element
    Int p0_order = 0;                // declared exact order of p0
    std::optional<IntMat> alpha;     // automorphism, columns = images of gens
    long alpha_order = 0;            // declared exact order of alpha

    std::size_t dim() const { return static_cast<std::size_t>(free_rank) + torsion.size(); }
    Coords zero() const { return Coords(dim(), Int(0)); }
    Coords normalize(Coords v) const; // reduce torsion coordinates
    Coords add(const Coords& a, const Coords& b) const;
    Coords sub(const Coords& a, const Coords& b) const;
    Coords smul(const Int& k, const Coords& a) const;
    bool is_zero(const Coords& a) const;
    // nullopt when the element has infinite order
    std::optional<Int> order_of(const Coords& a) const;
    Coords apply_alpha(const Coords& a) const; // requires alpha
};

// Check the declared data: coordinate sizes, exact order of p0, alpha a
// well-defined endomorphism of exact order alpha_order (which already makes
// it an automorphism: alpha^(order-1) inverts it).  Throws input_error.
void validate_marked_group(const MarkedGroup& g);

// --- formal cycles --------------------------------------------------------

struct PairSymbol {
    Coords a, b; // a point on each factor, in group coordinates
    bool operator<(const PairSymbol& o) const
    {
        return a != o.a ? a < o.a : b < o.b;
    }
    bool operator==(const PairSymbol& o) const { return a == o.a && b == o.b; }
};

// Integer combination of pair symbols; zero-coefficient terms are dropped.
class CycleExpr {
public:
    CycleExpr() = default;

    static CycleExpr symbol(Coords a, Coords b);

    CycleExpr& add_term(const PairSymbol& s, const Int& c);
    CycleExpr operator+(const CycleExpr& o) const;
    CycleExpr operator-(const CycleExpr& o) const;
    CycleExpr scaled(const Int& k) const;

    bool empty() const { return terms_.empty(); }
    const std::map<PairSymbol, Int>& terms() const { return terms_; }
    bool operator==(const CycleExpr& o) const { return terms_ == o.terms_; }

    std::string to_string() const;

private:
    std::map<PairSymbol, Int> terms_;
};

// --- the quotient model ----------------------------------------------------

// A bielliptic quotient datum in group coordinates: the group generator
// translates the first factor by a1.p0 and twists the second by a2.alpha.
struct BiellipticModel {
    int type = 0;   // classification family (informational)
    MarkedGroup a1; // carries p0
    MarkedGroup a2; // carries alpha
};

void validate_model(const BiellipticModel& m); // throws input_error

// The generic-coefficient models used for the family-wide exponent bounds:
//   type 1: a1 = Z + Z/2 (p0 the 2-torsion marker), a2 = Z, alpha = -1
//   type 5: a1 = Z + Z/3, a2 = Z^2, alpha of order 3 (alpha^2 + alpha = -1)
// Other families need two independent translations; input_error.
BiellipticModel universal_model(int type);

// The cycle z_{P,Q} = [P,Q] - [P,O] - [O,Q] + [O,O]: the basic
// degree-zero class with trivial Albanese image.
CycleExpr special_cycle(const BiellipticModel& m, const Coords& P, const Coords& Q);

// Pushforward along the group generator: [a, b] -> [a + p0, alpha b].
CycleExpr sigma_push(const BiellipticModel& m, const CycleExpr& e);

// The relations z_{g,h} - sigma_* z_{g,h} over all generator pairs (g, h),
// expanded literally.  Their nu-images generate the subgroup the quotient
// certificate divides out.
std::vector<CycleExpr> pushforward_relations(const BiellipticModel& m);

// --- tensor normalization --------------------------------------------------

// A1 (x) A2 in the generator bases: slot (i, j) is Z/gcd(n_i, m_j) with the
// convention gcd(0, m) = m (0 marking a free generator).
class TensorModel {
public:
    explicit TensorModel(const BiellipticModel& m);

    std::size_t dim() const { return moduli_.size(); }
    const std::vector<Int>& moduli() const { return moduli_; }

    Coords normalize(Coords v) const;
    Coords tensor_of(const Coords& a, const Coords& b) const;
    // nu([a,b]) = a (x) b extended linearly; z_{P,Q} |-> P (x) Q
    Coords nu(const CycleExpr& e) const;
    bool is_zero(const Coords& v) const;

private:
    std::size_t d1_, d2_;
    std::vector<Int> moduli_;
};

// --- the quotient certificate ----------------------------------------------

// T / R where T = A1 (x) A2 and R is generated by the nu-images of the
// pushforward relations.  The class of nu(z_{P,Q}) in this quotient bounds
// the order of z_{P,Q} modulo the relations actually used, so its order is
// certified exactly by Smith reduction.
class CycleClassGroup {
public:
    explicit CycleClassGroup(BiellipticModel m);

    const BiellipticModel& model() const { return model_; }
    const TensorModel& tensor() const { return tensor_; }
    const FinAbGroup& group() const { return quot_.group(); }

    // order of the class of nu(z_{P,Q}); nullopt when infinite
    std::optional<Int> z_order(const Coords& P, const Coords& Q) const;
    // is this tensor element a combination of relation generators?
    bool relation_member(const Coords& t) const;

private:
    BiellipticModel model_;
    TensorModel tensor_;
    std::vector<std::vector<Int>> rows_;
    GroupQuotient quot_;
};

// --- finite-field instances -------------------------------------------------

// E(F_p) with its generator coordinate chart (brute-force table; the group
// must fit under the enumeration bound).
class FpEmbedding {
public:
    explicit FpEmbedding(const FpCurve& E);

    const FpCurve& curve() const { return curve_; }
    const GroupStructure& structure() const { return gs_; }
    Coords coords_of(const FpPoint& P) const; // input_error if not on curve
    FpPoint point_of(const Coords& v) const;

private:
    FpCurve curve_;
    GroupStructure gs_;
    std::map<std::string, Coords> table_;
};

struct InstanceModel {
    BiellipticModel model;
    FpEmbedding emb1, emb2;
};

// Build the coordinate model of a validated quotient datum over F_p; the
// translation point and the twist are converted to group coordinates.
InstanceModel instance_model(const SurfaceActionSpec& spec);

} // namespace biell

#endif
