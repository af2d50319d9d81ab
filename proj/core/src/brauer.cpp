#include "biell/brauer.hpp"

#include <algorithm>
#include <sstream>

#include "biell/errors.hpp"

namespace biell {
namespace {

std::string curve_name(const EllipticCurve& E)
{
    if (!E.label.empty()) return E.label;
    return "y^2 = x^3 + " + Rat(E.A).get_str() + "*x + " + Rat(E.B).get_str();
}

Int pow_int(std::uint64_t p, int e)
{
    Int r{1};
    for (int i = 0; i < e; ++i) r *= static_cast<long>(p);
    return r;
}

// Canonical residue of a p-integral rational modulo m (a power of p).
Int residue_mod(const Rat& x, const Int& m)
{
    Int num(x.get_num()), den(x.get_den()), inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
        throw error("internal: denominator not a unit modulo p^k");
    Int r = num % m * inv % m;
    if (r < 0) r += m;
    return r;
}

// Smallest positive unit that is not a square modulo p.
std::uint64_t least_nonresidue(std::uint64_t p)
{
    for (std::uint64_t u = 2; u < p; ++u)
        if (!is_square_mod(Int(static_cast<long>(u)), p)) return u;
    throw error("internal: no quadratic nonresidue found");
}

// Concrete representative of a square class at p, for display.
std::string class_representative(SquareClass c, std::uint64_t p)
{
    switch (c) {
    case SquareClass::one: return "1";
    case SquareClass::unit: return std::to_string(least_nonresidue(p));
    case SquareClass::uniformizer: return std::to_string(p);
    case SquareClass::unit_uniformizer:
        return std::to_string(least_nonresidue(p) * p);
    }
    throw error("internal: unknown square class");
}

// The subgroup of Q_p^x / squares generated by the listed classes.
std::vector<SquareClass> class_span(const std::vector<SquareClass>& gens)
{
    std::vector<SquareClass> span{SquareClass::one};
    for (SquareClass g : gens) {
        std::vector<SquareClass> next = span;
        for (SquareClass s : span) {
            SquareClass t = square_class_mul(s, g);
            if (std::find(next.begin(), next.end(), t) == next.end())
                next.push_back(t);
        }
        span = std::move(next);
    }
    return span;
}

} // namespace

// --- F_2 matrices ----------------------------------------------------------

HomMatrix HomMatrix::identity()
{
    HomMatrix m;
    m.a[0][0] = m.a[1][1] = 1;
    return m;
}

HomMatrix HomMatrix::from_code(unsigned code)
{
    if (code > 15) throw input_error("matrix code out of range 0..15");
    HomMatrix m;
    m.a[0][0] = code & 1u;
    m.a[0][1] = (code >> 1) & 1u;
    m.a[1][0] = (code >> 2) & 1u;
    m.a[1][1] = (code >> 3) & 1u;
    return m;
}

unsigned HomMatrix::code() const
{
    return static_cast<unsigned>(a[0][0]) | static_cast<unsigned>(a[0][1]) << 1
         | static_cast<unsigned>(a[1][0]) << 2
         | static_cast<unsigned>(a[1][1]) << 3;
}

bool HomMatrix::invertible() const
{
    return ((a[0][0] & a[1][1]) ^ (a[0][1] & a[1][0])) != 0;
}

HomMatrix HomMatrix::operator+(const HomMatrix& o) const
{
    HomMatrix r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.a[i][j] = a[i][j] ^ o.a[i][j];
    return r;
}

HomMatrix HomMatrix::operator*(const HomMatrix& o) const
{
    HomMatrix r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r.a[i][j] = (a[i][0] & o.a[0][j]) ^ (a[i][1] & o.a[1][j]);
    return r;
}

std::string HomMatrix::to_string() const
{
    std::ostringstream os;
    os << "[[" << int(a[0][0]) << ", " << int(a[0][1]) << "], [" << int(a[1][0])
       << ", " << int(a[1][1]) << "]]";
    return os.str();
}

void validate_galois_action(const GaloisAction& action)
{
    for (const HomMatrix& m : action.generators)
        if (!m.invertible())
            throw input_error("Galois generator " + m.to_string() +
                              " is not invertible");
}

// --- working fields ---------------------------------------------------------

bool WorkingField::contains(SquareClass c) const
{
    if (is_trivial(c)) return true;
    auto span = class_span(adjoined);
    return std::find(span.begin(), span.end(), c) != span.end();
}

std::string WorkingField::name() const
{
    std::string n = "Q_" + std::to_string(p);
    if (adjoined.empty()) return n;
    n += "(";
    for (std::size_t i = 0; i < adjoined.size(); ++i) {
        if (i) n += ", ";
        n += "sqrt(" + class_representative(adjoined[i], p) + ")";
    }
    return n + ")";
}

WorkingField base_field(std::uint64_t p) { return WorkingField{p, {}}; }

WorkingField splitting_field(const EllipticCurve& E, std::uint64_t p)
{
    TwoTorsionField tf = full_two_torsion_field(E, p);
    switch (tf.status) {
    case TwoTorsionFieldStatus::rational: return base_field(p);
    case TwoTorsionFieldStatus::unramified_quadratic:
    case TwoTorsionFieldStatus::ramified_quadratic:
        return WorkingField{p, {tf.disc_class}};
    case TwoTorsionFieldStatus::quartic: break;
    }
    throw input_error("the 2-torsion of " + curve_name(E) + " at p = " +
                      std::to_string(p) +
                      " generates a cubic extension; no tower of square roots "
                      "can rationalize it");
}

WorkingField compositum(const WorkingField& a, const WorkingField& b)
{
    if (a.p != b.p)
        throw input_error("compositum of fields over different primes");
    WorkingField f = base_field(a.p);
    for (const auto* src : {&a.adjoined, &b.adjoined})
        for (SquareClass c : *src) {
            if (is_trivial(c) || f.contains(c)) continue;
            f.adjoined.push_back(c);
        }
    return f;
}

// --- marked 2-torsion bases --------------------------------------------------

std::string TorsionX::to_string() const
{
    if (root) {
        if (root->exact) return "(" + root->exact->get_str() + ", 0)";
        return "(x = " + root->residue.get_str() + " + O(p^" +
               std::to_string(root->prec) + "), 0)";
    }
    return "(x, 0) with x^2 + " + quad_b.get_str() + "*x + " + quad_c.get_str() +
           " = 0 (conjugate pair, coefficients mod p^" + std::to_string(prec) +
           ")";
}

std::string TwoTorsionBasis::to_string() const
{
    std::string s = curve_label + ": P1 = " + P1.to_string() +
                    ", P2 = " + P2.to_string();
    if (!extensions.empty()) {
        s += " over the extension by";
        for (SquareClass c : extensions)
            s += " sqrt(" + class_representative(c, p) + ")";
    }
    return s;
}

TwoTorsionBasis two_torsion_basis(const EllipticCurve& E, std::uint64_t p,
                                  const WorkingField& field)
{
    if (field.p != p)
        throw input_error("working field belongs to a different prime");
    ReductionData rd = reduction_type(E, p);
    if (rd.cls != ReductionClass::split_multiplicative)
        throw precondition_error(
            "curve " + curve_name(E) + " has " + to_string(rd.cls) +
            " reduction at p = " + std::to_string(p) +
            "; the marked basis needs split multiplicative reduction");

    MinimalModel mm = minimal_at_p(E, p);
    std::vector<PadicRoot> roots = zp_roots(mm.curve.A, mm.curve.B, p);
    const Int node(static_cast<long>(node_residue(E, p)));
    const Int prime(static_cast<long>(p));

    TwoTorsionBasis basis;
    basis.curve_label = curve_name(E);
    basis.p = p;
    basis.minimal = mm.curve;

    // P1: the unique root whose reduction misses the node.
    std::vector<PadicRoot> rest;
    for (const PadicRoot& r : roots) {
        if (!basis.P1.root && r.residue % prime != node) {
            basis.P1.root = r;
            basis.P1.prec = r.prec;
        } else {
            rest.push_back(r);
        }
    }
    if (!basis.P1.root)
        throw error("internal: no division-cubic root away from the node");

    if (rest.size() == 2) {
        // Full 2-torsion over Q_p; zp_roots sorts by canonical residue, so
        // the first remaining root is the canonical P2.
        basis.P2.root = rest.front();
        basis.P2.prec = rest.front().prec;
    } else if (rest.empty()) {
        // The other two roots are conjugate over a quadratic extension whose
        // square class is that of the discriminant.
        SquareClass ext = square_class(invariants(mm.curve).disc, p);
        if (is_trivial(ext))
            throw error("internal: square discriminant with irrational roots");
        if (!field.contains(ext))
            throw input_error("working field " + field.name() +
                              " does not split the 2-torsion of " +
                              curve_name(E) + " (needs sqrt(" +
                              class_representative(ext, p) + "))");
        basis.extensions.push_back(ext);
        // Divide the cubic by (x - r): the cofactor is x^2 + r x + (r^2 + A).
        const int prec = basis.P1.root->prec;
        const Int m = pow_int(p, prec);
        const Int r = basis.P1.root->residue;
        basis.P2.quad_b = r;
        basis.P2.quad_c = (r * r + residue_mod(mm.curve.A, m)) % m;
        basis.P2.prec = prec;
    } else {
        throw error("internal: a cubic with two Z_p roots has a third");
    }
    // Over the working field the action on E[2] is trivial by construction.
    return basis;
}

// --- the Hom module ----------------------------------------------------------

HomModule hom_module(const GaloisAction& on_e1, const GaloisAction& on_e2)
{
    validate_galois_action(on_e1);
    validate_galois_action(on_e2);
    if (on_e1.generators.size() != on_e2.generators.size())
        throw input_error("the two actions must list one matrix per shared "
                          "Galois generator");
    HomModule hm;
    for (unsigned code = 0; code < 16; ++code) {
        HomMatrix g = HomMatrix::from_code(code);
        hm.all.push_back(g);
        bool commutes = true;
        for (std::size_t k = 0; k < on_e1.generators.size(); ++k)
            if (g * on_e1.generators[k] != on_e2.generators[k] * g) {
                commutes = false;
                break;
            }
        if (commutes) hm.equivariant.push_back(g);
    }
    return hm;
}

HomModule hom_module(const TwoTorsionBasis& b1, const TwoTorsionBasis& b2)
{
    return hom_module(b1.action, b2.action);
}

std::vector<HomMatrix> h2_subgroup(const std::vector<HomMatrix>& homs)
{
    std::vector<HomMatrix> out;
    for (const HomMatrix& g : homs)
        if (g.a[0][1] == 0 && g.a[1][1] == 0) out.push_back(g);
    return out;
}

int class_in_Q(const HomMatrix& g) { return g.a[1][0]; }

// --- the end-to-end witness --------------------------------------------------

std::string ObstructionReport::to_string() const
{
    std::ostringstream os;
    os << "order-2 obstruction report for (" << curve_name(e1) << ", "
       << curve_name(e2) << ") at p = " << p << "\n";
    os << "  reduction: " << curve_name(e1) << " " << biell::to_string(red1.cls)
       << " (v(j) = " << red1.v_j << "), " << curve_name(e2) << " "
       << biell::to_string(red2.cls) << " (v(j) = " << red2.v_j << ")\n";
    if (nonisogeny)
        os << "  non-isogeny: certified at p = " << nonisogeny->p << " (v(j) = "
           << nonisogeny->v_j1 << " vs " << nonisogeny->v_j2 << ")\n";
    else
        os << "  non-isogeny: not certified (potential multiplicative "
              "reduction data agree); conclusion is conditional\n";
    os << "  working field: " << field.name();
    if (field.is_base()) os << " (full 2-torsion already rational)";
    os << "\n";
    os << "  basis " << b1.to_string() << "\n";
    os << "  basis " << b2.to_string() << "\n";
    os << "  counts: |Hom_Gal| = " << hom_count << ", |H2| = " << h2_count
       << ", nonzero-class witnesses = " << witness_count << "\n";
    if (witness)
        os << "  witness: " << witness->to_string()
           << " (sends P1 to the P2' line, kills P2)\n";
    if (!conclusion)
        os << "  conclusion: no witness; nothing certified\n";
    else if (conditional)
        os << "  conclusion: order-2 obstruction class certified under the "
              "unverified non-isogeny hypothesis\n";
    else
        os << "  conclusion: nontrivial order-2 obstruction class certified\n";
    return os.str();
}

ObstructionReport obstruction_witness(const EllipticCurve& E1,
                                      const EllipticCurve& E2, std::uint64_t p)
{
    if (p < 5)
        throw input_error("the local pipeline needs p >= 5 (short Weierstrass "
                          "reduction theory)");
    ObstructionReport rep;
    rep.e1 = E1;
    rep.e2 = E2;
    rep.p = p;
    rep.red1 = reduction_type(E1, p);
    rep.red2 = reduction_type(E2, p);
    for (const auto& [E, rd] : {std::pair<const EllipticCurve&, const ReductionData&>(E1, rep.red1),
                                 std::pair<const EllipticCurve&, const ReductionData&>(E2, rep.red2)}) {
        if (rd.cls == ReductionClass::split_multiplicative) continue;
        std::string msg = "curve " + curve_name(E) + " has " +
                          biell::to_string(rd.cls) + " reduction at p = " +
                          std::to_string(p);
        if (rd.cls == ReductionClass::good)
            msg += "; with good reduction its order-2 transcendental classes "
                   "are 2-divisible, so no order-2 witness can exist";
        else
            msg += "; split multiplicative reduction is required";
        throw precondition_error(msg);
    }

    rep.nonisogeny = geometric_nonisogeny_certificate(E1, E2);
    rep.conditional = !rep.nonisogeny.has_value();

    rep.field = compositum(splitting_field(E1, p), splitting_field(E2, p));
    rep.b1 = two_torsion_basis(E1, p, rep.field);
    rep.b2 = two_torsion_basis(E2, p, rep.field);

    HomModule hm = hom_module(rep.b1, rep.b2);
    rep.hom_count = hm.equivariant.size();
    std::vector<HomMatrix> h2 = h2_subgroup(hm.equivariant);
    rep.h2_count = h2.size();
    for (const HomMatrix& g : h2)
        if (class_in_Q(g) != 0) {
            if (!rep.witness) rep.witness = g;
            ++rep.witness_count;
        }
    rep.conclusion = rep.witness_count > 0;
    return rep;
}

} // namespace biell
