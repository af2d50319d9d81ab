#include "biell/localdata.hpp"

#include <algorithm>
#include <cstdlib>

namespace biell {

namespace {

long floor_div(long a, long b) // b > 0
{
    long q = a / b;
    if (a % b != 0 && a < 0) --q;
    return q;
}

Int pow_int(const Int& base, unsigned long e)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Rat scale_by_p_power(const Rat& x, std::uint64_t p, long e) // x * p^e
{
    if (e == 0) return x;
    Int pw = pow_int(Int(p), static_cast<unsigned long>(e > 0 ? e : -e));
    return e > 0 ? Rat(x * Rat(pw)) : Rat(x / Rat(pw));
}

Int mod_big(const Int& a, const Int& m)
{
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

Int rat_mod_big(const Rat& x, const Int& m) // denominator must be a unit mod m
{
    Int num(x.get_num()), den(x.get_den()), inv;
    if (!mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()))
        throw precondition_error("denominator not invertible modulo p^k");
    return mod_big(num * inv, m);
}

void require_local_prime(std::uint64_t p)
{
    if (!is_prime_u64(p) || p < 5)
        throw input_error("local reduction theory here needs a prime p >= 5");
}

} // namespace

MinimalModel minimal_at_p(const EllipticCurve& E, std::uint64_t p)
{
    require_local_prime(p);
    CurveInvariants inv = invariants(E);
    Valuation vc4 = padic_valuation(inv.c4, p);
    long v_disc = padic_valuation(inv.disc, p).value(); // disc != 0

    // Largest k with v(c4) >= 4k and v(disc) >= 12k; v(c6) >= 6k follows
    // from c6^2 = c4^3 - 1728 disc, so the scaled equation stays p-integral.
    long k = floor_div(v_disc, 12);
    if (!vc4.is_infinite())
        k = std::min(k, floor_div(vc4.value(), 4));

    MinimalModel mm;
    mm.scale_exponent = k;
    mm.curve = make_curve(scale_by_p_power(E.A, p, -4 * k),
                          scale_by_p_power(E.B, p, -6 * k), E.label);
    return mm;
}

std::string to_string(ReductionClass c)
{
    switch (c) {
    case ReductionClass::good: return "good";
    case ReductionClass::split_multiplicative: return "split multiplicative";
    case ReductionClass::nonsplit_multiplicative: return "nonsplit multiplicative";
    case ReductionClass::additive: return "additive";
    }
    throw error("internal: unknown reduction class");
}

ReductionData reduction_type(const EllipticCurve& E, std::uint64_t p)
{
    MinimalModel mm = minimal_at_p(E, p);
    CurveInvariants inv = invariants(mm.curve);

    ReductionData rd;
    rd.p = p;
    rd.scale_exponent = mm.scale_exponent;
    rd.v_disc_min = padic_valuation(inv.disc, p).value();
    rd.v_c4_min = padic_valuation(inv.c4, p);
    rd.v_j = padic_valuation(inv.j, p); // j is model-independent

    if (rd.v_disc_min >= 12 && Valuation::of(4) <= rd.v_c4_min)
        throw error("internal: scaled model is not minimal");

    if (rd.v_disc_min == 0) {
        rd.cls = ReductionClass::good;
    } else if (rd.v_c4_min == Valuation::of(0)) {
        // node with tangent slopes in F_p(sqrt(-c6)); v(c6) = 0 here
        Int mc6 = Int(reduce_mod(Rat(-inv.c6), p));
        rd.cls = is_square_mod(mc6, p) ? ReductionClass::split_multiplicative
                                       : ReductionClass::nonsplit_multiplicative;
    } else {
        rd.cls = ReductionClass::additive;
    }
    return rd;
}

bool potentially_multiplicative(const EllipticCurve& E, std::uint64_t p)
{
    if (!is_prime_u64(p))
        throw input_error("potentially_multiplicative: p must be prime");
    return padic_valuation(invariants(E).j, p) < Valuation::of(0);
}

namespace {

// Prime divisors of |n|, by trial division.  The scan is capped; a huge
// leftover cofactor that is itself prime is still accepted.
std::vector<std::uint64_t> prime_divisors(Int n)
{
    n = abs(n);
    std::vector<std::uint64_t> ps;
    const unsigned long cap = 1000000;
    for (unsigned long q = 2; Int(q) * Int(q) <= n; ++q) {
        if (q > cap)
            throw resource_error("prime divisor scan: cofactor too large to factor");
        if (mpz_divisible_ui_p(n.get_mpz_t(), q)) {
            ps.push_back(q);
            while (mpz_divisible_ui_p(n.get_mpz_t(), q))
                n /= q;
        }
    }
    if (n > 1) {
        if (!n.fits_ulong_p() || !is_prime_u64(n.get_ui()))
            throw resource_error("prime divisor scan: cofactor too large to certify");
        ps.push_back(n.get_ui());
    }
    return ps;
}

} // namespace

std::optional<NonIsogenyCertificate>
geometric_nonisogeny_certificate(const EllipticCurve& E1, const EllipticCurve& E2)
{
    Rat j1 = invariants(E1).j, j2 = invariants(E2).j;

    std::vector<std::uint64_t> candidates;
    for (const Rat* j : {&j1, &j2})
        for (std::uint64_t q : prime_divisors(Int(j->get_den())))
            candidates.push_back(q);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()),
                     candidates.end());

    for (std::uint64_t q : candidates) {
        Valuation v1 = padic_valuation(j1, q), v2 = padic_valuation(j2, q);
        bool m1 = v1 < Valuation::of(0), m2 = v2 < Valuation::of(0);
        if (m1 != m2)
            return NonIsogenyCertificate{q, v1, v2};
    }
    return std::nullopt; // same potentially-multiplicative primes: no verdict
}

TateData tate_data(const EllipticCurve& E, std::uint64_t p)
{
    ReductionData rd = reduction_type(E, p);
    if (rd.cls != ReductionClass::split_multiplicative)
        throw precondition_error("Tate parameter needs split multiplicative "
                                 "reduction; at " + std::to_string(p) +
                                 " the reduction is " + to_string(rd.cls));
    MinimalModel mm = minimal_at_p(E, p);

    TateData td;
    td.p = p;
    td.v_q = rd.v_disc_min;
    if (rd.v_j.value() != -td.v_q)
        throw error("internal: v(q) != -v(j) under multiplicative reduction");
    td.q_class = square_class(invariants(mm.curve).disc, p);
    return td;
}

// --- p-adic cubic roots ---------------------------------------------------

namespace {

struct Cubic {
    Int c3, c2, c1, c0;
};

Int cubic_eval(const Cubic& f, const Int& x)
{
    Int r = ((f.c3 * x + f.c2) * x + f.c1) * x + f.c0;
    return r;
}

Int cubic_deriv(const Cubic& f, const Int& x)
{
    Int r = (Int(3) * f.c3 * x + Int(2) * f.c2) * x + f.c1;
    return r;
}

// g(t) = f(r + p t); all four coefficients gain p-valuation when r is a
// repeated root of f mod p.
Cubic shifted(const Cubic& f, const Int& r, const Int& p)
{
    Cubic g;
    g.c3 = f.c3 * p * p * p;
    g.c2 = (Int(3) * f.c3 * r + f.c2) * p * p;
    g.c1 = (Int(3) * f.c3 * r * r + Int(2) * f.c2 * r + f.c1) * p;
    g.c0 = cubic_eval(f, r);
    return g;
}

void strip_content(Cubic& f, const Int& p)
{
    while (f.c3 % p == 0 && f.c2 % p == 0 && f.c1 % p == 0 && f.c0 % p == 0) {
        f.c3 /= p;
        f.c2 /= p;
        f.c1 /= p;
        f.c0 /= p;
    }
}

Int newton_lift(const Cubic& f, Int x, const Int& M)
{
    // x is a simple root mod p, so f'(x) stays invertible mod every p-power.
    for (int it = 0; it < 200; ++it) {
        Int fx = mod_big(cubic_eval(f, x), M);
        if (fx == 0) return mod_big(x, M);
        Int d = mod_big(cubic_deriv(f, x), M), inv;
        if (!mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), M.get_mpz_t()))
            throw error("internal: Newton step lost invertibility");
        x = mod_big(x - fx * inv, M);
    }
    throw error("internal: Newton iteration did not converge");
}

std::vector<Int> roots_rec(Cubic f, const Int& p, int prec)
{
    strip_content(f, p);
    if (prec <= 0)
        throw resource_error("p-adic root search: residue roots did not "
                             "separate within the precision budget");
    Int M = pow_int(p, static_cast<unsigned long>(prec));
    std::vector<Int> out;
    for (unsigned long r0 = 0, pl = p.get_ui(); r0 < pl; ++r0) {
        Int r(static_cast<unsigned long>(r0));
        if (mod_big(cubic_eval(f, r), p) != 0) continue;
        if (mod_big(cubic_deriv(f, r), p) != 0) {
            out.push_back(newton_lift(f, r, M));
        } else {
            for (const Int& t : roots_rec(shifted(f, r, p), p, prec - 1))
                out.push_back(mod_big(r + p * t, M));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::vector<PadicRoot> zp_roots(const Rat& A, const Rat& B, std::uint64_t p, int prec)
{
    if (!is_prime_u64(p))
        throw input_error("zp_roots: p must be prime");
    if (prec < 1)
        throw input_error("zp_roots: precision must be at least 1");
    if (static_cast<std::int64_t>(p) > enumeration_bound())
        throw resource_error("zp_roots: residue enumeration over F_" +
                             std::to_string(p) + " exceeds the bound (raise " +
                             std::string(kEnumBoundEnv) + ")");
    if (Rat(-4) * A * A * A - Rat(27) * B * B == 0)
        throw input_error("zp_roots: the cubic has a repeated root");
    if (padic_valuation(A, p) < Valuation::of(0) ||
        padic_valuation(B, p) < Valuation::of(0))
        throw input_error("zp_roots: coefficients must be p-integral");

    // Clear the (p-unit) denominators; the root set is unchanged.
    Int d = lcm(Int(A.get_den()), Int(B.get_den()));
    Rat Ad = A * Rat(d), Bd = B * Rat(d); // both integral by choice of d
    Cubic f{d, Int(0), Int(Ad.get_num()), Int(Bd.get_num())};

    std::vector<Int> rs = roots_rec(f, Int(p), prec);

    std::vector<Rat> qroots;
    try {
        qroots = rational_cubic_roots(A, B);
    } catch (const resource_error&) {
        // exact tagging is best-effort; the residues above stand on their own
    }

    Int M = pow_int(Int(p), static_cast<unsigned long>(prec));
    std::vector<PadicRoot> out;
    for (const Int& r : rs) {
        PadicRoot pr;
        pr.residue = r;
        pr.prec = prec;
        for (const Rat& q : qroots)
            if (rat_mod_big(q, M) == r) {
                pr.exact = q;
                break;
            }
        out.push_back(std::move(pr));
    }
    return out;
}

// --- the 2-torsion field --------------------------------------------------

std::string to_string(TwoTorsionFieldStatus s)
{
    switch (s) {
    case TwoTorsionFieldStatus::rational: return "rational";
    case TwoTorsionFieldStatus::unramified_quadratic: return "unramified-quadratic";
    case TwoTorsionFieldStatus::ramified_quadratic: return "ramified-quadratic";
    case TwoTorsionFieldStatus::quartic: return "quartic";
    }
    throw error("internal: unknown 2-torsion field status");
}

TwoTorsionField full_two_torsion_field(const EllipticCurve& E, std::uint64_t p,
                                       int prec)
{
    require_local_prime(p);
    MinimalModel mm = minimal_at_p(E, p);
    const Rat& A = mm.curve.A;
    const Rat& B = mm.curve.B;

    TwoTorsionField out;
    out.roots = zp_roots(A, B, p, prec);
    Rat disc_cubic = Rat(-4) * A * A * A - Rat(27) * B * B; // = disc(E)/16
    out.disc_class = square_class(disc_cubic, p);

    switch (out.roots.size()) {
    case 3:
        // disc is the square of the root-difference product, so its class
        // must be trivial here
        if (!is_trivial(out.disc_class))
            throw error("internal: three rational roots with nonsquare disc");
        out.status = TwoTorsionFieldStatus::rational;
        out.description = "all three 2-division roots lie in Q_" + std::to_string(p);
        break;
    case 1: {
        if (is_trivial(out.disc_class))
            throw error("internal: square disc forces 0 or 3 rational roots");
        bool unram = is_unramified(out.disc_class);
        out.status = unram ? TwoTorsionFieldStatus::unramified_quadratic
                           : TwoTorsionFieldStatus::ramified_quadratic;
        out.description = std::string("splitting field is a ") +
                          (unram ? "unramified" : "ramified") +
                          " quadratic extension of Q_" + std::to_string(p);
        break;
    }
    case 0: {
        out.status = TwoTorsionFieldStatus::quartic;
        int deg = is_trivial(out.disc_class) ? 3 : 6;
        out.description = "division cubic is irreducible over Q_" +
                          std::to_string(p) + "; splitting field has degree " +
                          std::to_string(deg);
        break;
    }
    default:
        throw error("internal: a cubic cannot have exactly two roots in a field");
    }
    return out;
}

// --- node and mu_2 --------------------------------------------------------

std::uint64_t node_residue(const EllipticCurve& E, std::uint64_t p)
{
    ReductionData rd = reduction_type(E, p);
    if (rd.cls != ReductionClass::split_multiplicative &&
        rd.cls != ReductionClass::nonsplit_multiplicative)
        throw precondition_error("node requires multiplicative reduction");
    MinimalModel mm = minimal_at_p(E, p);
    // repeated root of x^3 + Ax + B mod p
    std::uint64_t a = reduce_mod(mm.curve.A, p), b = reduce_mod(mm.curve.B, p);
    for (std::uint64_t x = 0; x < p; ++x) {
        std::uint64_t fx = (mulmod_u64(mulmod_u64(x, x, p), x, p) +
                            mulmod_u64(a, x, p) + b) % p;
        std::uint64_t dfx = (3 * mulmod_u64(x, x, p) + a) % p;
        if (fx == 0 && dfx == 0) return x;
    }
    throw error("internal: multiplicative reduction without a node");
}

PadicRoot mu2_root(const EllipticCurve& E, std::uint64_t p, int prec)
{
    ReductionData rd = reduction_type(E, p);
    if (rd.cls != ReductionClass::split_multiplicative)
        throw precondition_error("mu2_root needs split multiplicative reduction; "
                                 "at " + std::to_string(p) + " the reduction is " +
                                 to_string(rd.cls));
    MinimalModel mm = minimal_at_p(E, p);
    Int node(node_residue(E, p));
    for (PadicRoot& pr : zp_roots(mm.curve.A, mm.curve.B, p, prec))
        if (mod_big(pr.residue, Int(p)) != node)
            return pr; // the simple residue root: nonsingular reduction
    throw error("internal: no 2-division root away from the node");
}

RatPoint mu2_point(const EllipticCurve& E, std::uint64_t p)
{
    PadicRoot r = mu2_root(E, p, 8);
    if (!r.exact)
        throw precondition_error("the 2-torsion point on the identity component "
                                 "has irrational coordinates; mu2_root gives its "
                                 "residue");
    long k = minimal_at_p(E, p).scale_exponent;
    return RatPoint::affine(scale_by_p_power(*r.exact, p, 2 * k), Rat(0));
}

} // namespace biell
