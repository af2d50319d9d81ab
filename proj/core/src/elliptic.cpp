#include "biell/elliptic.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "biell/config.hpp"

namespace biell {

namespace {

std::int64_t effective_bound(std::int64_t override_value)
{
    return override_value > 0 ? override_value : enumeration_bound();
}

Rat disc_of(const Rat& A, const Rat& B)
{
    return Rat(-16) * (Rat(4) * A * A * A + Rat(27) * B * B);
}

Int rat_to_int(const Rat& q)
{
    Rat c = q;
    c.canonicalize();
    if (c.get_den() != 1)
        throw error("internal: expected integral rational");
    return Int(c.get_num());
}

} // namespace

EllipticCurve make_curve(const Rat& A, const Rat& B, const std::string& label)
{
    if (disc_of(A, B) == 0)
        throw input_error("singular curve equation" +
                          (label.empty() ? std::string() : " for '" + label + "'"));
    return EllipticCurve{A, B, label};
}

EllipticCurve curve_from_long_form(const std::vector<Rat>& a, const std::string& label)
{
    if (a.size() != 5)
        throw input_error("long Weierstrass form needs [a1,a2,a3,a4,a6]");
    const Rat &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a6 = a[4];
    Rat b2 = a1 * a1 + Rat(4) * a2;
    Rat b4 = Rat(2) * a4 + a1 * a3;
    Rat b6 = a3 * a3 + Rat(4) * a6;
    Rat c4 = b2 * b2 - Rat(24) * b4;
    Rat c6 = -b2 * b2 * b2 + Rat(36) * b2 * b4 - Rat(216) * b6;
    // Same c4 and c6 as the input model, hence isomorphic over Q.
    Rat A = -c4 / Rat(48);
    Rat B = -c6 / Rat(864);
    return make_curve(A, B, label);
}

CurveInvariants invariants(const EllipticCurve& E)
{
    CurveInvariants inv;
    inv.c4 = Rat(-48) * E.A;
    inv.c6 = Rat(-864) * E.B;
    inv.disc = disc_of(E.A, E.B);
    inv.j = inv.c4 * inv.c4 * inv.c4 / inv.disc;
    return inv;
}

std::vector<Rat> rational_cubic_roots(const Rat& A, const Rat& B)
{
    // Scale x = X/d so the cubic becomes monic integral: X^3 + A d^2 X + B d^3.
    Int d = lcm(Int(A.get_den()), Int(B.get_den()));
    Int Ai = rat_to_int(A * Rat(d) * Rat(d));
    Int Bi = rat_to_int(B * Rat(d) * Rat(d) * Rat(d));

    // note the explicit return type: without it the lambda would hand back a
    // gmpxx expression template referencing dead temporaries
    auto eval = [&](const Int& X) -> Int { return X * X * X + Ai * X + Bi; };
    std::set<Int> roots;

    if (Bi == 0) {
        roots.insert(0);
        // X^2 = -Ai
        if (Ai <= 0) {
            Int m = -Ai;
            if (mpz_perfect_square_p(m.get_mpz_t())) {
                Int r = sqrt(m);
                roots.insert(r);
                roots.insert(-r);
            }
        }
    } else {
        // Any rational root of the monic integral cubic is an integer
        // dividing the constant term.
        Int absB = abs(Bi);
        Int i = 1;
        const Int cap = 1000000; // trial-divisor ceiling; desk-scale inputs stay tiny
        while (i * i <= absB) {
            if (i > cap)
                throw resource_error("rational root scan: constant term too large "
                                     "to enumerate divisors");
            if (mpz_divisible_p(absB.get_mpz_t(), i.get_mpz_t())) {
                Int j = absB / i;
                for (Int cand : {Int(i), Int(-i), Int(j), Int(-j)})
                    if (eval(cand) == 0)
                        roots.insert(cand);
            }
            ++i;
        }
    }

    std::vector<Rat> out;
    for (const Int& X : roots)
        out.push_back(make_rat(X, d));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<RatPoint> two_torsion(const EllipticCurve& E)
{
    std::vector<RatPoint> pts;
    pts.push_back(RatPoint::at_infinity());
    for (const Rat& r : rational_cubic_roots(E.A, E.B))
        pts.push_back(RatPoint::affine(r, Rat(0)));
    return pts; // roots come back sorted by x; infinity leads
}

std::optional<Int> torsion_point_order(const EllipticCurve& E, const RatPoint& P,
                                       const Int& bound)
{
    if (!on_curve(E.eq(), P))
        throw input_error("torsion_point_order: point not on curve");
    if (bound < 1)
        throw input_error("torsion_point_order: bound must be positive");
    RatPoint acc = P;
    Int n = 1;
    while (n <= bound) {
        if (acc.infinity)
            return n;
        acc = ec_add(E.eq(), acc, P);
        ++n;
    }
    return std::nullopt;
}

FpCurve make_fp_curve(std::uint64_t A, std::uint64_t B, std::uint64_t p)
{
    if (!is_prime_u64(p) || p < 5)
        throw input_error("curve arithmetic needs a prime p >= 5");
    FpElem a(A, p), b(B, p);
    // disc = -16(4A^3 + 27B^2) mod p
    FpElem disc = FpElem(4, p) * a * a * a + FpElem(27, p) * b * b;
    if (is_zero(disc))
        throw precondition_error("singular reduction: discriminant vanishes mod " +
                                 std::to_string(p));
    return FpCurve{CurveEq<FpElem>{a, b}, p};
}

FpCurve reduce_curve(const EllipticCurve& E, std::uint64_t p)
{
    if (!is_prime_u64(p) || p < 5)
        throw input_error("curve arithmetic needs a prime p >= 5");
    if (reduce_mod(Int(E.A.get_den()), p) == 0 ||
        reduce_mod(Int(E.B.get_den()), p) == 0)
        throw input_error("coefficient denominator divisible by " + std::to_string(p));
    return make_fp_curve(reduce_mod(E.A, p), reduce_mod(E.B, p), p);
}

namespace {

std::uint64_t cubic_eval_mod(const FpCurve& E, std::uint64_t x)
{
    std::uint64_t p = E.p;
    std::uint64_t v = mulmod_u64(mulmod_u64(x, x, p), x, p);
    v = (v + mulmod_u64(E.eq.A.v, x, p)) % p;
    return (v + E.eq.B.v) % p;
}

void check_enumerable(const FpCurve& E, std::int64_t bound)
{
    if (static_cast<std::int64_t>(E.p) > bound)
        throw resource_error("enumeration over F_" + std::to_string(E.p) +
                             " exceeds bound " + std::to_string(bound) +
                             " (raise " + std::string(kEnumBoundEnv) + ")");
}

} // namespace

Int count_points(const FpCurve& E, std::int64_t bound_override)
{
    check_enumerable(E, effective_bound(bound_override));
    const std::uint64_t p = E.p;
    Int n = 1; // infinity
    for (std::uint64_t x = 0; x < p; ++x) {
        std::uint64_t f = cubic_eval_mod(E, x);
        if (f == 0)
            n += 1;
        else if (powmod_u64(f, (p - 1) / 2, p) == 1)
            n += 2;
    }
    return n;
}

std::vector<FpPoint> enumerate_points(const FpCurve& E, std::int64_t bound_override)
{
    check_enumerable(E, effective_bound(bound_override));
    const std::uint64_t p = E.p;
    // bucket y^2 -> y list, then read points off per x
    std::vector<std::vector<std::uint32_t>> bucket(p);
    for (std::uint64_t y = 0; y < p; ++y)
        bucket[mulmod_u64(y, y, p)].push_back(static_cast<std::uint32_t>(y));

    std::vector<FpPoint> pts;
    pts.push_back(FpPoint::at_infinity());
    for (std::uint64_t x = 0; x < p; ++x)
        for (std::uint32_t y : bucket[cubic_eval_mod(E, x)])
            pts.push_back(FpPoint::affine(FpElem(x, p), FpElem(y, p)));
    return pts;
}

std::vector<FpPoint> two_torsion(const FpCurve& E, std::int64_t bound_override)
{
    check_enumerable(E, effective_bound(bound_override));
    std::vector<FpPoint> pts;
    pts.push_back(FpPoint::at_infinity());
    for (std::uint64_t x = 0; x < E.p; ++x)
        if (cubic_eval_mod(E, x) == 0)
            pts.push_back(FpPoint::affine(FpElem(x, E.p), FpElem(0, E.p)));
    return pts;
}

namespace {

std::vector<std::pair<Int, int>> factorize(Int n)
{
    std::vector<std::pair<Int, int>> fs;
    for (Int q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            int e = 0;
            while (n % q == 0) { n /= q; ++e; }
            fs.emplace_back(q, e);
        }
    }
    if (n > 1) fs.emplace_back(n, 1);
    return fs;
}

Int point_order_given(const FpCurve& E, const FpPoint& P, const Int& group_order,
                      const std::vector<std::pair<Int, int>>& factors)
{
    Int o = group_order;
    for (const auto& [q, e] : factors) {
        (void)e;
        while (o % q == 0 && ec_mul(E.eq, o / q, P).infinity)
            o /= q;
    }
    return o;
}

struct PointKey {
    std::uint64_t tag, x, y;
    bool operator<(const PointKey& o) const
    {
        return std::tie(tag, x, y) < std::tie(o.tag, o.x, o.y);
    }
};

PointKey key_of(const FpPoint& P)
{
    if (P.infinity) return {0, 0, 0};
    return {1, P.x.v, P.y.v};
}

} // namespace

Int fp_point_order(const FpCurve& E, const FpPoint& P, std::int64_t bound_override)
{
    if (!on_curve(E.eq, P))
        throw input_error("fp_point_order: point not on curve");
    Int N = count_points(E, bound_override);
    return point_order_given(E, P, N, factorize(N));
}

GroupStructure group_structure(const FpCurve& E, std::int64_t bound_override)
{
    std::vector<FpPoint> pts = enumerate_points(E, bound_override);
    Int N(static_cast<unsigned long>(pts.size()));

    GroupStructure gs;
    gs.order = N;
    if (N == 1)
        return gs; // trivial group

    auto factors = factorize(N);

    // exponent generator: element of maximal order
    Int d2 = 1;
    FpPoint gen2 = FpPoint::at_infinity();
    for (const FpPoint& P : pts) {
        Int o = point_order_given(E, P, N, factors);
        if (o > d2) {
            d2 = o;
            gen2 = P;
        }
        if (d2 == N) break;
    }

    Int d1 = N / d2;
    if (d1 == 1) {
        gs.invariant_factors = {d2};
        gs.generators = {gen2};
        return gs;
    }

    // complement search: an order-d1 point meeting <gen2> only at O
    std::set<PointKey> cyclic;
    {
        FpPoint acc = FpPoint::at_infinity();
        for (Int i = 0; i < d2; ++i) {
            cyclic.insert(key_of(acc));
            acc = ec_add(E.eq, acc, gen2);
        }
    }
    for (const FpPoint& Q : pts) {
        if (point_order_given(E, Q, N, factors) != d1)
            continue;
        bool meets = false;
        FpPoint acc = Q;
        for (Int t = 1; t < d1; ++t) {
            if (cyclic.count(key_of(acc))) { meets = true; break; }
            acc = ec_add(E.eq, acc, Q);
        }
        if (!meets) {
            gs.invariant_factors = {d1, d2};
            gs.generators = {Q, gen2};
            // structural sanity: d1 | d2 and d1 | p-1 (Weil pairing)
            if (d2 % d1 != 0 || Int(E.p - 1) % d1 != 0)
                throw error("internal: invalid group decomposition");
            return gs;
        }
    }
    throw error("internal: complement search failed");
}

std::string point_to_string(const RatPoint& P)
{
    if (P.infinity) return "O";
    return "(" + P.x.get_str() + ", " + P.y.get_str() + ")";
}

std::string point_to_string(const FpPoint& P)
{
    if (P.infinity) return "O";
    return "(" + std::to_string(P.x.v) + ", " + std::to_string(P.y.v) + ")";
}

} // namespace biell
