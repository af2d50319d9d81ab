#include "biell/surfaces.hpp"

namespace biell {

const std::vector<ClassificationRow>& classification_table()
{
    auto make = [](int type, std::vector<int> group, long ord_k,
                   std::vector<int> h2) {
        ClassificationRow r;
        r.type = type;
        r.group = std::move(group);
        r.group_order = 1;
        for (int d : r.group) r.group_order *= d;
        r.canonical_order = ord_k;
        r.h2_torsion = std::move(h2);
        r.lambda = r.group_order / ord_k;
        r.epsilon = ord_k % 2 == 0 ? 2 : 3;
        r.exponent_bound = (r.group_order % 2 == 0 ? 4 : 9) * r.group_order;
        return r;
    };
    static const std::vector<ClassificationRow> table = {
        make(1, {2}, 2, {2, 2}),
        make(2, {2, 2}, 2, {2}),
        make(3, {4}, 4, {2}),
        make(4, {2, 4}, 4, {}),
        make(5, {3}, 3, {3}),
        make(6, {3, 3}, 3, {}),
        make(7, {6}, 6, {}),
    };
    return table;
}

const ClassificationRow& table_row(int type)
{
    if (type < 1 || type > 7)
        throw input_error("surface type must be 1..7, got " + std::to_string(type));
    return classification_table()[static_cast<std::size_t>(type - 1)];
}

std::optional<CoverStep> intermediate_cover(int base_type)
{
    table_row(base_type); // range check
    switch (base_type) {
    case 2: return CoverStep{2, 1, 2};
    case 3: return CoverStep{3, 1, 2};
    case 4: return CoverStep{4, 3, 2};
    case 6: return CoverStep{6, 5, 3};
    case 7: return CoverStep{7, 1, 3};
    default: return std::nullopt; // 1 and 5: G is already of prime order
    }
}

std::uint64_t unity_root(std::uint64_t p, unsigned n)
{
    if (!is_prime_u64(p) || n == 0)
        throw input_error("unity_root: need a prime p and n >= 1");
    if ((p - 1) % n != 0)
        throw input_error("unity_root: F_" + std::to_string(p) +
                          " has no element of order " + std::to_string(n));
    for (std::uint64_t g = 1; g < p; ++g) {
        if (powmod_u64(g, n, p) != 1) continue;
        bool exact = true;
        for (unsigned d = 1; d < n; ++d)
            if (n % d == 0 && powmod_u64(g, d, p) == 1) {
                exact = false;
                break;
            }
        if (exact) return g;
    }
    throw error("internal: no root of unity found in a field that has one");
}

FpPoint twist_point(unsigned n, const FpCurve& E, const FpPoint& Q)
{
    if (!on_curve(E.eq, Q))
        throw input_error("twist_point: point not on curve");
    if (Q.infinity) return Q;
    switch (n) {
    case 2:
        return ec_neg(Q);
    case 3: {
        if (Q.x.p != E.p) throw input_error("twist_point: field mismatch");
        if (!is_zero(E.eq.A))
            throw input_error("order-3 twist needs a curve y^2 = x^3 + B");
        FpElem zeta(unity_root(E.p, 3), E.p);
        return FpPoint::affine(zeta * Q.x, Q.y);
    }
    case 4: {
        if (!is_zero(E.eq.B))
            throw input_error("order-4 twist needs a curve y^2 = x^3 + Ax");
        FpElem i(unity_root(E.p, 4), E.p);
        return FpPoint::affine(-Q.x, i * Q.y);
    }
    default:
        throw input_error("twist orders supported here: 2, 3, 4");
    }
}

namespace {

// exact order of P among the divisors of n (n in {2,3,4}); 0 means
// "not of order dividing n"
unsigned small_exact_order(const FpCurve& E, const FpPoint& P, unsigned n)
{
    for (unsigned d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        if (ec_mul(E.eq, Int(d), P).infinity) return d;
    }
    return 0;
}

} // namespace

ActionCheck validate_action(const SurfaceActionSpec& s)
{
    table_row(s.type); // range check

    ActionCheck out;
    auto fail = [&out](std::string msg) { out.violations.push_back(std::move(msg)); };

    unsigned n = 0;
    switch (s.type) {
    case 1: n = 2; break;
    case 3: n = 4; break;
    case 5: n = 3; break;
    default:
        fail("type " + std::to_string(s.type) +
             " needs two independent translations and is not modeled pointwise");
        return out;
    }

    if (s.e1.p != s.e2.p) {
        fail("the two curves live over different prime fields");
        return out;
    }
    const std::uint64_t p = s.e1.p;

    if ((p - 1) % n != 0)
        fail("F_" + std::to_string(p) + " lacks the order-" + std::to_string(n) +
             " roots of unity the twist needs");
    if (n == 3 && !is_zero(s.e2.eq.A))
        fail("order-3 twist needs the second curve in the form y^2 = x^3 + B");
    if (n == 4 && !is_zero(s.e2.eq.B))
        fail("order-4 twist needs the second curve in the form y^2 = x^3 + Ax");

    if (!on_curve(s.e1.eq, s.p0)) {
        fail("translation point is not on the first curve");
    } else {
        unsigned o = small_exact_order(s.e1, s.p0, n);
        // exact order n makes every nontrivial (k P0, twist^k) fixed-point
        // free on the product
        if (o != n)
            fail("translation point must have exact order " + std::to_string(n) +
                 (o == 0 ? " (its order does not divide that)"
                         : " (found order " + std::to_string(o) + ")"));
    }

    out.ok = out.violations.empty();
    return out;
}

} // namespace biell
