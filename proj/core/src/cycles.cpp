#include "biell/cycles.hpp"

#include <algorithm>
#include <sstream>

namespace biell {

std::string coords_to_string(const Coords& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].get_str();
    }
    return s + ")";
}

// --- MarkedGroup ------------------------------------------------------------

Coords MarkedGroup::normalize(Coords v) const
{
    if (v.size() != dim())
        throw input_error("coordinate vector has wrong length");
    for (std::size_t i = 0; i < torsion.size(); ++i) {
        Int& c = v[static_cast<std::size_t>(free_rank) + i];
        c %= torsion[i];
        if (c < 0) c += torsion[i];
    }
    return v;
}

Coords MarkedGroup::add(const Coords& a, const Coords& b) const
{
    if (a.size() != dim() || b.size() != dim())
        throw input_error("coordinate vector has wrong length");
    Coords r(dim());
    for (std::size_t i = 0; i < dim(); ++i) r[i] = a[i] + b[i];
    return normalize(std::move(r));
}

Coords MarkedGroup::sub(const Coords& a, const Coords& b) const
{
    return add(a, smul(Int(-1), b));
}

Coords MarkedGroup::smul(const Int& k, const Coords& a) const
{
    if (a.size() != dim())
        throw input_error("coordinate vector has wrong length");
    Coords r(dim());
    for (std::size_t i = 0; i < dim(); ++i) r[i] = k * a[i];
    return normalize(std::move(r));
}

bool MarkedGroup::is_zero(const Coords& a) const
{
    Coords n = normalize(a);
    return std::all_of(n.begin(), n.end(), [](const Int& c) { return c == 0; });
}

std::optional<Int> MarkedGroup::order_of(const Coords& a) const
{
    Coords n = normalize(a);
    for (long i = 0; i < free_rank; ++i)
        if (n[static_cast<std::size_t>(i)] != 0) return std::nullopt;
    Int o = 1;
    for (std::size_t i = 0; i < torsion.size(); ++i) {
        const Int& c = n[static_cast<std::size_t>(free_rank) + i];
        Int piece = torsion[i] / gcd(torsion[i], c); // order of c in Z/d
        o = lcm(o, piece);
    }
    return o;
}

Coords MarkedGroup::apply_alpha(const Coords& a) const
{
    if (!alpha)
        throw input_error("group carries no automorphism");
    Coords n = normalize(a);
    Coords r(dim(), Int(0));
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j)
            r[i] += alpha->at(i, j) * n[j];
    return normalize(std::move(r));
}

namespace {

Coords basis_vector(const MarkedGroup& g, std::size_t j)
{
    Coords e = g.zero();
    e[j] = 1;
    return e;
}

} // namespace

void validate_marked_group(const MarkedGroup& g)
{
    for (const Int& d : g.torsion)
        if (d < 2)
            throw input_error("torsion moduli must be >= 2");

    if (g.p0) {
        if (g.p0->size() != g.dim())
            throw input_error("marked element has wrong coordinate length");
        auto o = g.order_of(*g.p0);
        if (!o || *o != g.p0_order)
            throw input_error("marked element does not have its declared order " +
                              g.p0_order.get_str());
    }

    if (g.alpha) {
        if (g.alpha->rows() != g.dim() || g.alpha->cols() != g.dim())
            throw input_error("automorphism matrix has wrong shape");
        if (g.alpha_order < 1)
            throw input_error("automorphism needs a declared order >= 1");
        // well-defined: the image of a torsion generator dies under its modulus
        for (std::size_t j = 0; j < g.torsion.size(); ++j) {
            std::size_t col = static_cast<std::size_t>(g.free_rank) + j;
            Coords img(g.dim());
            for (std::size_t i = 0; i < g.dim(); ++i) img[i] = g.alpha->at(i, col);
            if (!g.is_zero(g.smul(g.torsion[j], img)))
                throw input_error("automorphism does not preserve the relation "
                                  "of torsion generator " + std::to_string(j));
        }
        // exact declared order; alpha^(order-1) is then an inverse, so the
        // endomorphism is in fact an automorphism
        auto is_identity_power = [&g](long k) {
            for (std::size_t j = 0; j < g.dim(); ++j) {
                Coords v = basis_vector(g, j);
                for (long s = 0; s < k; ++s) v = g.apply_alpha(v);
                if (v != g.normalize(basis_vector(g, j))) return false;
            }
            return true;
        };
        if (!is_identity_power(g.alpha_order))
            throw input_error("automorphism does not have its declared order " +
                              std::to_string(g.alpha_order));
        for (long d = 1; d < g.alpha_order; ++d)
            if (g.alpha_order % d == 0 && is_identity_power(d))
                throw input_error("automorphism order is " + std::to_string(d) +
                                  ", less than the declared " +
                                  std::to_string(g.alpha_order));
    }
}

// --- CycleExpr --------------------------------------------------------------

CycleExpr CycleExpr::symbol(Coords a, Coords b)
{
    CycleExpr e;
    e.add_term(PairSymbol{std::move(a), std::move(b)}, Int(1));
    return e;
}

CycleExpr& CycleExpr::add_term(const PairSymbol& s, const Int& c)
{
    if (c == 0) return *this;
    auto it = terms_.find(s);
    if (it == terms_.end()) {
        terms_.emplace(s, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
    return *this;
}

CycleExpr CycleExpr::operator+(const CycleExpr& o) const
{
    CycleExpr r = *this;
    for (const auto& [s, c] : o.terms_) r.add_term(s, c);
    return r;
}

CycleExpr CycleExpr::operator-(const CycleExpr& o) const
{
    CycleExpr r = *this;
    for (const auto& [s, c] : o.terms_) r.add_term(s, -c);
    return r;
}

CycleExpr CycleExpr::scaled(const Int& k) const
{
    CycleExpr r;
    if (k == 0) return r;
    for (const auto& [s, c] : terms_) r.add_term(s, k * c);
    return r;
}

std::string CycleExpr::to_string() const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [s, c] : terms_) {
        if (c > 0 && !first) os << " + ";
        if (c < 0) os << (first ? "-" : " - ");
        Int a = abs(c);
        if (a != 1) os << a.get_str() << "*";
        os << "[" << coords_to_string(s.a) << "|" << coords_to_string(s.b) << "]";
        first = false;
    }
    return os.str();
}

// --- models -----------------------------------------------------------------

void validate_model(const BiellipticModel& m)
{
    validate_marked_group(m.a1);
    validate_marked_group(m.a2);
    if (!m.a1.p0)
        throw input_error("first factor needs its translation element marked");
    if (!m.a2.alpha)
        throw input_error("second factor needs its automorphism");
}

BiellipticModel universal_model(int type)
{
    BiellipticModel m;
    m.type = type;
    switch (type) {
    case 1: {
        m.a1.free_rank = 1;
        m.a1.torsion = {Int(2)};
        m.a1.p0 = Coords{Int(0), Int(1)};
        m.a1.p0_order = 2;
        m.a2.free_rank = 1;
        IntMat neg(1, 1);
        neg.at(0, 0) = -1;
        m.a2.alpha = neg;
        m.a2.alpha_order = 2;
        break;
    }
    case 5: {
        m.a1.free_rank = 1;
        m.a1.torsion = {Int(3)};
        m.a1.p0 = Coords{Int(0), Int(1)};
        m.a1.p0_order = 3;
        m.a2.free_rank = 2;
        // order three: alpha^2 + alpha + 1 = 0
        IntMat rot(2, 2);
        rot.at(0, 0) = 0;
        rot.at(0, 1) = -1;
        rot.at(1, 0) = 1;
        rot.at(1, 1) = -1;
        m.a2.alpha = rot;
        m.a2.alpha_order = 3;
        break;
    }
    default:
        throw input_error("generic coefficient models exist for types 1 and 5");
    }
    validate_model(m);
    return m;
}

CycleExpr special_cycle(const BiellipticModel& m, const Coords& P, const Coords& Q)
{
    Coords p = m.a1.normalize(P), q = m.a2.normalize(Q);
    Coords o1 = m.a1.zero(), o2 = m.a2.zero();
    CycleExpr z;
    z.add_term(PairSymbol{p, q}, Int(1));
    z.add_term(PairSymbol{p, o2}, Int(-1));
    z.add_term(PairSymbol{o1, q}, Int(-1));
    z.add_term(PairSymbol{o1, o2}, Int(1));
    return z;
}

CycleExpr sigma_push(const BiellipticModel& m, const CycleExpr& e)
{
    if (!m.a1.p0 || !m.a2.alpha)
        throw input_error("pushforward needs the translation and the automorphism");
    CycleExpr r;
    for (const auto& [s, c] : e.terms())
        r.add_term(PairSymbol{m.a1.add(s.a, *m.a1.p0), m.a2.apply_alpha(s.b)}, c);
    return r;
}

std::vector<CycleExpr> pushforward_relations(const BiellipticModel& m)
{
    std::vector<CycleExpr> rels;
    for (std::size_t i = 0; i < m.a1.dim(); ++i)
        for (std::size_t j = 0; j < m.a2.dim(); ++j) {
            CycleExpr z = special_cycle(m, basis_vector(m.a1, i),
                                        basis_vector(m.a2, j));
            rels.push_back(z - sigma_push(m, z));
        }
    return rels;
}

// --- TensorModel ------------------------------------------------------------

TensorModel::TensorModel(const BiellipticModel& m)
    : d1_(m.a1.dim()), d2_(m.a2.dim())
{
    auto order_of_gen = [](const MarkedGroup& g, std::size_t i) {
        return i < static_cast<std::size_t>(g.free_rank)
                   ? Int(0)
                   : g.torsion[i - static_cast<std::size_t>(g.free_rank)];
    };
    moduli_.reserve(d1_ * d2_);
    for (std::size_t i = 0; i < d1_; ++i)
        for (std::size_t j = 0; j < d2_; ++j)
            moduli_.push_back(gcd(order_of_gen(m.a1, i), order_of_gen(m.a2, j)));
}

Coords TensorModel::normalize(Coords v) const
{
    if (v.size() != moduli_.size())
        throw input_error("tensor coordinate vector has wrong length");
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (moduli_[k] == 0) continue;
        v[k] %= moduli_[k];
        if (v[k] < 0) v[k] += moduli_[k];
    }
    return v;
}

Coords TensorModel::tensor_of(const Coords& a, const Coords& b) const
{
    if (a.size() != d1_ || b.size() != d2_)
        throw input_error("tensor factors have wrong coordinate lengths");
    Coords t(moduli_.size());
    for (std::size_t i = 0; i < d1_; ++i)
        for (std::size_t j = 0; j < d2_; ++j)
            t[i * d2_ + j] = a[i] * b[j];
    return normalize(std::move(t));
}

Coords TensorModel::nu(const CycleExpr& e) const
{
    Coords acc(moduli_.size(), Int(0));
    for (const auto& [s, c] : e.terms()) {
        Coords t = tensor_of(s.a, s.b);
        for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += c * t[k];
    }
    return normalize(std::move(acc));
}

bool TensorModel::is_zero(const Coords& v) const
{
    Coords n = normalize(v);
    return std::all_of(n.begin(), n.end(), [](const Int& c) { return c == 0; });
}

// --- CycleClassGroup --------------------------------------------------------

namespace {

std::vector<std::vector<Int>> relation_rows(const BiellipticModel& m,
                                            const TensorModel& t)
{
    validate_model(m);
    std::vector<std::vector<Int>> rows;
    for (const CycleExpr& rel : pushforward_relations(m))
        rows.push_back(t.nu(rel));
    for (std::size_t k = 0; k < t.dim(); ++k)
        if (t.moduli()[k] != 0) {
            std::vector<Int> r(t.dim(), Int(0));
            r[k] = t.moduli()[k];
            rows.push_back(std::move(r));
        }
    return rows;
}

} // namespace

CycleClassGroup::CycleClassGroup(BiellipticModel m)
    : model_(std::move(m)), tensor_(model_),
      rows_(relation_rows(model_, tensor_)), quot_(tensor_.dim(), rows_)
{
}

std::optional<Int> CycleClassGroup::z_order(const Coords& P, const Coords& Q) const
{
    return quot_.image_order(tensor_.tensor_of(model_.a1.normalize(P),
                                               model_.a2.normalize(Q)));
}

bool CycleClassGroup::relation_member(const Coords& t) const
{
    return in_row_span(rows_, tensor_.normalize(t));
}

// --- finite-field instances ---------------------------------------------------

FpEmbedding::FpEmbedding(const FpCurve& E) : curve_(E), gs_(group_structure(E))
{
    std::size_t k = gs_.invariant_factors.size();
    Coords c(k, Int(0));
    while (true) {
        FpPoint p = FpPoint::at_infinity();
        for (std::size_t i = 0; i < k; ++i)
            p = ec_add(curve_.eq, p, ec_mul(curve_.eq, c[i], gs_.generators[i]));
        table_.emplace(point_to_string(p), c);
        // odometer over prod [0, d_i)
        std::size_t i = 0;
        for (; i < k; ++i) {
            if (++c[i] < gs_.invariant_factors[i]) break;
            c[i] = 0;
        }
        if (i == k) break;
    }
    if (table_.size() != static_cast<std::size_t>(gs_.order.get_ui()))
        throw error("internal: generator chart does not cover the group");
}

Coords FpEmbedding::coords_of(const FpPoint& P) const
{
    if (!on_curve(curve_.eq, P))
        throw input_error("coords_of: point not on curve");
    auto it = table_.find(point_to_string(P));
    if (it == table_.end())
        throw error("internal: on-curve point missing from the chart");
    return it->second;
}

FpPoint FpEmbedding::point_of(const Coords& v) const
{
    if (v.size() != gs_.invariant_factors.size())
        throw input_error("point_of: wrong coordinate length");
    FpPoint p = FpPoint::at_infinity();
    for (std::size_t i = 0; i < v.size(); ++i)
        p = ec_add(curve_.eq, p, ec_mul(curve_.eq, v[i], gs_.generators[i]));
    return p;
}

InstanceModel instance_model(const SurfaceActionSpec& spec)
{
    ActionCheck chk = validate_action(spec);
    if (!chk.ok) {
        std::string msg = "invalid quotient datum:";
        for (const std::string& v : chk.violations) msg += "\n  - " + v;
        throw input_error(msg);
    }
    unsigned n = spec.type == 1 ? 2 : spec.type == 3 ? 4 : 3;

    InstanceModel im{BiellipticModel{}, FpEmbedding(spec.e1), FpEmbedding(spec.e2)};
    im.model.type = spec.type;

    im.model.a1.torsion = im.emb1.structure().invariant_factors;
    im.model.a1.p0 = im.emb1.coords_of(spec.p0);
    im.model.a1.p0_order = static_cast<long>(n);

    MarkedGroup& a2 = im.model.a2;
    a2.torsion = im.emb2.structure().invariant_factors;
    std::size_t d = a2.dim();
    IntMat mat(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        Coords img = im.emb2.coords_of(
            twist_point(n, spec.e2, im.emb2.structure().generators[j]));
        for (std::size_t i = 0; i < d; ++i) mat.at(i, j) = img[i];
    }
    a2.alpha = mat;
    // the twist has order n as a curve automorphism, but the map it induces
    // on the finite group E2(F_p) may be smaller (negation on a group killed
    // by 2, say); declare the honest induced order
    for (unsigned k = 1; k <= n; ++k) {
        if (n % k != 0) continue;
        a2.alpha_order = static_cast<long>(k);
        try {
            validate_marked_group(a2);
            break;
        } catch (const input_error&) {
            if (k == n) throw;
        }
    }

    validate_model(im.model);
    return im;
}

} // namespace biell
