#include "biell/replay.hpp"

#include "biell/snf.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace biell {

namespace {

// --- lexing -------------------------------------------------------------

struct Tok {
    enum Kind { Num, Id, Sym, End } kind;
    std::string text;
    Int value;
};

std::vector<Tok> lex(const std::string& text)
{
    std::vector<Tok> out;
    std::size_t i = 0;
    while (i < text.size()) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        if (std::isdigit(c)) {
            std::size_t j = i;
            while (j < text.size() &&
                   std::isdigit(static_cast<unsigned char>(text[j])))
                ++j;
            std::string digits = text.substr(i, j - i);
            out.push_back({Tok::Num, digits, Int(digits)});
            i = j;
            continue;
        }
        if (std::isalpha(c) || c == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) ||
                    text[j] == '_'))
                ++j;
            out.push_back({Tok::Id, text.substr(i, j - i), Int(0)});
            i = j;
            continue;
        }
        if (c == '=' && i + 1 < text.size() && text[i + 1] == '>') {
            out.push_back({Tok::Sym, "=>", Int(0)});
            i += 2;
            continue;
        }
        std::string one(1, text[i]);
        if (std::string("+-*()[],").find(text[i]) == std::string::npos)
            throw input_error("unexpected character '" + one +
                              "' in script expression");
        out.push_back({Tok::Sym, one, Int(0)});
        ++i;
    }
    out.push_back({Tok::End, "", Int(0)});
    return out;
}

// --- parse target --------------------------------------------------------

// A parsed script expression keeps difference symbols apart from plain pair
// symbols: the bilinearity axiom is only sound on the former. The cokernel
// model instead uses the class symbol C; pf[...] terms denote push-forwards
// of classes certified elsewhere and count as zero in the symbol module.
struct SExpr {
    std::map<PairSymbol, Int> z;
    std::map<PairSymbol, Int> p;
    Int c{0};
    Int pb{0};
};

void add_to(std::map<PairSymbol, Int>& m, const PairSymbol& s, const Int& k)
{
    auto it = m.find(s);
    if (it == m.end()) {
        if (k != 0) m.emplace(s, k);
    } else {
        it->second += k;
        if (it->second == 0) m.erase(it);
    }
}

struct Ctx {
    std::string name;
    bool cokernel = false;
    Int degree{0};
    std::optional<BiellipticModel> model;
};

class Parser {
public:
    Parser(const std::string& text, const Ctx& ctx) : toks_(lex(text)), ctx_(ctx)
    {
    }

    SExpr cycle_expr()
    {
        SExpr e;
        int sign = 1;
        if (eat_sym("-")) sign = -1;
        for (;;) {
            cycle_term(e, sign);
            if (eat_sym("+"))
                sign = 1;
            else if (eat_sym("-"))
                sign = -1;
            else
                break;
        }
        if (cur().kind != Tok::End)
            throw input_error("trailing tokens near '" + cur().text +
                              "' in script expression");
        return e;
    }

private:
    std::vector<Tok> toks_;
    std::size_t pos_ = 0;
    const Ctx& ctx_;

    const Tok& cur() const { return toks_[pos_]; }
    const Tok& ahead() const
    {
        return toks_[pos_ + 1 < toks_.size() ? pos_ + 1 : toks_.size() - 1];
    }

    bool eat_sym(const std::string& s)
    {
        if (cur().kind == Tok::Sym && cur().text == s) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect_sym(const std::string& s)
    {
        if (!eat_sym(s))
            throw input_error("expected '" + s + "' but found '" + cur().text +
                              "' in script expression");
    }

    const MarkedGroup& group(int side) const
    {
        return side == 1 ? ctx_.model->a1 : ctx_.model->a2;
    }

    bool unit_ahead() const
    {
        return cur().kind == Tok::Id ||
               (cur().kind == Tok::Sym && cur().text == "[");
    }

    void cycle_term(SExpr& e, int sign)
    {
        Int coef(sign);
        if (cur().kind == Tok::Num) {
            coef = sign * cur().value;
            ++pos_;
            eat_sym("*");
            if (!unit_ahead()) {
                if (coef != 0)
                    throw input_error("a bare integer term must be 0");
                return;
            }
        }
        cycle_unit(e, coef);
    }

    void cycle_unit(SExpr& e, const Int& coef)
    {
        if (cur().kind == Tok::Id && cur().text == "z" &&
            ahead().kind == Tok::Sym && ahead().text == "[") {
            ++pos_;
            require_pair_model();
            add_to(e.z, pair_symbol(), coef);
            return;
        }
        if (cur().kind == Tok::Sym && cur().text == "[") {
            require_pair_model();
            add_to(e.p, pair_symbol(), coef);
            return;
        }
        if (cur().kind == Tok::Id && cur().text == "C") {
            require_cokernel();
            ++pos_;
            e.c += coef;
            return;
        }
        if (cur().kind == Tok::Id && cur().text == "pf") {
            require_cokernel();
            ++pos_;
            expect_sym("[");
            if (cur().kind != Tok::Id || cur().text != "PB")
                throw input_error("pf[...] takes the pulled-back class PB");
            ++pos_;
            expect_sym("]");
            e.pb += coef;
            return;
        }
        throw input_error("expected a term but found '" + cur().text +
                          "' in script expression");
    }

    void require_pair_model() const
    {
        if (!ctx_.model)
            throw input_error(
                "pair symbols are only available over a surface model");
    }

    void require_cokernel() const
    {
        if (!ctx_.cokernel)
            throw input_error(
                "class symbols are only available over the cokernel model");
    }

    PairSymbol pair_symbol()
    {
        expect_sym("[");
        Coords a = point_expr(1);
        expect_sym(",");
        Coords b = point_expr(2);
        expect_sym("]");
        return PairSymbol{std::move(a), std::move(b)};
    }

    Coords point_expr(int side)
    {
        const MarkedGroup& g = group(side);
        Coords acc = g.zero();
        int sign = 1;
        if (eat_sym("-")) sign = -1;
        for (;;) {
            Coords t = point_term(side);
            acc = sign < 0 ? g.sub(acc, t) : g.add(acc, t);
            if (eat_sym("+"))
                sign = 1;
            else if (eat_sym("-"))
                sign = -1;
            else
                break;
        }
        return acc;
    }

    Coords point_term(int side)
    {
        const MarkedGroup& g = group(side);
        Int coef(1);
        if (cur().kind == Tok::Num) {
            coef = cur().value;
            ++pos_;
            eat_sym("*");
            bool atom = cur().kind == Tok::Id ||
                        (cur().kind == Tok::Sym && cur().text == "(");
            if (!atom) {
                if (coef != 0)
                    throw input_error("a bare integer point must be 0");
                return g.zero();
            }
        }
        return g.smul(coef, point_atom(side));
    }

    Coords point_atom(int side)
    {
        const MarkedGroup& g = group(side);
        if (eat_sym("(")) {
            Coords v = point_expr(side);
            expect_sym(")");
            return v;
        }
        if (cur().kind != Tok::Id)
            throw input_error("expected a point symbol but found '" +
                              cur().text + "'");
        std::string id = cur().text;
        ++pos_;
        if (id == "O") return g.zero();
        if (id == "w") {
            if (side != 2)
                throw input_error(
                    "the automorphism w acts on the second factor only");
            expect_sym("(");
            Coords v = point_expr(2);
            expect_sym(")");
            return g.apply_alpha(v);
        }
        if (side == 1 && id == "P") {
            if (g.free_rank < 1)
                throw input_error("the first factor has no free generator P");
            Coords e = g.zero();
            e[0] = 1;
            return e;
        }
        if (side == 1 && id == "P0") {
            if (!g.p0)
                throw input_error("the first factor has no marked element P0");
            return *g.p0;
        }
        if (side == 2 && id == "Q") {
            if (g.free_rank < 1)
                throw input_error("the second factor has no free generator Q");
            Coords e = g.zero();
            e[0] = 1;
            return e;
        }
        throw input_error("unknown point symbol '" + id + "'");
    }
};

// --- axiom checks ---------------------------------------------------------

CycleExpr expand(const SExpr& e, const BiellipticModel& m)
{
    CycleExpr out;
    for (const auto& [s, k] : e.p) out.add_term(s, k);
    Coords o1 = m.a1.zero(), o2 = m.a2.zero();
    for (const auto& [s, k] : e.z) {
        out.add_term(s, k);
        out.add_term(PairSymbol{s.a, o2}, -k);
        out.add_term(PairSymbol{o1, s.b}, -k);
        out.add_term(PairSymbol{o1, o2}, k);
    }
    return out;
}

SExpr difference(const SExpr& l, const SExpr& r)
{
    SExpr d = l;
    for (const auto& [s, k] : r.z) add_to(d.z, s, -k);
    for (const auto& [s, k] : r.p) add_to(d.p, s, -k);
    d.c -= r.c;
    d.pb -= r.pb;
    return d;
}

// empty string = licensed; otherwise the reason the rewrite is rejected
std::string check_bilinearity(const SExpr& l, const SExpr& r,
                              const TensorModel& tensor)
{
    if (!l.p.empty() || !r.p.empty())
        return "bilinearity applies to difference symbols z[...] only";
    SExpr d = difference(l, r);
    // the formal consequences of bilinearity on difference symbols are
    // exactly the kernel of the tensor pairing a (x) b
    CycleExpr pairs;
    for (const auto& [s, k] : d.z) pairs.add_term(s, k);
    Coords img = tensor.nu(pairs);
    if (!tensor.is_zero(img))
        return "rewrite is not a bilinear consequence: tensor image " +
               coords_to_string(img) + " is nonzero";
    return "";
}

std::string check_torsion(const SExpr& l, const SExpr& r, const Ctx& ctx)
{
    if (!l.z.empty() || !r.z.empty())
        return "torsion equivalences are written in plain pair symbols";
    SExpr d = difference(l, r);
    if (d.p.size() != 2)
        return "expected the pattern m*[a,R] => m*[a',R]";
    auto it = d.p.begin();
    const PairSymbol& s1 = it->first;
    Int m = it->second;
    ++it;
    const PairSymbol& s2 = it->first;
    if (it->second != -m || m == 0)
        return "expected the pattern m*[a,R] => m*[a',R]";
    const BiellipticModel& mod = *ctx.model;
    if (s1.b == s2.b) {
        if (!mod.a1.is_zero(mod.a1.smul(m, mod.a1.sub(s1.a, s2.a))))
            return "m*(a - a') is not the identity on the first factor";
        return "";
    }
    if (s1.a == s2.a) {
        if (!mod.a2.is_zero(mod.a2.smul(m, mod.a2.sub(s1.b, s2.b))))
            return "m*(b - b') is not the identity on the second factor";
        return "";
    }
    return "the two pair symbols must agree in one slot";
}

std::string check_pushforward(const SExpr& l, const SExpr& r, const Ctx& ctx)
{
    const BiellipticModel& m = *ctx.model;
    CycleExpr diff = expand(l, m) - expand(r, m);
    // licensed rewrites are spans of x - sigma(x), i.e. the coefficients sum
    // to zero along every orbit of the action on pair symbols
    std::set<PairSymbol> seen;
    for (const auto& [s, k] : diff.terms()) {
        if (seen.count(s)) continue;
        Int total(0);
        PairSymbol curSym = s;
        do {
            seen.insert(curSym);
            auto it = diff.terms().find(curSym);
            if (it != diff.terms().end()) total += it->second;
            curSym = PairSymbol{m.a1.add(curSym.a, *m.a1.p0),
                                m.a2.apply_alpha(curSym.b)};
        } while (!(curSym == s));
        if (total != 0)
            return "coefficients do not cancel along the action orbit of [" +
                   coords_to_string(s.a) + "|" + coords_to_string(s.b) + "]";
    }
    return "";
}

std::string check_degree(const SExpr& l, const SExpr& r, const Ctx& ctx)
{
    if (!ctx.cokernel)
        return "the degree identity lives in the cokernel model";
    if (!l.z.empty() || !l.p.empty() || l.pb != 0 || l.c != ctx.degree)
        return "left side must be the cover degree " + ctx.degree.get_str() +
               " times the class symbol C";
    if (!r.z.empty() || !r.p.empty() || r.c != 0 || r.pb != 1)
        return "right side must be pf[PB]";
    return "";
}

std::string trim_copy(const std::string& s)
{
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

std::string ReplayVerdict::to_string() const
{
    std::ostringstream os;
    os << "script over " << model_name << ": " << (pass ? "PASS" : "FAIL");
    if (!pass && !first_fail.empty()) os << " at " << first_fail;
    os << "\n  claim: " << claim << "\n";
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const ReplayStep& st = steps[i];
        os << "  [" << (i + 1) << "] " << (st.ok ? "ok   " : "FAIL ") << st.axiom
           << " : " << st.lhs << " => " << st.rhs << "\n";
        if (!st.ok && !st.detail.empty()) os << "      " << st.detail << "\n";
    }
    if (pass)
        os << "  conclusion: " << conclusion << "\n";
    return os.str();
}

ReplayVerdict replay_script(const std::string& text)
{
    Ctx ctx;
    ReplayVerdict v;
    std::vector<std::pair<SExpr, SExpr>> parsed;
    SExpr claim_l, claim_r;
    bool have_model = false, have_claim = false;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string where = "line " + std::to_string(lineno) + ": ";
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim_copy(line);
        if (line.empty()) continue;

        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (!have_model) {
            if (kw != "model")
                throw input_error(where + "script must declare its model first");
            std::string name;
            if (!(ls >> name)) throw input_error(where + "missing model name");
            if (name == "universal-type-1") {
                ctx.model = universal_model(1);
            } else if (name == "universal-type-5") {
                ctx.model = universal_model(5);
            } else if (name == "cokernel") {
                long d = 0;
                if (!(ls >> d) || d < 1)
                    throw input_error(where +
                                      "cokernel model needs a degree >= 1");
                ctx.cokernel = true;
                ctx.degree = d;
                name += " " + std::to_string(d);
            } else {
                throw input_error(where + "unknown model '" + name + "'");
            }
            ctx.name = name;
            v.model_name = name;
            have_model = true;
            continue;
        }

        if (kw == "model") throw input_error(where + "duplicate model line");

        if (kw == "claim") {
            if (have_claim) throw input_error(where + "duplicate claim line");
            std::string rest = line.substr(5);
            auto arrow = rest.find("=>");
            if (arrow == std::string::npos)
                throw input_error(where + "claim needs the form <lhs> => <rhs>");
            std::string lt = trim_copy(rest.substr(0, arrow));
            std::string rt = trim_copy(rest.substr(arrow + 2));
            try {
                claim_l = Parser(lt, ctx).cycle_expr();
                claim_r = Parser(rt, ctx).cycle_expr();
            } catch (const input_error& e) {
                throw input_error(where + e.what());
            }
            v.claim = lt + " => " + rt;
            have_claim = true;
            continue;
        }

        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw input_error(where +
                              "expected '<axiom-tag> : <lhs> => <rhs>'");
        std::string tag = trim_copy(line.substr(0, colon));
        std::string rest = line.substr(colon + 1);
        auto arrow = rest.find("=>");
        if (arrow == std::string::npos)
            throw input_error(where + "step needs the form <lhs> => <rhs>");
        std::string lt = trim_copy(rest.substr(0, arrow));
        std::string rt = trim_copy(rest.substr(arrow + 2));
        if (tag != "bilinearity" && tag != "torsion-equivalence" &&
            tag != "pushforward-functoriality" && tag != "degree-identity")
            throw input_error(where + "unknown axiom tag '" + tag + "'");
        try {
            parsed.emplace_back(Parser(lt, ctx).cycle_expr(),
                                Parser(rt, ctx).cycle_expr());
        } catch (const input_error& e) {
            throw input_error(where + e.what());
        }
        v.steps.push_back(ReplayStep{tag, lt, rt, false, ""});
    }

    if (!have_model) throw input_error("script has no model line");
    if (!have_claim) throw input_error("script has no claim line");

    std::optional<TensorModel> tensor;
    if (ctx.model) tensor.emplace(*ctx.model);

    bool all_ok = true;
    for (std::size_t i = 0; i < v.steps.size(); ++i) {
        ReplayStep& st = v.steps[i];
        const auto& [l, r] = parsed[i];
        std::string err;
        if (st.axiom == "bilinearity") {
            err = ctx.model ? check_bilinearity(l, r, *tensor)
                            : "bilinearity needs a surface model";
        } else if (st.axiom == "torsion-equivalence") {
            err = ctx.model ? check_torsion(l, r, ctx)
                            : "torsion equivalences need a surface model";
        } else if (st.axiom == "pushforward-functoriality") {
            err = ctx.model ? check_pushforward(l, r, ctx)
                            : "push-forward steps need a surface model";
        } else {
            err = check_degree(l, r, ctx);
        }
        st.ok = err.empty();
        st.detail = err;
        if (!st.ok && all_ok) {
            all_ok = false;
            v.first_fail = "step " + std::to_string(i + 1);
        }
    }
    if (!all_ok) {
        v.pass = false;
        return v;
    }

    // combination check: the claim must be an integer combination of the
    // step rewrites, decided by lattice membership over the symbol module
    bool claimed_ok = false;
    if (ctx.model) {
        CycleExpr target =
            expand(claim_l, *ctx.model) - expand(claim_r, *ctx.model);
        std::vector<CycleExpr> diffs;
        for (const auto& [l, r] : parsed)
            diffs.push_back(expand(l, *ctx.model) - expand(r, *ctx.model));
        std::map<PairSymbol, std::size_t> index;
        auto index_terms = [&index](const CycleExpr& e) {
            for (const auto& [s, k] : e.terms())
                index.emplace(s, index.size());
        };
        index_terms(target);
        for (const CycleExpr& d : diffs) index_terms(d);
        auto to_vec = [&index](const CycleExpr& e) {
            std::vector<Int> out(index.size(), Int(0));
            for (const auto& [s, k] : e.terms()) out[index.at(s)] = k;
            return out;
        };
        std::vector<std::vector<Int>> rows;
        for (const CycleExpr& d : diffs) rows.push_back(to_vec(d));
        std::vector<Int> tv = to_vec(target);
        claimed_ok = target.empty() || in_row_span(rows, tv);
    } else {
        Int target = claim_l.c - claim_r.c;
        std::vector<std::vector<Int>> rows;
        for (const auto& [l, r] : parsed) rows.push_back({l.c - r.c});
        claimed_ok = target == 0 || in_row_span(rows, {target});
    }

    if (!claimed_ok) {
        v.pass = false;
        v.first_fail = "combination";
        return v;
    }
    v.pass = true;
    v.conclusion = "certified: " + v.claim;
    return v;
}

ReplayVerdict replay_builtin(const std::string& name)
{
    return replay_script(builtin_script(name));
}

ReplayVerdict replay_cokernel(const Int& degree)
{
    return replay_script(cokernel_script(degree));
}

} // namespace biell
