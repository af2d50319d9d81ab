// Command-line front end: curve inspection, the classification table and its
// exponent-bound certificates, cycle-class verification over universal and
// finite-field models, derivation-script replay, the order-2 obstruction
// pipeline, and catalog validation.  Every command can emit a machine
// report with --json; exit codes are 0 (verified/ok), 1 (refuted) and
// 2 (input error).

#include "CLI11.hpp"
#include "json.hpp"

#include "biell/bounds.hpp"
#include "biell/brauer.hpp"
#include "biell/catalog.hpp"
#include "biell/config.hpp"
#include "biell/cycles.hpp"
#include "biell/elliptic.hpp"
#include "biell/errors.hpp"
#include "biell/localdata.hpp"
#include "biell/replay.hpp"
#include "biell/surfaces.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace biell;
using nlohmann::json;

namespace {

struct Outcome {
    std::string verdict = "verified"; // verified | refuted | conditional | error
    std::string text;                 // human-readable body, newline-terminated
    json result = json::object();
    std::vector<std::string> notes;   // provenance: constants and rules used
};

json jrat(const Rat& x) { return x.get_str(); }
json jint(const Int& x) { return x.get_str(); }

json jval(const Valuation& v)
{
    if (v.is_infinite()) return nullptr;
    return v.value();
}

std::string curve_text(const EllipticCurve& E)
{
    std::string eq = "y^2 = x^3 + " + Rat(E.A).get_str() + "*x + " +
                     Rat(E.B).get_str();
    if (E.label.empty()) return eq;
    return E.label + " (" + eq + ")";
}

std::string fp_curve_text(const FpCurve& E)
{
    return "y^2 = x^3 + " + E.eq.A.to_string() + "*x + " + E.eq.B.to_string() +
           " over F_" + std::to_string(E.p);
}

std::string gs_text(const GroupStructure& gs)
{
    std::string s;
    for (std::size_t i = 0; i < gs.invariant_factors.size(); ++i)
        s += (i ? " x Z/" : "Z/") + gs.invariant_factors[i].get_str();
    return s.empty() ? "trivial" : s;
}

// --- curve subcommands -------------------------------------------------------

Outcome cmd_curve_info(const std::string& spec)
{
    EllipticCurve E = resolve_curve(spec);
    CurveInvariants inv = invariants(E);
    Outcome out;
    out.result = {{"label", E.label}, {"A", jrat(E.A)},      {"B", jrat(E.B)},
                  {"c4", jrat(inv.c4)}, {"c6", jrat(inv.c6)},
                  {"disc", jrat(inv.disc)}, {"j", jrat(inv.j)}};
    std::ostringstream os;
    os << curve_text(E) << "\n"
       << "  c4 = " << inv.c4 << "\n  c6 = " << inv.c6 << "\n  disc = "
       << inv.disc << "\n  j = " << inv.j << "\n";
    out.text = os.str();
    return out;
}

Outcome cmd_curve_reduction(const std::string& spec, std::uint64_t p)
{
    EllipticCurve E = resolve_curve(spec);
    ReductionData rd = reduction_type(E, p);
    Outcome out;
    out.result = {{"label", E.label},
                  {"p", p},
                  {"class", to_string(rd.cls)},
                  {"v_disc_min", rd.v_disc_min},
                  {"v_c4_min", jval(rd.v_c4_min)},
                  {"v_j", jval(rd.v_j)},
                  {"scale_exponent", rd.scale_exponent}};
    std::ostringstream os;
    os << curve_text(E) << " at p = " << p << ": " << to_string(rd.cls) << "\n"
       << "  v(disc_min) = " << rd.v_disc_min << ", v(c4_min) = " << rd.v_c4_min
       << ", v(j) = " << rd.v_j << ", model rescaled by p^" << rd.scale_exponent
       << "\n";
    out.text = os.str();
    out.notes.push_back("minimal model search over p-power rescalings");
    return out;
}

Outcome cmd_curve_torsion(const std::string& spec)
{
    EllipticCurve E = resolve_curve(spec);
    std::vector<RatPoint> pts = two_torsion(E);
    Outcome out;
    json list = json::array();
    std::ostringstream os;
    os << curve_text(E) << ": rational 2-torsion";
    for (const RatPoint& P : pts) {
        list.push_back(point_to_string(P));
        os << (list.size() == 1 ? " " : ", ") << point_to_string(P);
    }
    os << "  [" << pts.size() << " point" << (pts.size() == 1 ? "" : "s")
       << ", structure "
       << (pts.size() == 4 ? "Z/2 x Z/2" : pts.size() == 2 ? "Z/2" : "trivial")
       << "]\n";
    out.result = {{"label", E.label}, {"points", list}, {"count", pts.size()}};
    out.text = os.str();
    return out;
}

Outcome cmd_curve_count(const std::string& spec, std::uint64_t p)
{
    EllipticCurve E = resolve_curve(spec);
    FpCurve Ep = reduce_curve(E, p);
    GroupStructure gs = group_structure(Ep);
    Outcome out;
    json factors = json::array();
    for (const Int& d : gs.invariant_factors) factors.push_back(d.get_si());
    json gens = json::array();
    for (const FpPoint& g : gs.generators) gens.push_back(point_to_string(g));
    out.result = {{"label", E.label},
                  {"p", p},
                  {"order", gs.order.get_si()},
                  {"invariant_factors", factors},
                  {"generators", gens}};
    std::ostringstream os;
    os << curve_text(E) << " mod " << p << ": #E(F_" << p << ") = " << gs.order
       << "\n  structure";
    for (std::size_t i = 0; i < gs.invariant_factors.size(); ++i)
        os << (i ? " x " : " ") << "Z/" << gs.invariant_factors[i];
    os << ", generators";
    for (const FpPoint& g : gs.generators) os << " " << point_to_string(g);
    os << "\n";
    out.text = os.str();
    out.notes.push_back("exhaustive point enumeration (bound " +
                        std::to_string(enumeration_bound()) + ")");
    return out;
}

// --- surface subcommands -----------------------------------------------------

json row_json(const ClassificationRow& r)
{
    return {{"type", r.type},
            {"group", r.group},
            {"group_order", r.group_order},
            {"canonical_order", r.canonical_order},
            {"h2_torsion", r.h2_torsion},
            {"lambda", r.lambda},
            {"epsilon", r.epsilon},
            {"exponent_bound", r.exponent_bound}};
}

std::string group_text(const std::vector<int>& inv)
{
    if (inv.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < inv.size(); ++i)
        s += (i ? " x " : "") + ("Z/" + std::to_string(inv[i]));
    return s;
}

Outcome cmd_surface_table()
{
    Outcome out;
    json rows = json::array();
    std::ostringstream os;
    os << std::left << std::setw(6) << "type" << std::setw(14) << "G"
       << std::setw(5) << "|G|" << std::setw(9) << "K-order" << std::setw(13)
       << "H^2 torsion" << std::setw(8) << "lambda" << std::setw(9)
       << "epsilon" << "bound\n";
    for (const ClassificationRow& r : classification_table()) {
        rows.push_back(row_json(r));
        os << std::left << std::setw(6) << r.type << std::setw(14)
           << group_text(r.group) << std::setw(5) << r.group_order
           << std::setw(9) << r.canonical_order << std::setw(13)
           << group_text(r.h2_torsion) << std::setw(8) << r.lambda
           << std::setw(9) << r.epsilon << r.exponent_bound << "\n";
    }
    out.result = {{"rows", rows}};
    out.text = os.str();
    out.notes.push_back("seven-family classification of quotient surfaces");
    return out;
}

Outcome cmd_surface_covers(int type)
{
    (void)table_row(type); // validates the range
    Outcome out;
    json steps = json::array();
    std::ostringstream os;
    os << "type " << type << " cover chain:\n";
    int cur = type;
    long total = 1;
    while (auto step = intermediate_cover(cur)) {
        steps.push_back({{"base_type", step->base_type},
                         {"cover_type", step->cover_type},
                         {"degree", step->degree}});
        os << "  type " << step->cover_type << " covers type "
           << step->base_type << " with degree " << step->degree << "\n";
        total *= step->degree;
        cur = step->cover_type;
    }
    if (steps.empty())
        os << "  none (prime-order group; this is a base family)\n";
    else
        os << "  total degree " << total << " down to type " << cur << "\n";
    out.result = {{"type", type}, {"steps", steps}, {"reaches", cur},
                  {"total_degree", total}};
    out.text = os.str();
    return out;
}

Outcome cmd_surface_bound(int type)
{
    BoundCertificate cert = full_bound_certificate(type);
    Outcome out;
    out.verdict = cert.verified ? "verified" : "refuted";
    json factors = json::array();
    for (const BoundFactor& f : cert.factors) {
        factors.push_back({{"kind", f.kind}, {"value", jint(f.value)},
                           {"detail", f.detail}});
        out.notes.push_back(f.kind + ": " + f.detail);
    }
    out.result = {{"type", cert.type},
                  {"total", jint(cert.total)},
                  {"verified", cert.verified},
                  {"factors", factors}};
    out.text = cert.to_string();
    return out;
}

// --- cycles subcommands ------------------------------------------------------

Outcome cmd_cycles_verify_universal(int type)
{
    BiellipticModel m = universal_model(type);
    CycleClassGroup C(m);
    Coords P(m.a1.dim(), Int(0)), Q(m.a2.dim(), Int(0));
    P[0] = 1;
    Q[0] = 1;
    auto order = C.z_order(P, Q);
    const long eps = table_row(type).epsilon;
    const long budget = eps * eps;
    Outcome out;
    if (!order) {
        out.verdict = "refuted";
        out.text = "generic cycle class has infinite order\n";
        return out;
    }
    const bool divides = Int(budget) % *order == 0;
    out.verdict = divides ? "verified" : "refuted";
    out.result = {{"type", type},
                  {"model", type == 1 ? "universal-type-1" : "universal-type-5"},
                  {"quotient", C.group().to_string()},
                  {"exponent", jint(C.group().exponent())},
                  {"generic_order", jint(*order)},
                  {"budget", budget},
                  {"order_divides_budget", divides}};
    std::ostringstream os;
    os << "universal coefficient model, type " << type << "\n"
       << "  tensor quotient: " << C.group().to_string() << " (exponent "
       << C.group().exponent() << ")\n"
       << "  generic difference-cycle class has order " << *order
       << "; certified budget " << budget << "; " << *order
       << (divides ? " divides " : " DOES NOT divide ") << budget << "\n";
    out.text = os.str();
    out.notes.push_back("epsilon(type " + std::to_string(type) + ") = " +
                        std::to_string(eps) + ", budget = epsilon^2");
    return out;
}

FpPoint point_of_order(const FpCurve& E, unsigned n)
{
    for (const FpPoint& P : enumerate_points(E))
        if (fp_point_order(E, P) == Int(static_cast<long>(n))) return P;
    throw input_error("the first curve has no rational point of exact order " +
                      std::to_string(n) + " over F_" + std::to_string(E.p));
}

Outcome cmd_cycles_verify_fp(int type, std::uint64_t p, const std::string& c1,
                             const std::string& c2)
{
    SurfaceActionSpec spec;
    spec.type = type;
    spec.e1 = reduce_curve(resolve_curve(c1), p);
    spec.e2 = reduce_curve(resolve_curve(c2), p);
    const unsigned n = type == 1 ? 2 : 3;
    spec.p0 = point_of_order(spec.e1, n);

    InstanceModel im = instance_model(spec);
    CycleClassGroup C(im.model);
    const long eps = table_row(type).epsilon;
    const long budget = eps * eps;
    const Int exponent = C.group().exponent();
    const bool divides = exponent == 0 ? false : Int(budget) % exponent == 0;

    Outcome out;
    out.verdict = divides ? "verified" : "refuted";
    out.result = {{"type", type},
                  {"p", p},
                  {"curve1", fp_curve_text(spec.e1)},
                  {"curve2", fp_curve_text(spec.e2)},
                  {"translation_point", point_to_string(spec.p0)},
                  {"e1_group", gs_text(im.emb1.structure())},
                  {"e2_group", gs_text(im.emb2.structure())},
                  {"quotient", C.group().to_string()},
                  {"exponent", jint(exponent)},
                  {"budget", budget},
                  {"exponent_divides_budget", divides}};
    std::ostringstream os;
    os << "instance model, type " << type << " at p = " << p << "\n"
       << "  E1: " << fp_curve_text(spec.e1) << ", group "
       << gs_text(im.emb1.structure()) << ", translation by "
       << point_to_string(spec.p0) << "\n"
       << "  E2: " << fp_curve_text(spec.e2) << ", group "
       << gs_text(im.emb2.structure()) << "\n"
       << "  cycle-class quotient: " << C.group().to_string() << ", exponent "
       << exponent << "; budget " << budget << "; exponent"
       << (divides ? " divides " : " DOES NOT divide ") << budget << "\n";
    out.text = os.str();
    out.notes.push_back("epsilon(type " + std::to_string(type) + ") = " +
                        std::to_string(eps) + ", budget = epsilon^2");
    out.notes.push_back("translation point: first point of exact order " +
                        std::to_string(n) + " in (x, y) order");
    return out;
}

Outcome cmd_cycles_replay(const std::string& script)
{
    ReplayVerdict v;
    const auto names = builtin_script_names();
    if (std::find(names.begin(), names.end(), script) != names.end()) {
        v = replay_builtin(script);
    } else {
        std::ifstream in(script, std::ios::binary);
        if (!in.good()) {
            std::string known;
            for (const auto& n : names) known += (known.empty() ? "" : ", ") + n;
            throw input_error("no built-in script or readable file named '" +
                              script + "' (built-ins: " + known + ")");
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        v = replay_script(buf.str());
    }

    Outcome out;
    out.verdict = v.pass ? "verified" : "refuted";
    json steps = json::array();
    std::set<std::string> axioms;
    for (const ReplayStep& s : v.steps) {
        steps.push_back({{"axiom", s.axiom}, {"lhs", s.lhs}, {"rhs", s.rhs},
                         {"ok", s.ok}, {"detail", s.detail}});
        axioms.insert(s.axiom);
    }
    out.result = {{"script", script},
                  {"model", v.model_name},
                  {"claim", v.claim},
                  {"pass", v.pass},
                  {"first_fail", v.first_fail},
                  {"conclusion", v.conclusion},
                  {"steps", steps}};
    out.text = v.to_string();
    for (const std::string& a : axioms) out.notes.push_back("axiom: " + a);
    return out;
}

// --- brauer subcommand -------------------------------------------------------

json basis_json(const TwoTorsionBasis& b)
{
    json ext = json::array();
    for (SquareClass c : b.extensions) ext.push_back(to_string(c));
    return {{"curve", b.curve_label}, {"P1", b.P1.to_string()},
            {"P2", b.P2.to_string()}, {"extensions", ext}};
}

Outcome cmd_brauer_witness(const std::string& c1, const std::string& c2,
                           std::uint64_t p)
{
    ObstructionReport rep =
        obstruction_witness(resolve_curve(c1), resolve_curve(c2), p);
    Outcome out;
    out.verdict = !rep.conclusion ? "refuted"
                : rep.conditional ? "conditional"
                                  : "verified";
    json noniso = nullptr;
    if (rep.nonisogeny)
        noniso = {{"p", rep.nonisogeny->p},
                  {"v_j1", jval(rep.nonisogeny->v_j1)},
                  {"v_j2", jval(rep.nonisogeny->v_j2)}};
    json witness = nullptr;
    if (rep.witness)
        witness = json::array(
            {json::array({rep.witness->a[0][0], rep.witness->a[0][1]}),
             json::array({rep.witness->a[1][0], rep.witness->a[1][1]})});
    out.result = {{"e1", rep.b1.curve_label},
                  {"e2", rep.b2.curve_label},
                  {"p", p},
                  {"reduction1", to_string(rep.red1.cls)},
                  {"reduction2", to_string(rep.red2.cls)},
                  {"nonisogeny", noniso},
                  {"conditional", rep.conditional},
                  {"working_field", rep.field.name()},
                  {"basis1", basis_json(rep.b1)},
                  {"basis2", basis_json(rep.b2)},
                  {"hom_count", rep.hom_count},
                  {"h2_count", rep.h2_count},
                  {"witness_count", rep.witness_count},
                  {"witness", witness},
                  {"conclusion", rep.conclusion}};
    out.text = rep.to_string();
    out.notes.push_back("exhaustive enumeration of the 16 two-torsion "
                        "homomorphism matrices");
    out.notes.push_back("working field: " + rep.field.name());
    return out;
}

// --- catalog subcommand ------------------------------------------------------

Outcome cmd_catalog_check(const std::string& path)
{
    std::vector<CatalogEntry> entries = ingest_catalog(path);
    Outcome out;
    json list = json::array();
    std::ostringstream os;
    os << path << ": " << entries.size() << " valid entr"
       << (entries.size() == 1 ? "y" : "ies") << "\n";
    for (const CatalogEntry& e : entries) {
        list.push_back({{"label", e.label}, {"line", e.line},
                        {"A", jrat(e.curve.A)}, {"B", jrat(e.curve.B)}});
        os << "  line " << e.line << ": " << curve_text(e.curve) << "\n";
    }
    out.result = {{"path", path}, {"count", entries.size()}, {"entries", list}};
    out.text = os.str();
    return out;
}

// --- plumbing ----------------------------------------------------------------

int emit(const Outcome& out, bool json_mode, const std::string& echo)
{
    if (json_mode) {
        json rep = {{"command", echo},
                    {"verdict", out.verdict},
                    {"result", out.result},
                    {"provenance", {{"tool", "biell"},
                                    {"version", kVersion},
                                    {"notes", out.notes}}}};
        std::cout << rep.dump(2) << "\n";
    } else if (out.verdict == "error") {
        std::cerr << "error: " << out.text;
    } else {
        std::cout << out.text;
    }
    if (out.verdict == "verified" || out.verdict == "conditional") return 0;
    if (out.verdict == "refuted") return 1;
    return 2;
}

} // namespace

int main(int argc, char** argv)
{
    std::string echo;
    for (int i = 1; i < argc; ++i) {
        if (i > 1) echo += ' ';
        echo += argv[i];
    }

    CLI::App app{"zero-cycle and obstruction toolkit for quotient surfaces of "
                 "products of elliptic curves"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kVersion);
    bool json_mode = false;
    app.add_flag("--json", json_mode, "emit a machine-readable JSON report");

    Outcome out;

    // curve
    auto* curve = app.add_subcommand("curve", "inspect a single curve");
    curve->require_subcommand(1);
    curve->fallthrough();
    std::string curve_spec;
    std::uint64_t prime = 0;

    auto* info = curve->add_subcommand("info", "equation and invariants");
    info->add_option("curve", curve_spec, "label or inline coefficients")
        ->required();
    info->callback([&] { out = cmd_curve_info(curve_spec); });

    auto* reduction =
        curve->add_subcommand("reduction", "reduction type at a prime");
    reduction->add_option("curve", curve_spec, "label or inline coefficients")
        ->required();
    reduction->add_option("-p,--prime", prime, "prime (>= 5)")->required();
    reduction->callback([&] { out = cmd_curve_reduction(curve_spec, prime); });

    auto* torsion = curve->add_subcommand("torsion", "rational 2-torsion");
    torsion->add_option("curve", curve_spec, "label or inline coefficients")
        ->required();
    torsion->callback([&] { out = cmd_curve_torsion(curve_spec); });

    auto* count =
        curve->add_subcommand("count", "point count and group mod p");
    count->add_option("curve", curve_spec, "label or inline coefficients")
        ->required();
    count->add_option("-p,--prime", prime, "prime of good reduction (>= 5)")
        ->required();
    count->callback([&] { out = cmd_curve_count(curve_spec, prime); });

    // surface
    auto* surface =
        app.add_subcommand("surface", "classification data and bounds");
    surface->require_subcommand(1);
    surface->fallthrough();
    int type = 0;

    auto* table = surface->add_subcommand("table", "the seven families");
    table->callback([&] { out = cmd_surface_table(); });

    auto* covers =
        surface->add_subcommand("covers", "intermediate cover chain");
    covers->add_option("--type", type, "family type 1..7")->required();
    covers->callback([&] { out = cmd_surface_covers(type); });

    auto* bound =
        surface->add_subcommand("bound", "certified exponent bound");
    bound->add_option("--type", type, "family type 1..7")->required();
    bound->callback([&] { out = cmd_surface_bound(type); });

    // cycles
    auto* cycles =
        app.add_subcommand("cycles", "cycle-class groups and derivations");
    cycles->require_subcommand(1);
    cycles->fallthrough();

    auto* verify = cycles->add_subcommand(
        "verify", "order bounds for difference-cycle classes");
    bool universal = false;
    std::uint64_t fp_prime = 0;
    std::string curve1_spec, curve2_spec;
    verify->add_option("--type", type, "family type (1 or 5)")->required();
    verify->add_flag("--universal", universal, "use the universal model");
    verify->add_option("--fp", fp_prime, "build an instance over F_p");
    verify->add_option("--curve1", curve1_spec, "first curve (with --fp)");
    verify->add_option("--curve2", curve2_spec, "second curve (with --fp)");
    verify->callback([&] {
        if (type != 1 && type != 5)
            throw input_error("cycle verification models types 1 and 5 (the "
                              "other families reduce to them through covers)");
        if (universal == (fp_prime != 0))
            throw input_error("choose exactly one of --universal or --fp <p>");
        if (universal) {
            out = cmd_cycles_verify_universal(type);
        } else {
            if (curve1_spec.empty() || curve2_spec.empty())
                throw input_error("--fp needs --curve1 and --curve2");
            out = cmd_cycles_verify_fp(type, fp_prime, curve1_spec, curve2_spec);
        }
    });

    auto* replay =
        cycles->add_subcommand("replay", "re-check a derivation script");
    std::string script;
    replay->add_option("--script", script, "built-in name or file path")
        ->required();
    replay->callback([&] { out = cmd_cycles_replay(script); });

    // brauer
    auto* brauer =
        app.add_subcommand("brauer", "order-2 obstruction pipeline");
    brauer->require_subcommand(1);
    brauer->fallthrough();

    auto* witness = brauer->add_subcommand(
        "witness", "search for a nonzero-class witness at a prime");
    witness->add_option("--e1", curve1_spec, "first curve")->required();
    witness->add_option("--e2", curve2_spec, "second curve")->required();
    witness->add_option("-p,--prime", prime, "prime (>= 5)")->required();
    witness->callback(
        [&] { out = cmd_brauer_witness(curve1_spec, curve2_spec, prime); });

    // catalog
    auto* catalog = app.add_subcommand("catalog", "curve catalog utilities");
    catalog->require_subcommand(1);
    catalog->fallthrough();

    auto* check =
        catalog->add_subcommand("check", "validate a JSON-lines catalog");
    std::string path;
    check->add_option("path", path, "catalog file")->required();
    check->callback([&] { out = cmd_catalog_check(path); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const biell::error& e) {
        Outcome err;
        err.verdict = "error";
        err.text = std::string(e.what()) + "\n";
        err.result = {{"message", e.what()}};
        return emit(err, json_mode, echo);
    }

    return emit(out, json_mode, echo);
}
