#include "biell/catalog.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "biell/config.hpp"
#include "biell/errors.hpp"

namespace biell {
namespace {

using nlohmann::json;

// Exact rational from a JSON entry: an integer, or a string "n" / "n/d".
Rat rat_from_json(const json& v)
{
    if (v.is_number_integer()) {
        if (v.is_number_unsigned())
            return Rat(Int(static_cast<unsigned long>(v.get<std::uint64_t>())));
        return Rat(Int(static_cast<long>(v.get<std::int64_t>())));
    }
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        Rat q;
        if (q.set_str(s, 10) != 0)
            throw input_error("'" + s + "' is not a rational number");
        if (q.get_den() == 0)
            throw input_error("'" + s + "' has a zero denominator");
        q.canonicalize();
        return q;
    }
    if (v.is_number())
        throw input_error("non-integer numeric entry; write rationals as "
                          "\"n/d\" strings to keep them exact");
    throw input_error("coefficient entries must be integers or strings");
}

CatalogEntry entry_from_line(const std::string& line, std::size_t lineno)
{
    json obj;
    try {
        obj = json::parse(line);
    } catch (const json::exception& e) {
        throw input_error(std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object())
        throw input_error("each line must be a JSON object");
    if (!obj.contains("label") || !obj["label"].is_string())
        throw input_error("missing string field \"label\"");
    if (!obj.contains("a") || !obj["a"].is_array())
        throw input_error("missing array field \"a\"");

    const std::string label = obj["label"].get<std::string>();
    std::vector<Rat> a;
    for (const json& v : obj["a"]) a.push_back(rat_from_json(v));

    CatalogEntry entry;
    entry.label = label;
    entry.line = lineno;
    try {
        if (a.size() == 2)
            entry.curve = make_curve(a[0], a[1], label);
        else if (a.size() == 5)
            entry.curve = curve_from_long_form(a, label);
        else
            throw input_error("\"a\" must have 2 (short form) or 5 (long "
                              "form) entries, not " + std::to_string(a.size()));
    } catch (const input_error& e) {
        throw input_error("curve '" + label + "': " + e.what());
    }
    return entry;
}

// The two curves the tool is built around, in short Weierstrass form.
const char* const kBuiltinCatalog =
    R"({"label": "33.a2", "a": [-14931, 220590]})" "\n"
    R"({"label": "198.a2", "a": [-3171, 68510]})" "\n";

} // namespace

std::vector<CatalogEntry> parse_catalog(std::istream& in,
                                        const std::string& source)
{
    std::vector<CatalogEntry> entries;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        try {
            entries.push_back(entry_from_line(line, lineno));
        } catch (const input_error& e) {
            throw input_error(source + " line " + std::to_string(lineno) +
                              ": " + e.what());
        }
    }
    return entries;
}

std::vector<CatalogEntry> ingest_catalog(const std::string& path)
{
    std::ifstream in(path);
    if (!in.good())
        throw input_error("cannot open catalog file " + path);
    return parse_catalog(in, path);
}

const std::string& builtin_catalog_text()
{
    static const std::string text = kBuiltinCatalog;
    return text;
}

const std::vector<CatalogEntry>& builtin_catalog()
{
    static const std::vector<CatalogEntry> entries = [] {
        std::istringstream in(builtin_catalog_text());
        return parse_catalog(in, "builtin catalog");
    }();
    return entries;
}

EllipticCurve resolve_curve(const std::string& spec)
{
    if (const char* path = std::getenv(kCatalogEnv))
        for (const CatalogEntry& e : ingest_catalog(path))
            if (e.label == spec) return e.curve;
    for (const CatalogEntry& e : builtin_catalog())
        if (e.label == spec) return e.curve;

    if (spec.find(',') != std::string::npos) {
        std::vector<Rat> a;
        std::istringstream in(spec);
        std::string part;
        while (std::getline(in, part, ',')) {
            Rat q;
            if (part.empty() || q.set_str(part, 10) != 0 || q.get_den() == 0)
                throw input_error("'" + part + "' in '" + spec +
                                  "' is not a rational number");
            q.canonicalize();
            a.push_back(q);
        }
        if (a.size() == 2) return make_curve(a[0], a[1]);
        if (a.size() == 5) return curve_from_long_form(a);
        throw input_error("inline curve '" + spec +
                          "' must list 2 or 5 coefficients");
    }

    std::string known;
    for (const CatalogEntry& e : builtin_catalog())
        known += (known.empty() ? "" : ", ") + e.label;
    throw input_error("unknown curve label '" + spec + "' (built-in: " + known +
                      "; set " + std::string(kCatalogEnv) +
                      " to add a catalog, or pass coefficients as 'A,B')");
}

} // namespace biell
