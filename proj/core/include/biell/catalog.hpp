#ifndef BIELL_CATALOG_HPP
#define BIELL_CATALOG_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "biell/elliptic.hpp"

namespace biell {

// Curve catalogs are JSON lines: one object per line with a "label" string
// and an "a" array holding either [A, B] (short Weierstrass) or
// [a1, a2, a3, a4, a6] (long form, converted on ingest).  Array entries are
// JSON integers or strings like "-3/4"; integers beyond 64 bits must be
// quoted, since bare JSON numbers of that size lose exactness.

struct CatalogEntry {
    std::string label;
    EllipticCurve curve;  // always short form
    std::size_t line = 0; // 1-based line in the defining text
};

// Parse catalog text from a stream; `source` names it in error messages.
// Malformed lines are reported with their line number, singular curves with
// their label.  Empty text yields an empty list.
std::vector<CatalogEntry> parse_catalog(std::istream& in,
                                        const std::string& source);

// Load a catalog file from disk (input_error when it cannot be opened).
std::vector<CatalogEntry> ingest_catalog(const std::string& path);

// The entries shipped with the tool, and the exact text they are parsed
// from (also exported as data/catalog.jsonl for inspection).
const std::vector<CatalogEntry>& builtin_catalog();
const std::string& builtin_catalog_text();

// Turn a command-line curve argument into a curve: first a label looked up
// in the user catalog (file named by the BIELL_CATALOG environment variable,
// when set) and then among the built-in entries; otherwise a comma-separated
// inline list "A,B" or "a1,a2,a3,a4,a6" of rationals.
EllipticCurve resolve_curve(const std::string& spec);

} // namespace biell

#endif
