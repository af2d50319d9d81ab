#pragma once

#include "biell/cycles.hpp"

#include <string>
#include <vector>

namespace biell {

// Symbolic replay of derivation chains for the quotient torsion bounds.
//
// A derivation script is a small text format:
//
//   # comment
//   model universal-type-1          (or universal-type-5, or: cokernel <m>)
//   claim 4 z[P, Q] => 0
//   <axiom-tag> : <lhs> => <rhs>
//   ...
//
// Expressions are integer combinations of difference symbols z[a, b] and
// plain point-pair symbols [a, b]; point arguments are combinations of the
// model's named generators (P, P0 on the first factor; Q on the second, with
// w(...) for the marked automorphism and O for the identity). The cokernel
// model instead uses a single class symbol C and the token pf[PB] for the
// push-forward of the pulled-back class.
//
// Each step cites one of four axioms and is checked by exact symbol algebra:
//
//   bilinearity               difference symbols only; the rewrite must die
//                             in the tensor pairing
//   torsion-equivalence       m*[a,R] => m*[a',R] with m*(a - a') = O
//                             (either slot)
//   pushforward-functoriality the rewrite must be a sum of differences
//                             x - sigma(x) of pair symbols
//   degree-identity           cokernel model only: deg*C => pf[PB]
//
// The script passes when every step is licensed and the claimed identity is
// an integer combination of the step rewrites (checked by lattice membership
// in the expanded symbol module).

struct ReplayStep {
    std::string axiom;
    std::string lhs;
    std::string rhs;
    bool ok = false;
    std::string detail; // reason when the step is not licensed
};

struct ReplayVerdict {
    bool pass = false;
    std::string model_name;
    std::string claim;
    std::vector<ReplayStep> steps;
    std::string first_fail; // "", "step <k>", or "combination"
    std::string conclusion;

    std::string to_string() const;
};

// Runs a script given as text. Malformed input (unknown model, bad syntax,
// undeclared symbols) throws input_error; an unlicensed rewrite or a claim
// that does not follow yields a failing verdict instead.
ReplayVerdict replay_script(const std::string& text);

// Built-in scripts, embedded and also exported under data/scripts/.
std::vector<std::string> builtin_script_names();
const std::string& builtin_script(const std::string& name);
ReplayVerdict replay_builtin(const std::string& name);

// The degree-m cover argument as a one-step script over the cokernel model.
std::string cokernel_script(const Int& degree);
ReplayVerdict replay_cokernel(const Int& degree);

} // namespace biell
