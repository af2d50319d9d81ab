#include "biell/replay.hpp"

#include <sstream>

namespace biell {

namespace {

// Certificate chain for the translation-negation surface. Pushing the
// difference cycle through the action and splitting the translated argument
// bilinearly produces two relations whose combination kills 4 z[P,Q]:
// taking twice the first four rewrites plus the two torsion kills gives
//   4 z[P,Q] = 2*(s1) + 2*(s2) + s3 + 2*(s4) + 2*(s5) + s6.
const std::string kType1Main = R"(model universal-type-1
claim 4 z[P, Q] => 0
pushforward-functoriality : z[P, Q] => [P + P0, w(Q)] - [P + P0, O] - [O, Q] + [O, O]
pushforward-functoriality : [O, w(Q)] => [P0, Q]
torsion-equivalence : 2 [P0, Q] => 2 [O, Q]
bilinearity : z[P + P0, w(Q)] => z[P, w(Q)] + z[P0, w(Q)]
bilinearity : z[P, w(Q)] + z[P, Q] => 0
bilinearity : 2 z[P0, w(Q)] => 0
)";

// Certificate chain for the translation-rotation surface. The rotation
// satisfies 1 + w + w^2 = 0, so the three-fold orbit sum splits bilinearly
// into torsion terms; two push-forward difference relations then trade each
// translation mark for a torsion symbol. The combination
//   9 z[P,Q] = 3*(s1) + s2 + s3 + 6*(s4) - 6*(s5) - 2*(s6)
//              + 3*(s7) - 3*(s8) - s9
// certifies the claim.
const std::string kType5Main = R"(model universal-type-5
claim 9 z[P, Q] => 0
bilinearity : z[P, Q] + z[P + P0, w(Q)] + z[P + 2 P0, w(w(Q))] => z[P0, w(Q)] + z[2 P0, w(w(Q))]
bilinearity : 3 z[P0, w(Q)] => 0
bilinearity : 3 z[2 P0, w(w(Q))] => 0
pushforward-functoriality : z[P, Q] => [P + P0, w(Q)] - [P + P0, O] - [O, Q] + [O, O]
pushforward-functoriality : [O, Q] => [P0, w(Q)]
torsion-equivalence : 3 [P0, w(Q)] => 3 [O, w(Q)]
pushforward-functoriality : z[P + P0, w(Q)] => [P + 2 P0, w(w(Q))] - [P + 2 P0, O] - [O, w(Q)] + [O, O]
pushforward-functoriality : [O, w(Q)] => [P0, w(w(Q))]
torsion-equivalence : 3 [P0, w(w(Q))] => 3 [O, w(w(Q))]
)";

// Cover-degree reduction at degree two (the generic degree-m script comes
// from cokernel_script): composing pull-back and push-forward along a finite
// cover multiplies a class by the degree, so every class of the
// quotient-by-image group is killed by it.
const std::string kCompositeReduction = R"(model cokernel 2
claim 2 C => 0
degree-identity : 2 C => pf[PB]
)";

} // namespace

std::vector<std::string> builtin_script_names()
{
    return {"type1_main", "type5_main", "composite_reduction"};
}

const std::string& builtin_script(const std::string& name)
{
    if (name == "type1_main") return kType1Main;
    if (name == "type5_main") return kType5Main;
    if (name == "composite_reduction") return kCompositeReduction;
    throw input_error("unknown built-in script '" + name + "'");
}

std::string cokernel_script(const Int& degree)
{
    if (degree < 1) throw input_error("cover degree must be >= 1");
    std::ostringstream os;
    os << "model cokernel " << degree.get_str() << "\n"
       << "claim " << degree.get_str() << " C => 0\n"
       << "degree-identity : " << degree.get_str() << " C => pf[PB]\n";
    return os.str();
}

} // namespace biell
