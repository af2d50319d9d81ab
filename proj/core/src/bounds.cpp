#include "biell/bounds.hpp"

#include <sstream>

namespace biell {

BoundCertificate full_bound_certificate(int type)
{
    BoundCertificate cert;
    cert.type = type;
    cert.verified = true;

    // walk the cover lattice down to a terminal family
    int cur = type;
    while (auto step = intermediate_cover(cur)) {
        ReplayVerdict v = replay_cokernel(Int(step->degree));
        cert.verified = cert.verified && v.pass;
        std::ostringstream d;
        d << "cover type " << step->cover_type << " -> type " << step->base_type
          << ", degree " << step->degree << " ("
          << (v.pass ? "script passed" : "script FAILED") << ")";
        cert.factors.push_back(
            BoundFactor{"cover-degree", Int(step->degree), d.str()});
        cert.total *= step->degree;
        cur = step->cover_type;
    }

    // quotient of the terminal surface by the image from the product
    const ClassificationRow row = table_row(cur);
    ReplayVerdict coker = replay_cokernel(Int(row.epsilon));
    cert.verified = cert.verified && coker.pass;
    std::ostringstream cd;
    cd << "quotient modulo the image from the product, degree " << row.epsilon
       << " (" << (coker.pass ? "script passed" : "script FAILED") << ")";
    cert.factors.push_back(BoundFactor{"cokernel", Int(row.epsilon), cd.str()});
    cert.total *= row.epsilon;

    // the main derivation chain for the terminal family
    std::string script = cur == 1 ? "type1_main" : "type5_main";
    ReplayVerdict main = replay_builtin(script);
    cert.verified = cert.verified && main.pass;
    cert.factors.push_back(BoundFactor{
        "main-replay", Int(row.epsilon) * row.epsilon,
        script + (main.pass ? ": " + main.conclusion : ": FAILED")});
    cert.total *= Int(row.epsilon) * row.epsilon;

    cert.verified = cert.verified && cert.total == table_row(type).exponent_bound;
    return cert;
}

std::string BoundCertificate::to_string() const
{
    std::ostringstream os;
    os << "type " << type << " exponent bound " << total.get_str()
       << (verified ? " (verified)" : " (NOT verified)") << "\n";
    for (const BoundFactor& f : factors)
        os << "  x " << f.value.get_str() << "  " << f.kind << ": " << f.detail
           << "\n";
    return os.str();
}

} // namespace biell
