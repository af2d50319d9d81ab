#pragma once

#include "biell/replay.hpp"
#include "biell/surfaces.hpp"

namespace biell {

// One multiplicative contribution to a quotient-surface exponent bound,
// together with the certificate that backs it.
struct BoundFactor {
    std::string kind;   // "cover-degree" | "cokernel" | "main-replay"
    Int value;          // the multiplicative contribution
    std::string detail; // which script or quotient step backs the factor
};

struct BoundCertificate {
    int type = 0;
    Int total{1};
    bool verified = false; // all backing replays passed and the product
                           // equals the classification-table bound
    std::vector<BoundFactor> factors;

    std::string to_string() const;
};

// Composes the full exponent bound for a surface type: cover-degree
// reductions down the lattice to the translation-negation or
// translation-rotation family, the cokernel factor for the quotient by the
// image from the product, and the main derivation replay. Each factor is
// certified by running its script; the product is checked against
// classification_table().
BoundCertificate full_bound_certificate(int type);

} // namespace biell
