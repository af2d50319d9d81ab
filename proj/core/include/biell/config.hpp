#ifndef BIELL_CONFIG_HPP
#define BIELL_CONFIG_HPP

#include <cstdint>

namespace biell {

inline constexpr const char* kVersion = "0.1.0";

// Exhaustive point/root enumeration refuses to run past this many candidates
// unless overridden (env var below, or an explicit per-call bound).
inline constexpr std::int64_t kDefaultEnumBound = 10000;
inline constexpr const char* kEnumBoundEnv = "BIELL_ENUM_BOUND";

// p-adic roots are carried to this many digits by default; plenty for
// residue identification and square-class decisions at desk scale.
inline constexpr int kDefaultPadicPrecision = 20;

// Optional user catalog (JSON lines) consulted before the built-in entries.
inline constexpr const char* kCatalogEnv = "BIELL_CATALOG";

// Effective enumeration bound: env override if set and positive, else default.
std::int64_t enumeration_bound();

} // namespace biell

#endif
