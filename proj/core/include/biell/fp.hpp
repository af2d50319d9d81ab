#ifndef BIELL_FP_HPP
#define BIELL_FP_HPP

#include <cstdint>
#include <string>

#include "biell/errors.hpp"
#include "biell/numeric.hpp"

namespace biell {

// Prime field descriptor.  Plain modular arithmetic is fine for any prime;
// curve arithmetic additionally insists on p >= 5 (checked at the curve
// layer, where the short Weierstrass shape needs 2 and 3 invertible).
class PrimeField {
public:
    explicit PrimeField(std::uint64_t p) : p_(p)
    {
        if (!is_prime_u64(p))
            throw input_error("PrimeField: " + std::to_string(p) + " is not prime");
    }
    std::uint64_t p() const { return p_; }

private:
    std::uint64_t p_;
};

// Element of F_p.  Self-describing (carries its modulus) so the generic
// curve formulas can stay field-agnostic.
struct FpElem {
    std::uint64_t v = 0;
    std::uint64_t p = 0;

    FpElem() = default;
    FpElem(std::uint64_t value, std::uint64_t prime) : v(value % prime), p(prime) {}

    static FpElem from_int(const Int& a, std::uint64_t p)
    {
        return FpElem(reduce_mod(a, p), p);
    }
    static FpElem from_rat(const Rat& a, std::uint64_t p)
    {
        return FpElem(reduce_mod(a, p), p);
    }

    bool operator==(const FpElem& o) const
    {
        check(o);
        return v == o.v;
    }
    FpElem operator+(const FpElem& o) const
    {
        check(o);
        std::uint64_t s = v + o.v; // p < 2^63 enforced at curve layer; guard anyway
        if (s >= p || s < v) s -= p;
        return FpElem(s, p);
    }
    FpElem operator-() const { return FpElem(v == 0 ? 0 : p - v, p); }
    FpElem operator-(const FpElem& o) const { return *this + (-o); }
    FpElem operator*(const FpElem& o) const
    {
        check(o);
        return FpElem(mulmod_u64(v, o.v, p), p);
    }
    FpElem operator/(const FpElem& o) const
    {
        check(o);
        if (o.v == 0)
            throw precondition_error("division by zero in F_p");
        return *this * FpElem(invmod_u64(o.v, p), p);
    }
    std::string to_string() const { return std::to_string(v); }

private:
    void check(const FpElem& o) const
    {
        if (p != o.p)
            throw input_error("mixed moduli in F_p arithmetic");
    }
};

inline bool is_zero(const FpElem& a) { return a.v == 0; }
inline bool is_zero(const Rat& a) { return a == 0; }

} // namespace biell

#endif
