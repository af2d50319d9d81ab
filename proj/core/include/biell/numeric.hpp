#ifndef BIELL_NUMERIC_HPP
#define BIELL_NUMERIC_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

#include "biell/errors.hpp"

namespace biell {

// All arithmetic is exact.  Integers and rationals are GMP-backed; nothing
// in the library touches floating point.
using Int = mpz_class;
using Rat = mpq_class;

// num/den in lowest terms with positive denominator (GMP canonical form).
Rat make_rat(const Int& num, const Int& den);
Rat parse_rat(const std::string& text); // "3", "-14931", "22/7"

// Deterministic Miller-Rabin, valid for the full uint64 range.
bool is_prime_u64(std::uint64_t n);

// --- modular helpers (p need not be prime unless stated) ---------------

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t m); // gcd(a,m)=1 required

std::uint64_t reduce_mod(const Int& a, std::uint64_t m);
// Rational reduction; requires the denominator to be a unit mod m.
std::uint64_t reduce_mod(const Rat& x, std::uint64_t m);

// --- p-adic valuations --------------------------------------------------

// Element of Z u {+infinity}; +infinity is the valuation of 0.
class Valuation {
public:
    static Valuation infinity() { return Valuation(true, 0); }
    static Valuation of(long v) { return Valuation(false, v); }

    bool is_infinite() const { return infinite_; }
    // Finite value; throws on +infinity.
    long value() const;

    bool operator==(const Valuation& o) const
    {
        return infinite_ == o.infinite_ && (infinite_ || v_ == o.v_);
    }
    bool operator<(const Valuation& o) const
    {
        if (infinite_) return false;
        if (o.infinite_) return true;
        return v_ < o.v_;
    }
    bool operator<=(const Valuation& o) const { return *this < o || *this == o; }

    Valuation operator+(const Valuation& o) const
    {
        if (infinite_ || o.infinite_) return infinity();
        return of(v_ + o.v_);
    }

    std::string to_string() const;

private:
    Valuation(bool inf, long v) : infinite_(inf), v_(v) {}
    bool infinite_;
    long v_;
};

std::ostream& operator<<(std::ostream& os, const Valuation& v);

// v_p of an integer / rational; p must be prime.  v_p(0) = +infinity.
Valuation padic_valuation(const Int& a, std::uint64_t p);
Valuation padic_valuation(const Rat& x, std::uint64_t p);

// Unit part u with x = p^v * u (x nonzero).
Rat padic_unit_part(const Rat& x, std::uint64_t p);

// --- quadratic residues and square classes ------------------------------

// Euler criterion; requires odd prime p and u not divisible by p.
bool is_square_mod(const Int& u, std::uint64_t p);

// Q_p^x / (Q_p^x)^2 for odd p is a Klein four-group on {1, u, p, u*p},
// u any non-residue unit.  Encoded by two bits: does the unit part fail to
// be a square, and is the valuation odd.
enum class SquareClass : unsigned char {
    one = 0,              // square
    unit = 1,             // non-square unit
    uniformizer = 2,      // p * square
    unit_uniformizer = 3, // p * non-square unit
};

SquareClass square_class(const Rat& x, std::uint64_t p); // odd prime p, x != 0
SquareClass square_class_mul(SquareClass a, SquareClass b);
bool is_trivial(SquareClass c);
bool is_unramified(SquareClass c); // even valuation component
std::string to_string(SquareClass c);

} // namespace biell

#endif
