#include "biell/numeric.hpp"

#include <cstdlib>
#include <ostream>

#include "biell/config.hpp"

namespace biell {

std::int64_t enumeration_bound()
{
    if (const char* s = std::getenv(kEnumBoundEnv)) {
        char* end = nullptr;
        long long v = std::strtoll(s, &end, 10);
        if (end && *end == '\0' && v > 0)
            return v;
    }
    return kDefaultEnumBound;
}

Rat make_rat(const Int& num, const Int& den)
{
    if (den == 0)
        throw input_error("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

Rat parse_rat(const std::string& text)
{
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos)
            return Rat(Int(text));
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        return make_rat(num, den);
    } catch (const std::invalid_argument&) {
        throw input_error("unparsable rational: '" + text + "'");
    }
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
    if (m == 1) return 0;
    std::uint64_t r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t m)
{
    // extended Euclid on signed 128-bit intermediaries
    __int128 t = 0, newt = 1;
    __int128 r = m, newr = a % m;
    while (newr != 0) {
        __int128 q = r / newr;
        __int128 tmp = t - q * newt; t = newt; newt = tmp;
        tmp = r - q * newr; r = newr; newr = tmp;
    }
    if (r != 1)
        throw input_error("invmod: argument not invertible");
    if (t < 0) t += m;
    return static_cast<std::uint64_t>(t);
}

bool is_prime_u64(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                            19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    // Miller-Rabin with the first twelve primes as witnesses is exact for
    // every n < 3.3 * 10^24, which covers uint64.
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                            19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t reduce_mod(const Int& a, std::uint64_t m)
{
    Int r = a % Int(m);
    if (r < 0) r += Int(m);
    return r.get_ui();
}

std::uint64_t reduce_mod(const Rat& x, std::uint64_t m)
{
    std::uint64_t den = reduce_mod(Int(x.get_den()), m);
    std::uint64_t num = reduce_mod(Int(x.get_num()), m);
    return mulmod_u64(num, invmod_u64(den, m), m);
}

long Valuation::value() const
{
    if (infinite_)
        throw precondition_error("valuation is +infinity");
    return v_;
}

std::string Valuation::to_string() const
{
    return infinite_ ? "+inf" : std::to_string(v_);
}

std::ostream& operator<<(std::ostream& os, const Valuation& v)
{
    return os << v.to_string();
}

Valuation padic_valuation(const Int& a, std::uint64_t p)
{
    if (!is_prime_u64(p))
        throw input_error("padic_valuation: p = " + std::to_string(p) + " is not prime");
    if (a == 0) return Valuation::infinity();
    Int t = a;
    Int P(p);
    long v = 0;
    while (mpz_divisible_p(t.get_mpz_t(), P.get_mpz_t())) {
        t /= P;
        ++v;
    }
    return Valuation::of(v);
}

Valuation padic_valuation(const Rat& x, std::uint64_t p)
{
    if (x == 0) {
        if (!is_prime_u64(p))
            throw input_error("padic_valuation: p = " + std::to_string(p) + " is not prime");
        return Valuation::infinity();
    }
    long vn = padic_valuation(Int(x.get_num()), p).value();
    long vd = padic_valuation(Int(x.get_den()), p).value();
    return Valuation::of(vn - vd);
}

Rat padic_unit_part(const Rat& x, std::uint64_t p)
{
    if (x == 0)
        throw precondition_error("padic_unit_part: zero has no unit part");
    long v = padic_valuation(x, p).value();
    Rat pv;
    Int pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), p, static_cast<unsigned long>(v >= 0 ? v : -v));
    if (v >= 0)
        pv = Rat(1, pw);
    else
        pv = Rat(pw);
    Rat u = x * pv;
    u.canonicalize();
    return u;
}

bool is_square_mod(const Int& u, std::uint64_t p)
{
    if (p == 2 || !is_prime_u64(p))
        throw input_error("is_square_mod: modulus must be an odd prime");
    std::uint64_t r = reduce_mod(u, p);
    if (r == 0)
        throw input_error("is_square_mod: argument divisible by p");
    return powmod_u64(r, (p - 1) / 2, p) == 1;
}

SquareClass square_class(const Rat& x, std::uint64_t p)
{
    if (p == 2 || !is_prime_u64(p))
        throw input_error("square_class: p must be an odd prime");
    if (x == 0)
        throw input_error("square_class: zero has no square class");
    long v = padic_valuation(x, p).value();
    Rat u = padic_unit_part(x, p);
    std::uint64_t num = reduce_mod(Int(u.get_num()), p);
    std::uint64_t den = reduce_mod(Int(u.get_den()), p);
    std::uint64_t res = mulmod_u64(num, invmod_u64(den, p), p);
    bool nonsquare_unit = powmod_u64(res, (p - 1) / 2, p) != 1;
    unsigned char bits = (nonsquare_unit ? 1 : 0) | ((v & 1) ? 2 : 0);
    return static_cast<SquareClass>(bits);
}

SquareClass square_class_mul(SquareClass a, SquareClass b)
{
    return static_cast<SquareClass>(static_cast<unsigned char>(a) ^
                                    static_cast<unsigned char>(b));
}

bool is_trivial(SquareClass c) { return c == SquareClass::one; }

bool is_unramified(SquareClass c)
{
    return c == SquareClass::one || c == SquareClass::unit;
}

std::string to_string(SquareClass c)
{
    switch (c) {
    case SquareClass::one: return "1";
    case SquareClass::unit: return "u";
    case SquareClass::uniformizer: return "p";
    case SquareClass::unit_uniformizer: return "u*p";
    }
    return "?";
}

} // namespace biell
