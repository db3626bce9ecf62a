#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace polya {

using Int = mpz_class;
using Rat = mpq_class;

/// Raised when an input violates a documented precondition.
class domain_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a bounded search exhausts its budget without a verdict.
class undecided_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an internal self-check fails; indicates a bug, never bad input.
class verification_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline Int abs(const Int& a) { Int r; mpz_abs(r.get_mpz_t(), a.get_mpz_t()); return r; }

inline int sgn(const Int& a) { return mpz_sgn(a.get_mpz_t()); }

inline Int gcd(const Int& a, const Int& b)
{
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int lcm(const Int& a, const Int& b)
{
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g >= 0.
inline std::tuple<Int, Int, Int> xgcd(const Int& a, const Int& b)
{
    Int g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return {g, s, t};
}

/// Floor division, rounding toward negative infinity.
inline Int floor_div(const Int& a, const Int& b)
{
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/// Least non-negative residue of a modulo |m|.
inline Int mod(const Int& a, const Int& m)
{
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

/// Residue of a modulo m in (-m/2, m/2].
inline Int mod_centered(const Int& a, const Int& m)
{
    Int r = mod(a, m);
    if (2 * r > abs(m))
        r -= abs(m);
    return r;
}

inline Int isqrt(const Int& a)
{
    if (sgn(a) < 0)
        throw domain_error("isqrt of negative integer");
    Int r;
    mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

inline bool is_square(const Int& a)
{
    return sgn(a) >= 0 && mpz_perfect_square_p(a.get_mpz_t()) != 0;
}

inline Int pow(const Int& a, unsigned long e)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
    return r;
}

inline Rat pow(const Rat& a, unsigned long e)
{
    Rat r = 1;
    for (unsigned long i = 0; i < e; ++i)
        r *= a;
    return r;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline Int floor(const Rat& q) { return floor_div(q.get_num(), q.get_den()); }

inline Int ceil(const Rat& q) { return -floor_div(-q.get_num(), q.get_den()); }

/// Exact rational square root, if one exists.
inline std::optional<Rat> rational_sqrt(const Rat& q)
{
    if (sgn(q.get_num()) < 0)
        return std::nullopt;
    if (!is_square(q.get_num()) || !is_square(q.get_den()))
        return std::nullopt;
    Rat r(isqrt(q.get_num()), isqrt(q.get_den()));
    r.canonicalize();
    return r;
}

inline long to_long(const Int& a)
{
    if (!a.fits_slong_p())
        throw std::overflow_error("integer does not fit in long: " + a.get_str());
    return a.get_si();
}

inline bool is_prime(const Int& p)
{
    return sgn(p) > 0 && mpz_probab_prime_p(p.get_mpz_t(), 40) > 0;
}

inline std::vector<long> primes_up_to(long bound)
{
    std::vector<long> out;
    if (bound < 2)
        return out;
    std::vector<bool> sieve(static_cast<std::size_t>(bound) + 1, true);
    for (long i = 2; i <= bound; ++i) {
        if (!sieve[i])
            continue;
        out.push_back(i);
        for (long j = i * i; j <= bound; j += i)
            sieve[j] = false;
    }
    return out;
}

/// Factorization of |n| into primes by trial division followed by Pollard rho.
inline std::map<Int, int> factor(const Int& n_in)
{
    std::map<Int, int> out;
    Int n = abs(n_in);
    if (n == 0)
        throw domain_error("factor(0)");
    for (long p : {2L, 3L, 5L}) {
        while (mod(n, p) == 0) {
            ++out[Int(p)];
            n /= p;
        }
    }
    for (long p = 7, step = 4; p * p <= 1'000'000 && Int(p) * p <= n; p += step, step = 6 - step) {
        while (mod(n, p) == 0) {
            ++out[Int(p)];
            n /= p;
        }
    }
    std::vector<Int> stack;
    if (n > 1)
        stack.push_back(n);
    while (!stack.empty()) {
        Int m = stack.back();
        stack.pop_back();
        if (m == 1)
            continue;
        if (is_prime(m)) {
            ++out[m];
            continue;
        }
        if (is_square(m)) {
            Int r = isqrt(m);
            stack.push_back(r);
            stack.push_back(r);
            continue;
        }
        // Pollard rho, Floyd cycle detection, deterministic increments.
        Int d = m;
        for (unsigned long c = 1; d == m; ++c) {
            Int x = 2, y = 2;
            d = 1;
            while (d == 1) {
                x = mod(x * x + c, m);
                y = mod(y * y + c, m);
                y = mod(y * y + c, m);
                d = gcd(abs(x - y), m);
            }
        }
        stack.push_back(d);
        stack.push_back(m / d);
    }
    return out;
}

inline bool is_squarefree(const Int& n)
{
    if (n == 0)
        return false;
    for (const auto& [p, e] : factor(n))
        if (e > 1)
            return false;
    return true;
}

/// Kronecker symbol (a | n).
inline int kronecker(const Int& a, const Int& n)
{
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

/// p-adic valuation of a nonzero integer.
inline int valuation(Int n, const Int& p)
{
    if (n == 0)
        throw domain_error("valuation of zero");
    int v = 0;
    while (mod(n, p) == 0) {
        n /= p;
        ++v;
    }
    return v;
}

inline Int power_mod(const Int& b, const Int& e, const Int& m)
{
    Int r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Int inverse_mod(const Int& a, const Int& m)
{
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw domain_error("no inverse of " + a.get_str() + " modulo " + m.get_str());
    return r;
}

inline std::string to_string(const Rat& q) { return q.get_str(); }

} // namespace polya
