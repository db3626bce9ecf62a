#pragma once

#include "ideal.hpp"

#include <map>
#include <mutex>

namespace polya {

/// Prime ideal of O_K above the rational prime p, with ramification index e
/// and residue degree f over Q.
struct PrimeIdeal {
    Ideal ideal;
    Int p;
    int e = 1;
    int f = 1;
    /// Position among the primes above p (deterministic order).
    int index = 0;
    /// prod_{sigma != 1} sigma(P); P times this equals p^f O_K.
    Ideal cofactor;

    const Field& field() const { return ideal.field(); }
    const Int& norm() const { return ideal.norm(); }
    std::string label() const { return "(" + p.get_str() + "," + std::to_string(index) + ")"; }

    friend bool operator==(const PrimeIdeal& a, const PrimeIdeal& b) { return a.ideal == b.ideal; }
    friend bool operator<(const PrimeIdeal& a, const PrimeIdeal& b)
    {
        if (a.p != b.p)
            return a.p < b.p;
        return a.index < b.index;
    }
};

namespace detail {

inline std::vector<Int> roots_mod_p(const Int& t, const Int& nm, const Int& p)
{
    // Roots of x^2 - t x + nm modulo p.
    std::vector<Int> out;
    if (p == 2) {
        for (long x = 0; x < 2; ++x)
            if (mod(Int(x * x) - t * x + nm, p) == 0)
                out.push_back(x);
        return out;
    }
    Int D = mod(t * t - 4 * nm, p);
    Int s;
    if (D == 0) {
        s = 0;
    } else {
        if (kronecker(D, p) != 1)
            return out;
        // Tonelli-Shanks.
        Int q = p - 1;
        long sexp = 0;
        while (mod(q, 2) == 0) {
            q /= 2;
            ++sexp;
        }
        Int z = 2;
        while (kronecker(z, p) != -1)
            ++z;
        Int c = power_mod(z, q, p);
        Int r = power_mod(D, (q + 1) / 2, p);
        Int tt = power_mod(D, q, p);
        long m = sexp;
        while (tt != 1) {
            long i = 0;
            Int t2 = tt;
            while (t2 != 1) {
                t2 = mod(t2 * t2, p);
                ++i;
            }
            Int b = c;
            for (long j = 0; j < m - i - 1; ++j)
                b = mod(b * b, p);
            r = mod(r * b, p);
            c = mod(b * b, p);
            tt = mod(tt * c, p);
            m = i;
        }
        s = r;
    }
    Int inv2 = inverse_mod(2, p);
    Int r1 = mod((t + s) * inv2, p), r2 = mod((t - s) * inv2, p);
    out.push_back(r1);
    if (r2 != r1)
        out.push_back(r2);
    std::sort(out.begin(), out.end());
    return out;
}

// Coordinates of x^(p^k) reduced mod p, for integral x.
inline IntVec frobenius_power_mod(const Element& x, const Int& p, int k)
{
    const Field& K = x.field();
    Element r = x;
    for (int i = 0; i < k; ++i) {
        Element base = r;
        Element acc = Element::one(K);
        Int e = p;
        while (e > 0) {
            if (mod(e, 2) == 1) {
                acc = acc * base;
                IntVec c = acc.int_coords();
                for (auto& v : c)
                    v = mod(v, p);
                acc = Element(K, c);
            }
            e /= 2;
            if (e > 0) {
                base = base * base;
                IntVec c = base.int_coords();
                for (auto& v : c)
                    v = mod(v, p);
                base = Element(K, c);
            }
        }
        r = acc;
    }
    IntVec c = r.int_coords();
    for (auto& v : c)
        v = mod(v, p);
    return c;
}

// Radical of p O_K: the kernel of a sufficiently high Frobenius power mod p.
inline Ideal radical_of_p(const Field& K, const Int& p)
{
    const std::size_t n = K->degree();
    int k = 1;
    Int pk = p;
    while (pk < Int(static_cast<long>(n))) {
        pk *= p;
        ++k;
    }
    IntMatrix stacked(0, n);
    for (std::size_t i = 0; i < n; ++i) {
        IntVec e(n);
        e[i] = 1;
        stacked.append_row(frobenius_power_mod(Element(K, e), p, k));
    }
    for (std::size_t i = 0; i < n; ++i) {
        IntVec e(n);
        e[i] = p;
        stacked.append_row(e);
    }
    IntMatrix ker = left_kernel(stacked);
    IntMatrix rows(0, n);
    for (std::size_t i = 0; i < ker.rows(); ++i)
        rows.append_row(IntVec(ker.row(i).begin(), ker.row(i).begin() + static_cast<std::ptrdiff_t>(n)));
    return Ideal::from_lattice(K, rows);
}

inline int log_p(Int n, const Int& p)
{
    int k = 0;
    while (n > 1) {
        if (mod(n, p) != 0)
            throw verification_error("norm of a prime ideal is not a prime power");
        n /= p;
        ++k;
    }
    return k;
}

inline std::vector<PrimeIdeal> compute_primes_above(const Field& K, const Int& p);

struct PrimeRegistry {
    std::mutex mu;
    std::map<std::pair<std::string, Int>, std::shared_ptr<const std::vector<PrimeIdeal>>> table;
};

inline PrimeRegistry& prime_registry()
{
    static PrimeRegistry r;
    return r;
}

} // namespace detail

/// All primes of K above p in deterministic order (memoized).
inline const std::vector<PrimeIdeal>& primes_above(const Field& K, const Int& p)
{
    if (!is_prime(p))
        throw domain_error(p.get_str() + " is not a prime");
    auto& reg = detail::prime_registry();
    auto key = std::make_pair(K->name(), p);
    {
        std::lock_guard lock(reg.mu);
        auto it = reg.table.find(key);
        if (it != reg.table.end())
            return *it->second;
    }
    auto v = std::make_shared<const std::vector<PrimeIdeal>>(detail::compute_primes_above(K, p));
    std::lock_guard lock(reg.mu);
    auto [it, inserted] = reg.table.emplace(key, v);
    return *it->second;
}

namespace detail {

inline PrimeIdeal finish_prime(Ideal P, const Int& p, int e)
{
    PrimeIdeal out;
    out.f = log_p(P.norm(), p);
    out.cofactor = P.conjugate_product();
    out.ideal = std::move(P);
    out.p = p;
    out.e = e;
    return out;
}

inline std::vector<PrimeIdeal> compute_primes_above(const Field& K, const Int& p)
{
    std::vector<PrimeIdeal> out;
    const std::size_t n = K->degree();
    if (K->kind() == FieldKind::rational) {
        out.push_back(finish_prime(Ideal::from_integer(K, p), p, 1));
    } else if (K->kind() == FieldKind::quadratic) {
        Element omega(K, IntVec{0, 1});
        Int t = omega.trace().get_num();
        Int nm = omega.norm().get_num();
        int kr = kronecker(K->discriminant(), p);
        if (kr == -1) {
            out.push_back(finish_prime(Ideal::from_integer(K, p), p, 1));
        } else {
            auto roots = roots_mod_p(t, nm, p);
            if (roots.empty() || (kr == 0) != (roots.size() == 1))
                throw verification_error("inconsistent splitting data at " + p.get_str() + " in " + K->name());
            for (const auto& r : roots) {
                Ideal P = Ideal::from_generators(K, {Element::from_rational(K, p), omega - Element::from_rational(K, r)});
                out.push_back(finish_prime(P, p, kr == 0 ? 2 : 1));
            }
        }
    } else {
        Ideal rad = radical_of_p(K, p);
        std::vector<std::vector<Ideal>> sub;
        for (std::size_t i = 1; i <= 3; ++i) {
            Subfield F = K->subfield(i);
            std::vector<Ideal> ext;
            for (const auto& q : primes_above(F.field, p))
                ext.push_back(extend_ideal(F, q.ideal, K));
            sub.push_back(ext);
        }
        std::vector<Ideal> found;
        for (const auto& a : sub[0])
            for (const auto& b : sub[1])
                for (const auto& c : sub[2]) {
                    Ideal J = rad + a + b + c;
                    if (J.is_unit())
                        continue;
                    if (std::find(found.begin(), found.end(), J) == found.end())
                        found.push_back(J);
                }
        if (found.empty())
            throw verification_error("no prime found above " + p.get_str() + " in " + K->name());
        int f = log_p(found[0].norm(), p);
        const int g = static_cast<int>(found.size());
        if (static_cast<int>(n) % (f * g) != 0)
            throw verification_error("impossible splitting type above " + p.get_str());
        int e = static_cast<int>(n) / (f * g);
        for (auto& J : found) {
            if (log_p(J.norm(), p) != f)
                throw verification_error("unequal residue degrees above " + p.get_str());
            out.push_back(finish_prime(std::move(J), p, e));
        }
    }
    std::sort(out.begin(), out.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) { return a.ideal < b.ideal; });
    // Reconstruction check: prod P^e = p O_K.
    Ideal prod = Ideal::unit(K);
    int sum_ef = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].index = static_cast<int>(i);
        prod *= out[i].ideal.pow(static_cast<unsigned long>(out[i].e));
        sum_ef += out[i].e * out[i].f;
    }
    if (prod != Ideal::from_integer(K, p) || sum_ef != static_cast<int>(n))
        throw verification_error("prime decomposition of " + p.get_str() + " in " + K->name() + " failed to verify");
    return out;
}

} // namespace detail

/// Exponent of P in an integral ideal A.
inline int valuation(const Ideal& A, const PrimeIdeal& P)
{
    if (A.field() != P.field())
        throw domain_error("valuation: ideal and prime from different fields");
    int v = 0;
    Ideal a = A;
    const Int pf = P.norm();
    while (mod(a.norm(), pf) == 0 && P.ideal.contains(a)) {
        a = (a * P.cofactor).divide_exact(pf);
        ++v;
    }
    return v;
}

inline int valuation(const FracIdeal& A, const PrimeIdeal& P)
{
    int v = valuation(A.num(), P);
    if (A.den() != 1)
        v -= P.e * valuation(A.den(), P.p);
    return v;
}

inline int valuation(const Element& x, const PrimeIdeal& P) { return valuation(FracIdeal::principal(x), P); }

/// Factorization of an integral ideal into primes (ordered by p, then index).
inline std::vector<std::pair<PrimeIdeal, int>> factor_ideal(const Ideal& A)
{
    std::vector<std::pair<PrimeIdeal, int>> out;
    if (A.is_unit())
        return out;
    Ideal rest = A;
    for (const auto& [p, k] : factor(A.norm())) {
        for (const auto& P : primes_above(A.field(), p)) {
            int v = 0;
            while (mod(rest.norm(), P.norm()) == 0 && P.ideal.contains(rest)) {
                rest = (rest * P.cofactor).divide_exact(P.norm());
                ++v;
            }
            if (v > 0)
                out.emplace_back(P, v);
        }
    }
    if (!rest.is_unit())
        throw verification_error("ideal factorization left a nontrivial cofactor");
    return out;
}

/// Factorization of a fractional ideal; exponents may be negative.
inline std::vector<std::pair<PrimeIdeal, int>> factor_ideal(const FracIdeal& A)
{
    std::map<PrimeIdeal, int> acc;
    for (auto& [P, v] : factor_ideal(A.num()))
        acc[P] += v;
    if (A.den() != 1)
        for (const auto& [p, k] : factor(A.den()))
            for (const auto& P : primes_above(A.field(), p))
                acc[P] -= P.e * k;
    std::vector<std::pair<PrimeIdeal, int>> out;
    for (auto& [P, v] : acc)
        if (v != 0)
            out.emplace_back(P, v);
    return out;
}

/// Primes of K above the prime q of the subfield F, with e and f relative to F.
inline std::vector<PrimeIdeal> primes_above(const Subfield& F, const PrimeIdeal& q, const Field& K)
{
    if (q.field() != F.field)
        throw domain_error("prime does not belong to the given subfield");
    Ideal qK = extend_ideal(F, q.ideal, K);
    std::vector<PrimeIdeal> out;
    for (auto P : primes_above(K, q.p))
        if (P.ideal.contains(qK)) {
            if (P.e % q.e || P.f % q.f)
                throw verification_error("relative ramification data is not integral");
            P.e /= q.e;
            P.f /= q.f;
            out.push_back(P);
        }
    return out;
}

/// Primes of F with norm at most the bound, ordered by (p, index).
inline std::vector<PrimeIdeal> primes_up_to_norm(const Field& K, long bound)
{
    std::vector<PrimeIdeal> out;
    for (long p : primes_up_to(bound))
        for (const auto& P : primes_above(K, p))
            if (P.norm() <= bound)
                out.push_back(P);
    return out;
}

} // namespace polya
