#pragma once

#include "../integer.hpp"

#include <set>
#include <tuple>

namespace polya {

/// Number of reduced primitive positive definite forms of discriminant D < 0.
inline Int count_reduced_forms(const Int& D)
{
    if (D >= 0 || mod(D, 4) > 1)
        throw domain_error("not a negative discriminant: " + D.get_str());
    Int count = 0;
    const Int N = -D;
    // a <= sqrt(|D| / 3)
    for (Int a = 1; 3 * a * a <= N; ++a) {
        for (Int b = -a + 1; b <= a; ++b) {
            Int num = b * b - D;
            if (mod(num, 4 * a) != 0)
                continue;
            Int c = num / (4 * a);
            if (c < a)
                continue;
            if (c == a && b < 0)
                continue;
            if (gcd(gcd(a, abs(b)), c) != 1)
                continue;
            ++count;
        }
    }
    return count;
}

/// Narrow class number h+(D) for a fundamental D > 0: the number of cycles of
/// reduced indefinite forms under the reduction operator.
inline Int count_form_cycles(const Int& D)
{
    if (D <= 0 || is_square(D))
        throw domain_error("not a positive non-square discriminant: " + D.get_str());
    const Int r = isqrt(D);
    using Form = std::tuple<Int, Int, Int>;
    std::set<Form> reduced;
    for (Int b = 1; b <= r; ++b) {
        if (mod(b - D, 2) != 0)
            continue;
        Int num = b * b - D;  // = 4ac < 0
        for (Int a = 1; 2 * a <= r + b + 1; ++a) {
            // sqrt D - b < 2|a| < sqrt D + b
            Int lo = 2 * a + b;
            if (lo * lo <= D)
                continue;
            Int hi = 2 * a - b;
            if (hi > 0 && hi * hi >= D)
                continue;
            if (mod(num, 4 * a) != 0)
                continue;
            Int c = num / (4 * a);
            if (gcd(gcd(a, b), abs(c)) != 1)
                continue;
            reduced.insert({a, b, c});
            reduced.insert({-a, b, -c});
        }
    }
    auto rho = [&](const Form& f) {
        const auto& [a, b, c] = f;
        Int ac = abs(c);
        Int b2 = r - mod(r + b, 2 * ac);
        Int c2 = (b2 * b2 - D) / (4 * c);
        return Form{c, b2, c2};
    };
    std::set<Form> seen;
    Int cycles = 0;
    for (const auto& f : reduced) {
        if (seen.count(f))
            continue;
        ++cycles;
        Form g = f;
        do {
            if (!reduced.count(g))
                throw verification_error("reduction operator left the set of reduced forms");
            seen.insert(g);
            g = rho(g);
        } while (g != f);
    }
    return cycles;
}

} // namespace polya
