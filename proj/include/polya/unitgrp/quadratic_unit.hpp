#pragma once

#include "../classgrp/forms.hpp"
#include "../numfield/element.hpp"

namespace polya {

/// Fundamental unit eps > 1 of a real quadratic field. Found as the first
/// continued-fraction convergent p/q of omega with N(p - q omega) = +-1.
inline Element quadratic_fundamental_unit(const Field& K)
{
    if (K->kind() != FieldKind::quadratic || K->d() < 0)
        throw domain_error("fundamental unit requested for a field that is not real quadratic");
    const Int d = K->d();
    const bool one_mod_4 = mod(d, 4) == 1;
    // omega = (P + sqrt D) / Q
    Int P = one_mod_4 ? 1 : 0;
    Int Q = one_mod_4 ? 2 : 1;
    const Int D = d;
    const Int s = isqrt(D);
    const Int t = one_mod_4 ? 1 : 0;              // trace of omega
    const Int nm = one_mod_4 ? Int((1 - d) / 4) : Int(-d);  // norm of omega
    Int p0 = 0, p1 = 1, q0 = 1, q1 = 0;
    for (int step = 0; step < 1'000'000; ++step) {
        Int a = floor_div(P + s, Q);
        Int p2 = a * p1 + p0, q2 = a * q1 + q0;
        p0 = p1;
        p1 = p2;
        q0 = q1;
        q1 = q2;
        // N(p - q omega) = p^2 - t p q + nm q^2
        Int n = p1 * p1 - t * p1 * q1 + nm * q1 * q1;
        if (n == 1 || n == -1) {
            // eps = p - q * conj(omega) = (p - q t) + q omega
            Rat half = one_mod_4 ? Rat(1, 2) : Rat(0);
            Rat rad = one_mod_4 ? Rat(q1) / 2 : Rat(q1);
            return Element::from_power(K, {Rat(p1 - q1 * t) + half * q1, rad});
        }
        P = a * Q - P;
        Q = (D - P * P) / Q;
    }
    throw verification_error("continued fraction of omega did not produce a unit for " + K->name());
}

/// Class number of a quadratic field from binary quadratic forms.
inline Int quadratic_class_number(const Field& K)
{
    if (K->kind() != FieldKind::quadratic)
        throw domain_error("quadratic class number requested for " + K->name());
    const Int D = K->discriminant();
    if (D < 0)
        return count_reduced_forms(D);
    Int hplus = count_form_cycles(D);
    return quadratic_fundamental_unit(K).norm() == -1 ? hplus : hplus / 2;
}

} // namespace polya
