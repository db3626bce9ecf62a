#pragma once

#include "ideal.hpp"

#include <functional>

namespace polya {

/// Gram matrix of the T2 form restricted to the lattice spanned by the rows of basis.
inline IntMatrix gram_of_rows(const IntMatrix& basis, const IntMatrix& form)
{
    return basis * form * basis.transpose();
}

namespace detail {

struct GramSchmidt {
    RatMatrix mu;
    RatVec b;
};

inline GramSchmidt gram_schmidt(const IntMatrix& g)
{
    const std::size_t n = g.rows();
    GramSchmidt gs{rat_zero(n, n), RatVec(n)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            Rat s = g(i, j);
            for (std::size_t k = 0; k < j; ++k)
                s -= gs.mu[j][k] * gs.mu[i][k] * gs.b[k];
            gs.mu[i][j] = s / gs.b[j];
        }
        Rat s = g(i, i);
        for (std::size_t k = 0; k < i; ++k)
            s -= gs.mu[i][k] * gs.mu[i][k] * gs.b[k];
        gs.b[i] = s;
    }
    return gs;
}

inline Int round_rat(const Rat& q)
{
    return floor(q + Rat(1, 2));
}

inline void swap_basis(IntMatrix& g, IntMatrix& u, std::size_t a, std::size_t b)
{
    u.swap_rows(a, b);
    g.swap_rows(a, b);
    g.swap_cols(a, b);
}

inline void sub_basis(IntMatrix& g, IntMatrix& u, std::size_t k, std::size_t j, const Int& q)
{
    // b_k -= q b_j
    u.add_row(k, j, -q);
    g.add_row(k, j, -q);
    g.add_col(k, j, -q);
}

} // namespace detail

/// Exact LLL (delta = 3/4) on a positive definite integer Gram matrix.
/// Returns the unimodular transform u; the reduced Gram matrix is u g u^T.
inline IntMatrix lll_gram(const IntMatrix& gram)
{
    const std::size_t n = gram.rows();
    IntMatrix g = gram;
    IntMatrix u = IntMatrix::identity(n);
    if (n < 2)
        return u;
    const Rat delta(3, 4);
    std::size_t k = 1;
    for (int guard = 0; k < n; ++guard) {
        if (guard > 100000)
            throw verification_error("LLL did not terminate");
        auto gs = detail::gram_schmidt(g);
        for (std::size_t j = k; j-- > 0;) {
            Int q = detail::round_rat(gs.mu[k][j]);
            if (q != 0) {
                detail::sub_basis(g, u, k, j, q);
                gs = detail::gram_schmidt(g);
            }
        }
        if (gs.b[k] < (delta - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.b[k - 1]) {
            detail::swap_basis(g, u, k, k - 1);
            k = std::max<std::size_t>(k - 1, 1);
        } else {
            ++k;
        }
    }
    return u;
}

/// Fincke-Pohst: all nonzero integer vectors x (up to sign) with x g x^T <= bound,
/// sorted by value. Stops collecting after max_count vectors.
inline std::vector<std::pair<Rat, IntVec>> short_vectors(const IntMatrix& g, const Rat& bound, std::size_t max_count = 5000)
{
    const std::size_t n = g.rows();
    auto gs = detail::gram_schmidt(g);
    std::vector<std::pair<Rat, IntVec>> out;
    IntVec x(n);
    std::function<void(std::size_t, const Rat&)> rec = [&](std::size_t level, const Rat& remaining) {
        if (out.size() >= max_count)
            return;
        const std::size_t i = level;
        Rat c = 0;
        for (std::size_t j = i + 1; j < n; ++j)
            c += gs.mu[j][i] * x[j];
        // Need b_i (x_i + c)^2 <= remaining.
        Rat r = remaining / gs.b[i];
        Int s = isqrt(floor(r) < 0 ? Int(0) : floor(r)) + 1;
        Int lo = floor(-c) - s, hi = ceil(-c) + s;
        for (Int xi = lo; xi <= hi; ++xi) {
            Rat t = Rat(xi) + c;
            Rat used = gs.b[i] * t * t;
            if (used > remaining)
                continue;
            x[i] = xi;
            if (i == 0) {
                if (!vec_is_zero(x)) {
                    // Keep one of +-x: first nonzero coordinate from the top positive.
                    std::size_t top = n;
                    while (top-- > 0 && x[top] == 0) {
                    }
                    if (x[top] > 0)
                        out.emplace_back(bound - (remaining - used), x);
                }
            } else {
                rec(i - 1, remaining - used);
            }
            if (out.size() >= max_count)
                break;
        }
        x[i] = 0;
    };
    rec(n - 1, bound);
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

/// An LLL-reduced Z-basis of a fractional or integral ideal with respect to T2.
struct ReducedIdeal {
    std::vector<Element> basis;  // reduced basis elements
    IntMatrix gram;              // T2 Gram matrix of the reduced basis
};

inline ReducedIdeal reduce_ideal_basis(const Ideal& a)
{
    const Field& K = a.field();
    IntMatrix g = gram_of_rows(a.hnf(), K->t2_gram());
    IntMatrix u = lll_gram(g);
    IntMatrix rows = u * a.hnf();
    ReducedIdeal r;
    r.gram = gram_of_rows(rows, K->t2_gram());
    for (std::size_t i = 0; i < rows.rows(); ++i)
        r.basis.emplace_back(K, rows.row_vec(i));
    return r;
}

/// Small nonzero elements of an integral ideal, ordered by T2. The search
/// radius starts at a multiple of the shortest reduced basis vector and is
/// widened until max_count elements are found (or a hard cap is reached).
inline std::vector<Element> small_elements(const Ideal& a, std::size_t max_count, const Rat& bound_factor = 4)
{
    auto red = reduce_ideal_basis(a);
    const std::size_t n = red.basis.size();
    Rat shortest = red.gram(0, 0);
    for (std::size_t i = 1; i < n; ++i)
        if (Rat(red.gram(i, i)) < shortest)
            shortest = red.gram(i, i);
    Rat bound = shortest * bound_factor;
    std::vector<std::pair<Rat, IntVec>> vs;
    for (int widen = 0; widen < 12; ++widen, bound *= 4) {
        vs = short_vectors(red.gram, bound, 4 * max_count);
        if (vs.size() >= max_count)
            break;
    }
    if (vs.size() > max_count)
        vs.resize(max_count);
    std::vector<Element> out;
    for (const auto& [val, x] : vs) {
        Element e = Element::zero(a.field());
        for (std::size_t i = 0; i < n; ++i)
            if (x[i] != 0)
                e += Rat(x[i]) * red.basis[i];
        out.push_back(e);
    }
    return out;
}

} // namespace polya
