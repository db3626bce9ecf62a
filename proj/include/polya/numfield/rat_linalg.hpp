#pragma once

#include "../abelian/int_matrix.hpp"

#include <optional>
#include <vector>

namespace polya {

using RatVec = std::vector<Rat>;
using RatMatrix = std::vector<RatVec>;

inline RatMatrix rat_zero(std::size_t r, std::size_t c) { return RatMatrix(r, RatVec(c)); }

inline RatMatrix rat_identity(std::size_t n)
{
    RatMatrix m = rat_zero(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

inline RatMatrix to_rat(const IntMatrix& m)
{
    RatMatrix r = rat_zero(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r[i][j] = m(i, j);
    return r;
}

inline RatVec to_rat(const IntVec& v) { return RatVec(v.begin(), v.end()); }

inline RatMatrix rat_mul(const RatMatrix& a, const RatMatrix& b)
{
    const std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    RatMatrix c = rat_zero(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0)
                continue;
            for (std::size_t j = 0; j < m; ++j)
                c[i][j] += a[i][t] * b[t][j];
        }
    return c;
}

inline RatVec rat_mul(const RatVec& v, const RatMatrix& m)
{
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    RatVec out(cols);
    for (std::size_t t = 0; t < v.size(); ++t) {
        if (v[t] == 0)
            continue;
        for (std::size_t j = 0; j < cols; ++j)
            out[j] += v[t] * m[t][j];
    }
    return out;
}

inline Rat rat_trace(const RatMatrix& m)
{
    Rat t = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
        t += m[i][i];
    return t;
}

/// Inverse by Gauss-Jordan; throws on a singular matrix.
inline RatMatrix rat_inverse(RatMatrix a)
{
    const std::size_t n = a.size();
    RatMatrix inv = rat_identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0)
            ++p;
        if (p == n)
            throw domain_error("singular rational matrix");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        Rat piv = a[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] /= piv;
            inv[c][j] /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0)
                continue;
            Rat f = a[i][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] -= f * a[c][j];
                inv[i][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

inline Rat rat_determinant(RatMatrix a)
{
    const std::size_t n = a.size();
    Rat det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a[i][c] == 0)
                continue;
            Rat f = a[i][c] / a[c][c];
            for (std::size_t j = c; j < n; ++j)
                a[i][j] -= f * a[c][j];
        }
    }
    return det;
}

/// Solves x * a = b for x, where the rows of a are linearly independent.
inline std::optional<RatVec> rat_solve_left(const RatMatrix& a, const RatVec& b)
{
    const std::size_t m = a.size();
    const std::size_t n = b.size();
    // Augmented system a^T x^T = b^T, n equations in m unknowns.
    RatMatrix sys = rat_zero(n, m + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j)
            sys[i][j] = a[j][i];
        sys[i][m] = b[i];
    }
    std::vector<std::size_t> pivcol;
    std::size_t row = 0;
    for (std::size_t c = 0; c < m && row < n; ++c) {
        std::size_t p = row;
        while (p < n && sys[p][c] == 0)
            ++p;
        if (p == n)
            continue;
        std::swap(sys[p], sys[row]);
        Rat piv = sys[row][c];
        for (auto& v : sys[row])
            v /= piv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == row || sys[i][c] == 0)
                continue;
            Rat f = sys[i][c];
            for (std::size_t j = 0; j <= m; ++j)
                sys[i][j] -= f * sys[row][j];
        }
        pivcol.push_back(c);
        ++row;
    }
    for (std::size_t i = row; i < n; ++i)
        if (sys[i][m] != 0)
            return std::nullopt;
    RatVec x(m);
    for (std::size_t i = 0; i < pivcol.size(); ++i)
        x[pivcol[i]] = sys[i][m];
    return x;
}

/// Common denominator of all entries.
inline Int common_denominator(const RatMatrix& m)
{
    Int d = 1;
    for (const auto& r : m)
        for (const auto& v : r)
            d = lcm(d, v.get_den());
    return d;
}

inline Int common_denominator(const RatVec& v)
{
    Int d = 1;
    for (const auto& x : v)
        d = lcm(d, x.get_den());
    return d;
}

/// Characteristic polynomial coefficients c_0..c_n (monic, c_n = 1) by Faddeev-LeVerrier.
inline RatVec char_poly(const RatMatrix& a)
{
    const std::size_t n = a.size();
    RatVec c(n + 1);
    c[n] = 1;
    RatMatrix mk = rat_zero(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        RatMatrix am = rat_mul(a, mk);
        for (std::size_t i = 0; i < n; ++i)
            am[i][i] += c[n - k + 1];
        mk = am;
        c[n - k] = -rat_trace(rat_mul(a, mk)) / Rat(static_cast<long>(k));
    }
    return c;
}

} // namespace polya
