#pragma once

#include "int_matrix.hpp"

#include <optional>

namespace polya {

/// Row Hermite normal form together with the unimodular transform u, u * m = h.
///
/// Pivots are positive and the entries above each pivot lie in [0, pivot).
/// Zero rows are collected at the bottom; rows [rank, m.rows()) of u span the
/// left kernel of m.
struct HnfResult {
    IntMatrix h;
    IntMatrix u;
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;

    /// The non-zero part of h.
    IntMatrix basis() const { return h.submatrix(0, rank, 0, h.cols()); }

    /// Rows of u that generate the left kernel of the input.
    IntMatrix kernel() const { return u.submatrix(rank, u.rows() - rank, 0, u.cols()); }
};

namespace detail {

// Smallest-absolute-value nonzero pivot in column col among rows [from, rows).
inline std::optional<std::size_t> min_pivot_in_column(const IntMatrix& h, std::size_t col, std::size_t from)
{
    std::optional<std::size_t> best;
    for (std::size_t i = from; i < h.rows(); ++i) {
        if (h(i, col) == 0)
            continue;
        if (!best || abs(h(i, col)) < abs(h(*best, col)))
            best = i;
    }
    return best;
}

} // namespace detail

inline HnfResult hnf_with_transform(const IntMatrix& m, bool track_transform = true)
{
    HnfResult res{m, track_transform ? IntMatrix::identity(m.rows()) : IntMatrix{}, {}, 0};
    IntMatrix& h = res.h;
    IntMatrix& u = res.u;
    std::size_t row = 0;
    for (std::size_t col = 0; col < h.cols() && row < h.rows(); ++col) {
        bool have_pivot = false;
        while (true) {
            auto p = detail::min_pivot_in_column(h, col, row);
            if (!p)
                break;
            have_pivot = true;
            h.swap_rows(row, *p);
            if (track_transform)
                u.swap_rows(row, *p);
            bool cleared = true;
            for (std::size_t i = row + 1; i < h.rows(); ++i) {
                if (h(i, col) == 0)
                    continue;
                Int q = floor_div(h(i, col), h(row, col));
                h.add_row(i, row, -q);
                if (track_transform)
                    u.add_row(i, row, -q);
                if (h(i, col) != 0)
                    cleared = false;
            }
            if (cleared)
                break;
        }
        if (!have_pivot)
            continue;
        if (h(row, col) < 0) {
            h.negate_row(row);
            if (track_transform)
                u.negate_row(row);
        }
        for (std::size_t i = 0; i < row; ++i) {
            Int q = floor_div(h(i, col), h(row, col));
            h.add_row(i, row, -q);
            if (track_transform)
                u.add_row(i, row, -q);
        }
        res.pivots.push_back(col);
        ++row;
    }
    res.rank = row;
    return res;
}

/// Row Hermite normal form of m; returns (h, u) with u unimodular and u * m = h.
inline std::pair<IntMatrix, IntMatrix> hnf(const IntMatrix& m)
{
    auto r = hnf_with_transform(m);
    return {std::move(r.h), std::move(r.u)};
}

/// HNF basis of the lattice spanned by the rows of m (zero rows dropped).
inline IntMatrix hnf_basis(const IntMatrix& m)
{
    return hnf_with_transform(m, false).basis();
}

/// Solves y * h = x for an echelon basis h with the given pivots.
inline std::optional<IntVec> solve_echelon(const IntMatrix& h, const std::vector<std::size_t>& pivots,
                                           std::span<const Int> x)
{
    IntVec rem(x.begin(), x.end());
    IntVec y(pivots.size());
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        const Int& piv = h(i, pivots[i]);
        const Int& r = rem[pivots[i]];
        if (r == 0)
            continue;
        if (mod(r, piv) != 0)
            return std::nullopt;
        y[i] = r / piv;
        for (std::size_t j = 0; j < rem.size(); ++j)
            rem[j] -= y[i] * h(i, j);
    }
    if (!vec_is_zero(rem))
        return std::nullopt;
    return y;
}

/// Pivot columns of a matrix already in row echelon form.
inline std::vector<std::size_t> echelon_pivots(const IntMatrix& h)
{
    std::vector<std::size_t> p;
    std::size_t col = 0;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        while (col < h.cols() && h(i, col) == 0)
            ++col;
        if (col == h.cols())
            break;
        p.push_back(col++);
    }
    return p;
}

/// Basis of the left integer kernel {y : y * m = 0}.
inline IntMatrix left_kernel(const IntMatrix& m)
{
    return hnf_with_transform(m).kernel();
}

/// Smith normal form d = l * m * r with l, r unimodular. r_inv is the inverse of r.
struct SnfResult {
    IntMatrix d;
    IntMatrix l;
    IntMatrix r;
    IntMatrix r_inv;

    /// Diagonal entries, padded with zeros to min(rows, cols).
    IntVec diagonal() const
    {
        IntVec out;
        for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i)
            out.push_back(d(i, i));
        return out;
    }
};

inline SnfResult snf_full(const IntMatrix& m)
{
    SnfResult s{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols()), IntMatrix::identity(m.cols())};
    IntMatrix& d = s.d;
    const std::size_t n = std::min(d.rows(), d.cols());
    for (std::size_t k = 0; k < n; ++k) {
        bool exhausted = false;
        while (true) {
            std::optional<std::pair<std::size_t, std::size_t>> best;
            for (std::size_t i = k; i < d.rows(); ++i)
                for (std::size_t j = k; j < d.cols(); ++j)
                    if (d(i, j) != 0 && (!best || abs(d(i, j)) < abs(d(best->first, best->second))))
                        best = {i, j};
            if (!best) {
                exhausted = true;
                break;
            }
            d.swap_rows(k, best->first);
            s.l.swap_rows(k, best->first);
            d.swap_cols(k, best->second);
            s.r.swap_cols(k, best->second);
            s.r_inv.swap_rows(k, best->second);

            bool clean = true;
            for (std::size_t i = k + 1; i < d.rows(); ++i) {
                if (d(i, k) == 0)
                    continue;
                Int q = floor_div(d(i, k), d(k, k));
                d.add_row(i, k, -q);
                s.l.add_row(i, k, -q);
                if (d(i, k) != 0)
                    clean = false;
            }
            for (std::size_t j = k + 1; j < d.cols(); ++j) {
                if (d(k, j) == 0)
                    continue;
                Int q = floor_div(d(k, j), d(k, k));
                d.add_col(j, k, -q);
                s.r.add_col(j, k, -q);
                s.r_inv.add_row(k, j, q);
                if (d(k, j) != 0)
                    clean = false;
            }
            if (!clean)
                continue;
            // The pivot must divide the whole remaining block.
            std::optional<std::size_t> bad_row;
            for (std::size_t i = k + 1; i < d.rows() && !bad_row; ++i)
                for (std::size_t j = k + 1; j < d.cols(); ++j)
                    if (mod(d(i, j), d(k, k)) != 0) {
                        bad_row = i;
                        break;
                    }
            if (!bad_row)
                break;
            d.add_row(k, *bad_row, 1);
            s.l.add_row(k, *bad_row, 1);
        }
        if (exhausted)
            break;
        if (d(k, k) < 0) {
            d.negate_row(k);
            s.l.negate_row(k);
        }
    }
    return s;
}

/// Smith normal form; returns (d, l, r) with l * m * r = d.
inline std::tuple<IntMatrix, IntMatrix, IntMatrix> snf(const IntMatrix& m)
{
    auto s = snf_full(m);
    return {std::move(s.d), std::move(s.l), std::move(s.r)};
}

} // namespace polya
