#pragma once

#include "../integer.hpp"

#include <cassert>
#include <initializer_list>
#include <ostream>
#include <span>
#include <sstream>
#include <vector>

namespace polya {

using IntVec = std::vector<Int>;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> init)
    {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw domain_error("ragged matrix initializer");
            for (long v : row)
                data_.emplace_back(v);
        }
    }

    static IntMatrix identity(std::size_t n)
    {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    static IntMatrix from_rows(const std::vector<IntVec>& rows, std::size_t cols)
    {
        IntMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols)
                throw domain_error("row length mismatch");
            for (std::size_t j = 0; j < cols; ++j)
                m(i, j) = rows[i][j];
        }
        return m;
    }

    static IntMatrix diagonal(const IntVec& d)
    {
        IntMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i)
            m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<Int> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const Int> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    IntVec row_vec(std::size_t i) const { return {row(i).begin(), row(i).end()}; }

    std::vector<IntVec> row_list() const
    {
        std::vector<IntVec> out;
        for (std::size_t i = 0; i < rows_; ++i)
            out.push_back(row_vec(i));
        return out;
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }

    void swap_cols(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t i = 0; i < rows_; ++i)
            std::swap((*this)(i, a), (*this)(i, b));
    }

    /// row[dst] += k * row[src]
    void add_row(std::size_t dst, std::size_t src, const Int& k)
    {
        if (k == 0)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(dst, j) += k * (*this)(src, j);
    }

    /// col[dst] += k * col[src]
    void add_col(std::size_t dst, std::size_t src, const Int& k)
    {
        if (k == 0)
            return;
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, dst) += k * (*this)(i, src);
    }

    void negate_row(std::size_t i)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(i, j) = -(*this)(i, j);
    }

    void negate_col(std::size_t j)
    {
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, j) = -(*this)(i, j);
    }

    void append_row(std::span<const Int> r)
    {
        if (rows_ == 0 && cols_ == 0)
            cols_ = r.size();
        if (r.size() != cols_)
            throw domain_error("append_row: length mismatch");
        data_.insert(data_.end(), r.begin(), r.end());
        ++rows_;
    }

    /// Keep the first n rows.
    void truncate_rows(std::size_t n)
    {
        if (n >= rows_)
            return;
        rows_ = n;
        data_.resize(rows_ * cols_);
    }

    IntMatrix transpose() const
    {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    IntMatrix submatrix(std::size_t r0, std::size_t nr, std::size_t c0, std::size_t nc) const
    {
        IntMatrix s(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j)
                s(i, j) = (*this)(r0 + i, c0 + j);
        return s;
    }

    bool is_zero() const
    {
        for (const auto& v : data_)
            if (v != 0)
                return false;
        return true;
    }

    bool row_is_zero(std::size_t i) const
    {
        for (const auto& v : row(i))
            if (v != 0)
                return false;
        return true;
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.cols_ != b.rows_)
            throw domain_error("matrix product dimension mismatch");
        IntMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Int& aik = a(i, k);
                if (aik == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw domain_error("matrix sum dimension mismatch");
        IntMatrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i)
            c.data_[i] += b.data_[i];
        return c;
    }

    friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw domain_error("matrix difference dimension mismatch");
        IntMatrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i)
            c.data_[i] -= b.data_[i];
        return c;
    }

    friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m)
    {
        os << '[';
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i ? ",[" : "[");
            for (std::size_t j = 0; j < m.cols_; ++j)
                os << (j ? "," : "") << m(i, j);
            os << ']';
        }
        return os << ']';
    }

    std::string str() const
    {
        std::ostringstream ss;
        ss << *this;
        return ss.str();
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

/// Row vector times matrix.
inline IntVec operator*(std::span<const Int> v, const IntMatrix& m)
{
    if (v.size() != m.rows())
        throw domain_error("vector-matrix dimension mismatch");
    IntVec out(m.cols());
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] == 0)
            continue;
        for (std::size_t j = 0; j < m.cols(); ++j)
            out[j] += v[k] * m(k, j);
    }
    return out;
}

inline IntVec operator*(const IntVec& v, const IntMatrix& m) { return std::span<const Int>(v) * m; }

inline IntVec vec_add(const IntVec& a, const IntVec& b)
{
    IntVec c = a;
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] += b[i];
    return c;
}

inline IntVec vec_sub(const IntVec& a, const IntVec& b)
{
    IntVec c = a;
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] -= b[i];
    return c;
}

inline IntVec vec_scale(const IntVec& a, const Int& k)
{
    IntVec c = a;
    for (auto& x : c)
        x *= k;
    return c;
}

inline bool vec_is_zero(const IntVec& a)
{
    for (const auto& x : a)
        if (x != 0)
            return false;
    return true;
}

/// Determinant by fraction-free Bareiss elimination.
inline Int determinant(IntMatrix m)
{
    const std::size_t n = m.rows();
    if (n != m.cols())
        throw domain_error("determinant of non-square matrix");
    if (n == 0)
        return 1;
    int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m(piv, k) == 0)
                ++piv;
            if (piv == n)
                return 0;
            m.swap_rows(k, piv);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = t;
            }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

} // namespace polya
