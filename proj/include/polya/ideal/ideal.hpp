#pragma once

#include "../numfield/element.hpp"

namespace polya {

namespace detail {

// Canonical basis of a full-rank integer lattice: lower triangular with a
// positive diagonal, entries left of the diagonal reduced into [0, diagonal).
// Row 0 is (a, 0, ..., 0) where aZ is the intersection with the first axis.
inline IntMatrix lower_hnf(const IntMatrix& rows, std::size_t n)
{
    IntMatrix rev(rows.rows(), n);
    for (std::size_t i = 0; i < rows.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j)
            rev(i, n - 1 - j) = rows(i, j);
    IntMatrix h = hnf_basis(rev);
    if (h.rows() != n)
        throw domain_error("ideal generators do not span a full-rank lattice");
    IntMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out(i, j) = h(n - 1 - i, n - 1 - j);
    return out;
}

// Coefficients y with y * h = x for a lower-triangular basis h.
inline std::optional<IntVec> solve_lower(const IntMatrix& h, IntVec x)
{
    const std::size_t n = h.rows();
    IntVec y(n);
    for (std::size_t i = n; i-- > 0;) {
        if (mod(x[i], h(i, i)) != 0)
            return std::nullopt;
        y[i] = x[i] / h(i, i);
        if (y[i] != 0)
            for (std::size_t j = 0; j <= i; ++j)
                x[j] -= y[i] * h(i, j);
    }
    return y;
}

} // namespace detail

/// Nonzero integral ideal of O_K in canonical lattice form over the integral basis.
class Ideal {
public:
    Ideal() = default;

    /// The O_K-module spanned over Z by the given integer coordinate rows.
    /// The caller guarantees the rows already span an O_K-module.
    static Ideal from_lattice(Field K, const IntMatrix& rows)
    {
        Ideal a;
        a.K_ = std::move(K);
        a.h_ = detail::lower_hnf(rows, a.K_->degree());
        a.norm_ = 1;
        for (std::size_t i = 0; i < a.h_.rows(); ++i)
            a.norm_ *= a.h_(i, i);
        return a;
    }

    static Ideal unit(Field K)
    {
        const std::size_t n = K->degree();
        return from_lattice(std::move(K), IntMatrix::identity(n));
    }

    static Ideal from_integer(Field K, const Int& a)
    {
        if (a == 0)
            throw domain_error("zero ideal");
        const std::size_t n = K->degree();
        IntMatrix m = IntMatrix::identity(n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = abs(a);
        return from_lattice(std::move(K), m);
    }

    static Ideal principal(const Element& x)
    {
        if (x.is_zero())
            throw domain_error("zero ideal");
        if (!x.is_integral())
            throw domain_error("principal(): element is not integral; use FracIdeal");
        const Field& K = x.field();
        const std::size_t n = K->degree();
        IntMatrix rows(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            IntVec e(n);
            e[i] = 1;
            IntVec r = (Element(K, e) * x).int_coords();
            for (std::size_t j = 0; j < n; ++j)
                rows(i, j) = r[j];
        }
        return from_lattice(K, rows);
    }

    /// The ideal generated by integral elements.
    static Ideal from_generators(Field K, const std::vector<Element>& gens)
    {
        const std::size_t n = K->degree();
        IntMatrix rows(0, n);
        bool nonzero = false;
        for (const auto& g : gens) {
            if (g.field() != K)
                throw domain_error("generator from a different field");
            if (g.is_zero())
                continue;
            nonzero = true;
            for (std::size_t i = 0; i < n; ++i) {
                IntVec e(n);
                e[i] = 1;
                rows.append_row((Element(K, e) * g).int_coords());
            }
        }
        if (!nonzero)
            throw domain_error("all generators are zero");
        return from_lattice(std::move(K), rows);
    }

    const Field& field() const { return K_; }
    const IntMatrix& hnf() const { return h_; }
    const Int& norm() const { return norm_; }
    std::size_t degree() const { return h_.rows(); }
    bool is_unit() const { return norm_ == 1; }

    /// Smallest positive integer in the ideal.
    const Int& min_integer() const { return h_(0, 0); }

    Element basis_element(std::size_t i) const { return Element(K_, h_.row_vec(i)); }

    std::vector<Element> basis() const
    {
        std::vector<Element> out;
        for (std::size_t i = 0; i < degree(); ++i)
            out.push_back(basis_element(i));
        return out;
    }

    bool contains(const Element& x) const
    {
        if (!x.is_integral())
            return false;
        return detail::solve_lower(h_, x.int_coords()).has_value();
    }

    /// Coordinates of x over the ideal's Z-basis.
    std::optional<IntVec> coordinates(const Element& x) const
    {
        if (!x.is_integral())
            return std::nullopt;
        return detail::solve_lower(h_, x.int_coords());
    }

    bool contains(const Ideal& b) const
    {
        check_same(b);
        for (std::size_t i = 0; i < b.degree(); ++i)
            if (!detail::solve_lower(h_, b.h_.row_vec(i)))
                return false;
        return true;
    }

    bool divides(const Ideal& b) const { return contains(b); }

    friend bool operator==(const Ideal& a, const Ideal& b) { return a.K_ == b.K_ && a.h_ == b.h_; }
    friend bool operator!=(const Ideal& a, const Ideal& b) { return !(a == b); }
    /// Arbitrary total order for use as a map key.
    friend bool operator<(const Ideal& a, const Ideal& b)
    {
        if (a.norm_ != b.norm_)
            return a.norm_ < b.norm_;
        for (std::size_t i = 0; i < a.degree(); ++i)
            for (std::size_t j = 0; j <= i; ++j)
                if (a.h_(i, j) != b.h_(i, j))
                    return a.h_(i, j) < b.h_(i, j);
        return false;
    }

    friend Ideal operator*(const Ideal& a, const Ideal& b)
    {
        a.check_same(b);
        if (a.is_unit())
            return b;
        if (b.is_unit())
            return a;
        const std::size_t n = a.degree();
        IntMatrix rows(0, n);
        // N(ab) lies in ab and keeps the elimination small.
        Int nn = a.norm_ * b.norm_;
        for (std::size_t i = 0; i < n; ++i) {
            IntVec e(n);
            e[i] = nn;
            rows.append_row(e);
        }
        auto ab = a.basis(), bb = b.basis();
        for (const auto& x : ab)
            for (const auto& y : bb) {
                IntVec r = (x * y).int_coords();
                for (auto& v : r)
                    v = mod(v, nn);
                rows.append_row(r);
            }
        return from_lattice(a.K_, rows);
    }

    Ideal& operator*=(const Ideal& b) { return *this = *this * b; }

    /// x * A for integral x.
    Ideal times(const Element& x) const
    {
        if (x.is_zero())
            throw domain_error("zero ideal");
        IntMatrix rows(0, degree());
        for (const auto& b : basis())
            rows.append_row((b * x).int_coords());
        return from_lattice(K_, rows);
    }

    Ideal pow(unsigned long e) const
    {
        Ideal r = unit(K_), base = *this;
        while (e) {
            if (e & 1)
                r *= base;
            e >>= 1;
            if (e)
                base *= base;
        }
        return r;
    }

    friend Ideal operator+(const Ideal& a, const Ideal& b)
    {
        a.check_same(b);
        IntMatrix rows = a.h_;
        for (std::size_t i = 0; i < b.degree(); ++i)
            rows.append_row(b.h_.row(i));
        return from_lattice(a.K_, rows);
    }

    /// Lattice intersection.
    friend Ideal intersect(const Ideal& a, const Ideal& b)
    {
        a.check_same(b);
        const std::size_t n = a.degree();
        IntMatrix stacked = a.h_;
        for (std::size_t i = 0; i < n; ++i)
            stacked.append_row(b.h_.row(i));
        IntMatrix k = left_kernel(stacked);
        IntMatrix rows(0, n);
        for (std::size_t i = 0; i < k.rows(); ++i) {
            IntVec u(k.row(i).begin(), k.row(i).begin() + static_cast<std::ptrdiff_t>(n));
            rows.append_row(u * a.h_);
        }
        return from_lattice(a.K_, rows);
    }

    /// Image under the automorphism with the given index.
    Ideal apply(int aut) const
    {
        if (aut == 0)
            return *this;
        return from_lattice(K_, h_ * K_->automorphism(aut));
    }

    /// Exact quotient by an integer dividing every coordinate.
    Ideal divide_exact(const Int& c) const
    {
        IntMatrix m = h_;
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) {
                if (mod(m(i, j), c) != 0)
                    throw domain_error("ideal is not divisible by " + c.get_str());
                m(i, j) /= c;
            }
        return from_lattice(K_, m);
    }

    /// Largest integer c with A contained in c O_K.
    Int content() const
    {
        Int g = 0;
        for (std::size_t i = 0; i < h_.rows(); ++i)
            for (std::size_t j = 0; j <= i; ++j)
                g = gcd(g, h_(i, j));
        return g;
    }

    /// prod_{sigma != 1} sigma(A), so that A times this is N(A) O_K.
    Ideal conjugate_product() const
    {
        Ideal r = unit(K_);
        for (std::size_t k = 1; k < K_->num_automorphisms(); ++k)
            r *= apply(static_cast<int>(k));
        return r;
    }

    /// A / B for B dividing A.
    Ideal divide(const Ideal& b) const
    {
        if (!b.contains(*this))
            throw domain_error("divide(): divisor does not divide the ideal");
        return (*this * b.conjugate_product()).divide_exact(b.norm_);
    }

    std::string str() const { return h_.str(); }

private:
    void check_same(const Ideal& o) const
    {
        if (K_ != o.K_)
            throw domain_error("ideals of different fields");
    }

    Field K_;
    IntMatrix h_;
    Int norm_ = 1;
};

/// Fractional ideal num / den with den > 0 and gcd(den, content(num)) = 1.
class FracIdeal {
public:
    FracIdeal() = default;
    FracIdeal(Ideal num, Int den = 1) : num_(std::move(num)), den_(std::move(den))
    {
        if (den_ <= 0)
            throw domain_error("fractional ideal denominator must be positive");
        normalize();
    }

    static FracIdeal principal(const Element& x)
    {
        if (x.is_zero())
            throw domain_error("zero ideal");
        Int d = x.denominator();
        return FracIdeal(Ideal::principal(Rat(d) * x), d);
    }

    static FracIdeal unit(Field K) { return FracIdeal(Ideal::unit(std::move(K))); }

    const Ideal& num() const { return num_; }
    const Int& den() const { return den_; }
    const Field& field() const { return num_.field(); }
    bool is_integral() const { return den_ == 1; }

    Rat norm() const
    {
        Rat r(num_.norm(), ::polya::pow(den_, num_.degree()));
        r.canonicalize();
        return r;
    }

    friend FracIdeal operator*(const FracIdeal& a, const FracIdeal& b) { return FracIdeal(a.num_ * b.num_, a.den_ * b.den_); }

    FracIdeal inverse() const
    {
        // (num/den)^{-1} = den * conj_product(num) / N(num).
        Ideal c = num_.conjugate_product();
        return FracIdeal(c.times(Element::from_rational(field(), den_)), num_.norm());
    }

    FracIdeal pow(long e) const
    {
        FracIdeal base = e < 0 ? inverse() : *this;
        unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
        return FracIdeal(base.num_.pow(k), ::polya::pow(base.den_, k));
    }

    FracIdeal apply(int aut) const { return FracIdeal(num_.apply(aut), den_); }

    bool contains(const Element& x) const { return num_.contains(Rat(den_) * x); }

    friend bool operator==(const FracIdeal& a, const FracIdeal& b) { return a.den_ == b.den_ && a.num_ == b.num_; }

    std::string str() const { return den_ == 1 ? num_.str() : num_.str() + "/" + den_.get_str(); }

private:
    void normalize()
    {
        Int g = gcd(den_, num_.content());
        if (g > 1) {
            num_ = num_.divide_exact(g);
            den_ /= g;
        }
    }

    Ideal num_;
    Int den_ = 1;
};

/// a O_K for an ideal a of the subfield F.
inline Ideal extend_ideal(const Subfield& F, const Ideal& a, const Field& K)
{
    if (a.field() != F.field)
        throw domain_error("ideal does not belong to the given subfield");
    std::vector<Element> gens;
    for (const auto& b : a.basis())
        gens.push_back(embed(F, b, K));
    return Ideal::from_generators(K, gens);
}

inline FracIdeal extend_ideal(const Subfield& F, const FracIdeal& a, const Field& K)
{
    return FracIdeal(extend_ideal(F, a.num(), K), a.den());
}

/// A cap O_F for an ideal A of K, as an ideal of F.
inline Ideal contract_ideal(const Subfield& F, const Ideal& A)
{
    const std::size_t nf = F.embedding.rows();
    IntMatrix stacked = F.embedding;
    for (std::size_t i = 0; i < A.degree(); ++i)
        stacked.append_row(A.hnf().row(i));
    IntMatrix k = left_kernel(stacked);
    IntMatrix rows(0, nf);
    for (std::size_t i = 0; i < k.rows(); ++i) {
        IntVec y(k.row(i).begin(), k.row(i).begin() + static_cast<std::ptrdiff_t>(nf));
        if (!vec_is_zero(y))
            rows.append_row(y);
    }
    return Ideal::from_lattice(F.field, rows);
}

/// Relative ideal norm N_{K/F}(A) = (prod_{sigma in Gal(K/F)} sigma(A)) cap O_F.
inline Ideal relative_ideal_norm(const Subfield& F, const Ideal& A)
{
    Ideal p = Ideal::unit(A.field());
    for (int s : F.galois)
        p *= A.apply(s);
    return contract_ideal(F, p);
}

} // namespace polya
