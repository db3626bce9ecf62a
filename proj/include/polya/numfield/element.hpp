#pragma once

#include "number_field.hpp"

namespace polya {

/// Element of a number field in rational coordinates over its integral basis.
class Element {
public:
    Element() = default;
    Element(Field K, RatVec c) : K_(std::move(K)), c_(std::move(c))
    {
        if (c_.size() != K_->degree())
            throw domain_error("element coordinate vector has wrong length");
    }
    Element(Field K, const IntVec& c) : Element(std::move(K), to_rat(c)) {}

    static Element from_rational(Field K, const Rat& a)
    {
        RatVec c(K->degree());
        c[0] = a;
        return Element(std::move(K), std::move(c));
    }

    static Element zero(Field K) { return from_rational(std::move(K), 0); }
    static Element one(Field K) { return from_rational(std::move(K), 1); }

    static Element from_power(Field K, const RatVec& p)
    {
        RatVec c = rat_mul(p, K->power_to_basis());
        return Element(std::move(K), std::move(c));
    }

    /// sqrt of the i-th power-basis radical (1: sqrt m1, 2: sqrt m2, 3: their product).
    static Element radical(Field K, std::size_t i)
    {
        RatVec p(K->degree());
        p.at(i) = 1;
        return from_power(std::move(K), p);
    }

    const Field& field() const { return K_; }
    const RatVec& coords() const { return c_; }
    const Rat& operator[](std::size_t i) const { return c_[i]; }
    std::size_t degree() const { return c_.size(); }

    RatVec power_coords() const { return rat_mul(c_, K_->basis_in_power()); }

    bool is_zero() const
    {
        for (const auto& v : c_)
            if (v != 0)
                return false;
        return true;
    }

    bool is_integral() const
    {
        for (const auto& v : c_)
            if (!is_integer(v))
                return false;
        return true;
    }

    bool is_rational() const
    {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0)
                return false;
        return true;
    }

    Int denominator() const { return common_denominator(c_); }

    IntVec int_coords() const
    {
        IntVec out(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (!is_integer(c_[i]))
                throw domain_error("element is not integral");
            out[i] = c_[i].get_num();
        }
        return out;
    }

    friend Element operator+(const Element& a, const Element& b)
    {
        a.check_same(b);
        RatVec c = a.c_;
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] += b.c_[i];
        return Element(a.K_, std::move(c));
    }

    friend Element operator-(const Element& a, const Element& b)
    {
        a.check_same(b);
        RatVec c = a.c_;
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] -= b.c_[i];
        return Element(a.K_, std::move(c));
    }

    Element operator-() const
    {
        RatVec c = c_;
        for (auto& v : c)
            v = -v;
        return Element(K_, std::move(c));
    }

    friend Element operator*(const Element& a, const Element& b)
    {
        a.check_same(b);
        const std::size_t n = a.c_.size();
        RatVec c(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (a.c_[i] == 0)
                continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (b.c_[j] == 0)
                    continue;
                Rat f = a.c_[i] * b.c_[j];
                const IntVec& s = a.K_->structure(i, j);
                for (std::size_t k = 0; k < n; ++k)
                    if (s[k] != 0)
                        c[k] += f * s[k];
            }
        }
        return Element(a.K_, std::move(c));
    }

    friend Element operator*(const Rat& q, const Element& a)
    {
        RatVec c = a.c_;
        for (auto& v : c)
            v *= q;
        return Element(a.K_, std::move(c));
    }

    Element& operator+=(const Element& o) { return *this = *this + o; }
    Element& operator-=(const Element& o) { return *this = *this - o; }
    Element& operator*=(const Element& o) { return *this = *this * o; }

    friend bool operator==(const Element& a, const Element& b) { return a.K_ == b.K_ && a.c_ == b.c_; }

    /// Image under the automorphism with the given index.
    Element apply(int aut) const
    {
        if (aut == 0)
            return *this;
        const IntMatrix& m = K_->automorphism(aut);
        const std::size_t n = c_.size();
        RatVec c(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (c_[i] == 0)
                continue;
            for (std::size_t j = 0; j < n; ++j)
                c[j] += c_[i] * m(i, j);
        }
        return Element(K_, std::move(c));
    }

    /// Absolute norm N_{K/Q}.
    Rat norm() const
    {
        Element p = *this;
        for (std::size_t k = 1; k < K_->num_automorphisms(); ++k)
            p *= apply(static_cast<int>(k));
        return p.c_[0];
    }

    Rat trace() const
    {
        Element s = *this;
        for (std::size_t k = 1; k < K_->num_automorphisms(); ++k)
            s += apply(static_cast<int>(k));
        return s.c_[0];
    }

    Element inverse() const
    {
        if (is_zero())
            throw domain_error("inverse of zero");
        Element p = one(K_);
        for (std::size_t k = 1; k < K_->num_automorphisms(); ++k)
            p *= apply(static_cast<int>(k));
        Rat nrm = (p * *this).c_[0];
        return (Rat(1) / nrm) * p;
    }

    Element pow(long e) const
    {
        Element base = e < 0 ? inverse() : *this;
        unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
        Element r = one(K_);
        while (k) {
            if (k & 1)
                r *= base;
            base *= base;
            k >>= 1;
        }
        return r;
    }

    /// Exact value of Tr(x * conj(x)).
    Rat t2() const { return (*this * apply(K_->conjugation())).trace(); }

    std::string str() const { return K_->format_power(power_coords()); }

private:
    void check_same(const Element& o) const
    {
        if (K_ != o.K_)
            throw domain_error("elements of different fields");
    }

    Field K_;
    RatVec c_;
};

inline Element embed(const Subfield& F, const Element& x, const Field& K)
{
    if (x.field() != F.field)
        throw domain_error("element does not belong to the given subfield");
    if (F.embedding.cols() != K->degree())
        throw domain_error("subfield embedding does not target " + K->name());
    const std::size_t n = K->degree();
    RatVec c(n);
    for (std::size_t i = 0; i < x.degree(); ++i)
        for (std::size_t j = 0; j < n; ++j)
            c[j] += x[i] * F.embedding(i, j);
    return Element(K, std::move(c));
}

/// Inverse of embed; nullopt if x does not lie in the subfield.
inline std::optional<Element> restrict_to(const Subfield& F, const Element& x)
{
    auto y = rat_solve_left(to_rat(F.embedding), x.coords());
    if (!y)
        return std::nullopt;
    return Element(F.field, std::move(*y));
}

/// prod over Gal(K/F) of sigma(x), as an element of F.
inline Element relative_norm(const Subfield& F, const Element& x)
{
    Element p = Element::one(x.field());
    for (int s : F.galois)
        p *= x.apply(s);
    auto r = restrict_to(F, p);
    if (!r)
        throw verification_error("relative norm does not lie in the base field");
    return *r;
}

namespace detail {

// Elements of Q(sqrt m) as pairs (a, b) = a + b sqrt m.
struct QuadPair {
    Rat a, b;
};

inline QuadPair qp_mul(const QuadPair& x, const QuadPair& y, const Int& m)
{
    return {x.a * y.a + x.b * y.b * m, x.a * y.b + x.b * y.a};
}

inline std::optional<QuadPair> qp_sqrt(const QuadPair& x, const Int& m)
{
    if (x.b == 0) {
        if (auto r = rational_sqrt(x.a))
            return QuadPair{*r, 0};
        if (auto r = rational_sqrt(x.a / m))
            return QuadPair{0, *r};
        return std::nullopt;
    }
    auto s = rational_sqrt(x.a * x.a - x.b * x.b * m);
    if (!s)
        return std::nullopt;
    for (const Rat& sg : {*s, Rat(-*s)}) {
        auto u = rational_sqrt((x.a + sg) / 2);
        if (!u || *u == 0)
            continue;
        QuadPair y{*u, x.b / (2 * *u)};
        QuadPair sq = qp_mul(y, y, m);
        if (sq.a == x.a && sq.b == x.b)
            return y;
    }
    return std::nullopt;
}

} // namespace detail

/// Square root in K when x is a square, computed exactly through the tower
/// Q in Q(sqrt m1) in K.
inline std::optional<Element> sqrt_in_field(const Element& x)
{
    const Field& K = x.field();
    RatVec p = x.power_coords();
    if (K->kind() == FieldKind::rational) {
        auto r = rational_sqrt(p[0]);
        if (!r)
            return std::nullopt;
        return Element::from_rational(K, *r);
    }
    if (K->kind() == FieldKind::quadratic) {
        auto r = detail::qp_sqrt({p[0], p[1]}, K->d());
        if (!r)
            return std::nullopt;
        return Element::from_power(K, {r->a, r->b});
    }
    // K = k(sqrt m2), k = Q(sqrt m1); x = A + B sqrt m2.
    using detail::QuadPair;
    const Int& m1 = K->m1();
    const Int& m2 = K->m2();
    QuadPair A{p[0], p[1]}, B{p[2], p[3]};
    auto add = [](QuadPair u, QuadPair v) { return QuadPair{u.a + v.a, u.b + v.b}; };
    auto sub = [](QuadPair u, QuadPair v) { return QuadPair{u.a - v.a, u.b - v.b}; };
    auto scale = [](QuadPair u, const Rat& q) { return QuadPair{u.a * q, u.b * q}; };
    auto inv = [&](QuadPair u) {
        Rat n = u.a * u.a - u.b * u.b * m1;
        return QuadPair{u.a / n, -u.b / n};
    };
    auto is0 = [](QuadPair u) { return u.a == 0 && u.b == 0; };
    auto to_elem = [&](QuadPair U, QuadPair V) { return Element::from_power(K, {U.a, U.b, V.a, V.b}); };
    std::vector<Element> candidates;
    if (is0(B)) {
        if (auto U = detail::qp_sqrt(A, m1))
            candidates.push_back(to_elem(*U, {0, 0}));
        if (auto V = detail::qp_sqrt(scale(A, Rat(1) / Rat(m2)), m1))
            candidates.push_back(to_elem({0, 0}, *V));
    } else {
        QuadPair nrm = sub(detail::qp_mul(A, A, m1), scale(detail::qp_mul(B, B, m1), Rat(m2)));
        if (auto s = detail::qp_sqrt(nrm, m1)) {
            for (const QuadPair& sg : {*s, scale(*s, -1)}) {
                auto U = detail::qp_sqrt(scale(add(A, sg), Rat(1, 2)), m1);
                if (!U || is0(*U))
                    continue;
                QuadPair V = detail::qp_mul(B, inv(scale(*U, 2)), m1);
                candidates.push_back(to_elem(*U, V));
            }
        }
    }
    for (const auto& y : candidates)
        if (y * y == x)
            return y;
    return std::nullopt;
}

/// Roots of unity of K: (w, generator of order w).
inline std::pair<int, Element> roots_of_unity(const Field& K)
{
    Element minus_one = Element::from_rational(K, -1);
    auto i = sqrt_in_field(minus_one);
    auto r3 = sqrt_in_field(Element::from_rational(K, -3));
    std::optional<Element> zeta3;
    if (r3)
        zeta3 = Rat(1, 2) * (Element::from_rational(K, -1) + *r3);
    if (i && zeta3)
        return {12, *i * *zeta3};
    if (zeta3)
        return {6, -*zeta3};
    if (i) {
        if (auto z8 = sqrt_in_field(*i))
            return {8, *z8};
        return {4, *i};
    }
    return {2, minus_one};
}

} // namespace polya
