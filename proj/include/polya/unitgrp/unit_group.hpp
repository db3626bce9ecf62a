#pragma once

#include "../abelian/fg_group.hpp"
#include "../memo.hpp"
#include "embeddings.hpp"
#include "quadratic_unit.hpp"

namespace polya {

/// O_K^* = <zeta> x <eps_1> x ... x <eps_r>, with zeta of order w.
///
/// Exponent vectors are presentation coordinates (t, a_1, ..., a_r) meaning
/// zeta^t * prod eps_j^{a_j}; group() reduces them to canonical form.
class UnitGroup {
public:
    UnitGroup() = default;
    UnitGroup(Field K, int w, Element zeta, std::vector<Element> fundamental)
        : K_(std::move(K)), w_(w), zeta_(std::move(zeta)), fund_(std::move(fundamental))
    {
        IntVec inv(fund_.size() + 1);
        inv[0] = w_;
        group_ = FgAbGroup::from_invariants(inv);
        for (const auto& e : fund_)
            fund_inv_.push_back(e.inverse());
    }

    const Field& field() const { return K_; }
    int torsion_order() const { return w_; }
    const Element& torsion_generator() const { return zeta_; }
    const std::vector<Element>& fundamental_units() const { return fund_; }
    std::size_t rank() const { return fund_.size(); }
    const FgAbGroup& group() const { return group_; }

    /// Presentation exponents of a unit; verified exactly.
    IntVec log(const Element& u) const
    {
        if (u.field() != K_)
            throw domain_error("unit from a different field");
        if (!u.is_integral() || abs(u.norm()) != 1)
            throw domain_error("element " + u.str() + " is not a unit of " + K_->name());
        auto attempt = [&](auto tag) { return try_log<decltype(tag)>(u); };
        if (auto r = with_precision(attempt))
            return *r;
        // A wrong rounding at low precision does not raise; retry at the top.
        if (auto r = try_log<Real2000>(u))
            return *r;
        throw verification_error("unit discrete logarithm failed to verify in " + K_->name());
    }

    Element exp(const IntVec& pres) const
    {
        if (pres.size() != fund_.size() + 1)
            throw domain_error("unit exponent vector has wrong length");
        Element x = zeta_.pow(to_long(mod(pres[0], w_)));
        for (std::size_t j = 0; j < fund_.size(); ++j)
            if (pres[j + 1] != 0)
                x *= pres[j + 1] > 0 ? fund_[j].pow(to_long(pres[j + 1])) : fund_inv_[j].pow(to_long(-pres[j + 1]));
        return x;
    }

    /// x times a unit chosen so that the logarithmic embedding of the result
    /// is close to the line spanned by the place degrees.
    Element reduce_by_units(const Element& x) const
    {
        if (fund_.empty())
            return x;
        return x * exp(with_precision([&](auto tag) { return reducing_exponents<decltype(tag)>(x); }));
    }

private:
    template <class Real>
    IntVec reducing_exponents(const Element& x) const
    {
        auto lx = log_embedding<Real>(x);
        const auto places = infinite_places(K_);
        Real mean = 0;
        for (const auto& v : lx)
            mean += v;
        mean /= Real(static_cast<long>(K_->degree()));
        std::vector<Real> target(fund_.size());
        for (std::size_t i = 0; i < fund_.size(); ++i)
            target[i] = lx[i] - mean * (places[i].complex ? 2 : 1);
        auto a = real_solve_left(log_matrix<Real>(), target);
        if (!a)
            throw verification_error("unit regulator matrix is singular");
        IntVec pres(fund_.size() + 1);
        for (std::size_t j = 0; j < fund_.size(); ++j)
            pres[j + 1] = -round_to_int((*a)[j]);
        return pres;
    }

    template <class Real>
    std::vector<std::vector<Real>> log_matrix() const
    {
        std::vector<std::vector<Real>> m;
        for (const auto& e : fund_) {
            auto l = log_embedding<Real>(e);
            l.resize(fund_.size());
            m.push_back(std::move(l));
        }
        return m;
    }

    template <class Real>
    std::optional<IntVec> try_log(const Element& u) const
    {
        IntVec pres(fund_.size() + 1);
        Element v = u;
        if (!fund_.empty()) {
            auto lu = log_embedding<Real>(u);
            lu.resize(fund_.size());
            auto a = real_solve_left(log_matrix<Real>(), lu);
            if (!a)
                throw verification_error("unit regulator matrix is singular");
            for (std::size_t j = 0; j < fund_.size(); ++j)
                pres[j + 1] = -round_to_int((*a)[j]);
            v = u * exp(pres);
            for (std::size_t j = 0; j < fund_.size(); ++j)
                pres[j + 1] = -pres[j + 1];
        }
        Element z = Element::one(K_);
        for (int t = 0; t < w_; ++t) {
            if (z == v) {
                pres[0] = t;
                return pres;
            }
            z *= zeta_;
        }
        return std::nullopt;
    }

    Field K_;
    int w_ = 2;
    Element zeta_;
    std::vector<Element> fund_;
    std::vector<Element> fund_inv_;
    FgAbGroup group_;
};

inline const UnitGroup& unit_group(const Field& K);

namespace detail {

/// Enlarges <zeta, basis> to the full unit group, given that the index is a
/// power of 2 and every unit squared lies in the starting group.
inline std::vector<Element> saturate_at_two(const Element& zeta, std::vector<Element> basis)
{
    const std::size_t r = basis.size();
    for (bool changed = true; changed;) {
        changed = false;
        for (unsigned mask = 1; mask < (2u << r) && !changed; ++mask) {
            if ((mask >> 1) == 0)
                continue;  // zeta alone is never a square in K
            Element x = (mask & 1) ? zeta : Element::one(zeta.field());
            for (std::size_t j = 0; j < r; ++j)
                if (mask & (2u << j))
                    x *= basis[j];
            if (auto y = sqrt_in_field(x)) {
                std::size_t j = 0;
                while (!(mask & (2u << j)))
                    ++j;
                basis[j] = *y;
                changed = true;
            }
        }
    }
    return basis;
}

inline UnitGroup compute_unit_group(const Field& K)
{
    auto [w, zeta] = roots_of_unity(K);
    switch (K->kind()) {
    case FieldKind::rational:
        return UnitGroup(K, w, zeta, {});
    case FieldKind::quadratic:
        if (K->d() < 0)
            return UnitGroup(K, w, zeta, {});
        return UnitGroup(K, w, zeta, {quadratic_fundamental_unit(K)});
    case FieldKind::biquadratic:
        break;
    }
    std::vector<Element> basis;
    for (std::size_t i = 1; i <= 3; ++i) {
        Subfield F = K->subfield(i);
        for (const auto& e : unit_group(F.field).fundamental_units())
            basis.push_back(embed(F, e, K));
    }
    const std::size_t rank = K->r1() + K->r2() - 1;
    if (basis.size() != rank)
        throw verification_error("subfield units do not have full rank in " + K->name());
    basis = saturate_at_two(zeta, basis);
    return UnitGroup(K, w, zeta, basis);
}

inline Memo<std::string, UnitGroup>& unit_memo()
{
    static Memo<std::string, UnitGroup> m;
    return m;
}

} // namespace detail

/// Unit group of K (memoized).
inline const UnitGroup& unit_group(const Field& K)
{
    return detail::unit_memo().get(K->name(), [&] { return detail::compute_unit_group(K); });
}

/// Unit index [O_K^* : E_1 E_2 E_3] of a biquadratic field over the unit
/// groups of its three quadratic subfields.
inline Int unit_index(const Field& K)
{
    if (K->kind() != FieldKind::biquadratic)
        throw domain_error("unit index is defined for biquadratic fields");
    const UnitGroup& U = unit_group(K);
    std::vector<IntVec> sub;
    for (std::size_t i = 1; i <= 3; ++i) {
        Subfield F = K->subfield(i);
        const UnitGroup& E = unit_group(F.field);
        sub.push_back(U.group().reduce(U.log(embed(F, E.torsion_generator(), K))));
        for (const auto& e : E.fundamental_units())
            sub.push_back(U.group().reduce(U.log(embed(F, e, K))));
    }
    auto q = quotient(U.group(), sub).group.order();
    if (!q)
        throw verification_error("subfield units have infinite index in " + K->name());
    return *q;
}

/// Class number of a biquadratic field from its quadratic subfields and unit index.
inline Int biquadratic_class_number(const Field& K)
{
    Int prod = unit_index(K);
    for (std::size_t i = 1; i <= 3; ++i)
        prod *= quadratic_class_number(K->subfield(i).field);
    Int den = K->is_totally_real() ? 4 : 2;
    if (mod(prod, den) != 0)
        throw verification_error("class number formula gives a non-integer for " + K->name());
    return prod / den;
}

/// Class number of K from formulas that do not use ideal arithmetic.
inline Int class_number_oracle(const Field& K)
{
    switch (K->kind()) {
    case FieldKind::rational: return 1;
    case FieldKind::quadratic: return quadratic_class_number(K);
    case FieldKind::biquadratic: return biquadratic_class_number(K);
    }
    return 1;
}

} // namespace polya
