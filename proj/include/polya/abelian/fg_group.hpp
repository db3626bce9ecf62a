#pragma once

#include "normal_form.hpp"

#include <sstream>
#include <string>

namespace polya {

/// Finitely generated abelian group Z^n / <relations>, carried in Smith form.
///
/// Elements are handled in canonical coordinates: one coordinate per
/// invariant factor d_i, reduced modulo d_i when d_i > 0. The invariant
/// factors satisfy d_1 | d_2 | ... and infinite factors (d_i = 0) come last.
class FgAbGroup {
public:
    FgAbGroup() = default;

    static FgAbGroup from_presentation(std::size_t ngens, const IntMatrix& relations)
    {
        if (!relations.empty() && relations.cols() != ngens)
            throw domain_error("relation matrix must have one column per generator");
        FgAbGroup g;
        g.ngens_ = ngens;
        g.relations_ = relations.empty() ? IntMatrix(0, ngens) : relations;
        if (ngens == 0)
            return g;
        SnfResult s = relations.rows() == 0
                          ? SnfResult{IntMatrix(0, ngens), IntMatrix{}, IntMatrix::identity(ngens),
                                      IntMatrix::identity(ngens)}
                          : snf_full(relations);
        IntVec diag = s.diagonal();
        diag.resize(ngens, Int(0));
        std::vector<std::size_t> kept;
        for (std::size_t i = 0; i < ngens; ++i)
            if (diag[i] != 1) {
                kept.push_back(i);
                g.invariants_.push_back(diag[i]);
            }
        g.to_canonical_ = IntMatrix(ngens, kept.size());
        g.from_canonical_ = IntMatrix(kept.size(), ngens);
        for (std::size_t c = 0; c < kept.size(); ++c)
            for (std::size_t i = 0; i < ngens; ++i) {
                g.to_canonical_(i, c) = s.r(i, kept[c]);
                g.from_canonical_(c, i) = s.r_inv(kept[c], i);
            }
        return g;
    }

    /// The group with the given invariant factors, presented on its canonical generators.
    static FgAbGroup from_invariants(const IntVec& d)
    {
        IntMatrix rel(0, d.size());
        for (std::size_t i = 0; i < d.size(); ++i)
            if (d[i] != 0) {
                IntVec row(d.size());
                row[i] = d[i];
                rel.append_row(row);
            }
        return from_presentation(d.size(), rel);
    }

    static FgAbGroup trivial() { return from_presentation(0, IntMatrix(0, 0)); }

    const IntVec& invariants() const { return invariants_; }
    std::size_t ngens() const { return ngens_; }
    std::size_t size() const { return invariants_.size(); }
    const IntMatrix& relations() const { return relations_; }
    const IntMatrix& to_canonical() const { return to_canonical_; }
    const IntMatrix& from_canonical() const { return from_canonical_; }

    std::size_t free_rank() const
    {
        std::size_t r = 0;
        for (const auto& d : invariants_)
            r += d == 0;
        return r;
    }

    bool is_finite() const { return free_rank() == 0; }
    bool is_trivial() const { return invariants_.empty(); }

    /// Order of the group, or nullopt if infinite.
    std::optional<Int> order() const
    {
        Int o = 1;
        for (const auto& d : invariants_) {
            if (d == 0)
                return std::nullopt;
            o *= d;
        }
        return o;
    }

    /// Non-trivial finite invariant factors only (the torsion subgroup).
    IntVec torsion_invariants() const
    {
        IntVec t;
        for (const auto& d : invariants_)
            if (d != 0)
                t.push_back(d);
        return t;
    }

    IntVec zero() const { return IntVec(size()); }

    IntVec generator(std::size_t i) const
    {
        IntVec e(size());
        e.at(i) = 1;
        return e;
    }

    IntVec normalize(IntVec c) const
    {
        if (c.size() != size())
            throw domain_error("canonical coordinate vector has wrong length");
        for (std::size_t i = 0; i < c.size(); ++i)
            if (invariants_[i] != 0)
                c[i] = mod(c[i], invariants_[i]);
        return c;
    }

    /// Presentation coordinates to canonical reduced coordinates.
    IntVec reduce(std::span<const Int> pres) const
    {
        if (pres.size() != ngens_)
            throw domain_error("presentation vector has wrong length");
        if (size() == 0)
            return {};
        return normalize(pres * to_canonical_);
    }

    IntVec reduce(const IntVec& pres) const { return reduce(std::span<const Int>(pres)); }

    /// A presentation vector representing the given canonical element.
    IntVec lift(const IntVec& canon) const
    {
        if (canon.size() != size())
            throw domain_error("canonical coordinate vector has wrong length");
        if (size() == 0)
            return IntVec(ngens_);
        return canon * from_canonical_;
    }

    IntVec add(const IntVec& a, const IntVec& b) const { return normalize(vec_add(a, b)); }
    IntVec sub(const IntVec& a, const IntVec& b) const { return normalize(vec_sub(a, b)); }
    IntVec scale(const IntVec& a, const Int& k) const { return normalize(vec_scale(a, k)); }
    bool is_zero(const IntVec& a) const { return vec_is_zero(normalize(a)); }

    /// Order of an element; 0 when the element has infinite order.
    Int element_order(const IntVec& a) const
    {
        IntVec c = normalize(a);
        Int o = 1;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] == 0)
                continue;
            if (invariants_[i] == 0)
                return 0;
            o = lcm(o, invariants_[i] / gcd(invariants_[i], c[i]));
        }
        return o;
    }

    /// "Z/2 + Z/6 + Z", or "0" for the trivial group.
    std::string describe() const
    {
        if (invariants_.empty())
            return "0";
        std::ostringstream ss;
        for (std::size_t i = 0; i < invariants_.size(); ++i) {
            if (i)
                ss << " + ";
            if (invariants_[i] == 0)
                ss << "Z";
            else
                ss << "Z/" << invariants_[i];
        }
        return ss.str();
    }

    /// Rows d_i * e_i for every finite invariant factor.
    IntMatrix relation_rows() const
    {
        IntMatrix m(0, size());
        for (std::size_t i = 0; i < size(); ++i)
            if (invariants_[i] != 0) {
                IntVec row(size());
                row[i] = invariants_[i];
                m.append_row(row);
            }
        return m;
    }

    /// Same invariant factors.
    bool isomorphic_to(const FgAbGroup& o) const { return invariants_ == o.invariants_; }

private:
    std::size_t ngens_ = 0;
    IntMatrix relations_;
    IntVec invariants_;
    IntMatrix to_canonical_;
    IntMatrix from_canonical_;
};

/// Homomorphism between canonical forms: row i is the image of source generator i.
class GroupHom {
public:
    GroupHom() = default;

    GroupHom(FgAbGroup source, FgAbGroup target, IntMatrix matrix)
        : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix))
    {
        if (matrix_.rows() != source_.size() || matrix_.cols() != target_.size())
            throw domain_error("homomorphism matrix has wrong shape");
        for (std::size_t i = 0; i < matrix_.rows(); ++i) {
            IntVec r = target_.normalize(matrix_.row_vec(i));
            for (std::size_t j = 0; j < r.size(); ++j)
                matrix_(i, j) = r[j];
        }
        for (std::size_t i = 0; i < source_.size(); ++i) {
            const Int& d = source_.invariants()[i];
            if (d != 0 && !target_.is_zero(vec_scale(matrix_.row_vec(i), d)))
                throw domain_error("matrix does not respect the relations of the source group");
            if (d == 0)
                continue;
        }
    }

    /// Builds a hom from images given in the target's presentation coordinates.
    static GroupHom from_images(FgAbGroup source, FgAbGroup target, const std::vector<IntVec>& pres_images)
    {
        if (pres_images.size() != source.size())
            throw domain_error("need one image per canonical source generator");
        IntMatrix m(source.size(), target.size());
        for (std::size_t i = 0; i < pres_images.size(); ++i) {
            IntVec c = target.reduce(pres_images[i]);
            for (std::size_t j = 0; j < c.size(); ++j)
                m(i, j) = c[j];
        }
        return GroupHom(std::move(source), std::move(target), std::move(m));
    }

    /// Builds a hom from a matrix on presentation generators (source pres -> target pres).
    static GroupHom from_presentation_matrix(FgAbGroup source, FgAbGroup target, const IntMatrix& pres)
    {
        if (pres.rows() != source.ngens() || pres.cols() != target.ngens())
            throw domain_error("presentation matrix has wrong shape");
        std::vector<IntVec> imgs;
        for (std::size_t i = 0; i < source.size(); ++i)
            imgs.push_back(source.from_canonical().row_vec(i) * pres);
        return from_images(std::move(source), std::move(target), imgs);
    }

    static GroupHom identity(const FgAbGroup& g) { return GroupHom(g, g, IntMatrix::identity(g.size())); }

    static GroupHom zero(const FgAbGroup& s, const FgAbGroup& t) { return GroupHom(s, t, IntMatrix(s.size(), t.size())); }

    const FgAbGroup& source() const { return source_; }
    const FgAbGroup& target() const { return target_; }
    const IntMatrix& matrix() const { return matrix_; }

    IntVec apply(const IntVec& canon) const
    {
        if (source_.size() == 0)
            return target_.zero();
        return target_.normalize(source_.normalize(canon) * matrix_);
    }

    /// this followed by g.
    GroupHom then(const GroupHom& g) const
    {
        if (!target_.isomorphic_to(g.source_) || target_.size() != g.source_.size())
            throw domain_error("composition of incompatible homomorphisms");
        return GroupHom(source_, g.target_, matrix_ * g.matrix_);
    }

private:
    FgAbGroup source_;
    FgAbGroup target_;
    IntMatrix matrix_;
};

/// Subgroup spanned by a list of elements of an ambient group, with its own
/// canonical structure and an embedding into the ambient group.
class Subgroup {
public:
    Subgroup() = default;

    Subgroup(FgAbGroup ambient, std::vector<IntVec> gens) : ambient_(std::move(ambient))
    {
        for (auto& g : gens)
            generators_.push_back(ambient_.normalize(std::move(g)));
        const std::size_t m = generators_.size();
        IntMatrix stacked(0, ambient_.size());
        for (const auto& g : generators_)
            stacked.append_row(g);
        IntMatrix rel = ambient_.relation_rows();
        for (std::size_t i = 0; i < rel.rows(); ++i)
            stacked.append_row(rel.row(i));
        if (ambient_.size() == 0)
            stacked = IntMatrix(m, 0);
        span_ = hnf_with_transform(stacked);

        IntMatrix kernel = span_.kernel();
        IntMatrix relations(0, m);
        for (std::size_t i = 0; i < kernel.rows(); ++i) {
            IntVec r(kernel.row(i).begin(), kernel.row(i).begin() + static_cast<std::ptrdiff_t>(m));
            if (!vec_is_zero(r))
                relations.append_row(r);
        }
        group_ = FgAbGroup::from_presentation(m, relations);
        embedding_ = IntMatrix(group_.size(), ambient_.size());
        for (std::size_t j = 0; j < group_.size(); ++j) {
            IntVec img = ambient_.zero();
            IntVec c = group_.lift(group_.generator(j));
            for (std::size_t i = 0; i < m; ++i)
                img = vec_add(img, vec_scale(generators_[i], c[i]));
            img = ambient_.normalize(img);
            for (std::size_t k = 0; k < img.size(); ++k)
                embedding_(j, k) = img[k];
        }
    }

    const FgAbGroup& ambient() const { return ambient_; }
    const FgAbGroup& group() const { return group_; }
    const std::vector<IntVec>& generators() const { return generators_; }
    const IntMatrix& embedding() const { return embedding_; }
    std::optional<Int> order() const { return group_.order(); }

    GroupHom inclusion() const { return GroupHom(group_, ambient_, embedding_); }

    /// Canonical coordinates in group() of an ambient element, if it lies in the subgroup.
    std::optional<IntVec> coordinates(const IntVec& x) const
    {
        if (ambient_.size() == 0)
            return group_.zero();
        auto y = solve_echelon(span_.h, span_.pivots, ambient_.normalize(x));
        if (!y)
            return std::nullopt;
        IntVec full(span_.u.cols());
        for (std::size_t i = 0; i < y->size(); ++i)
            for (std::size_t j = 0; j < full.size(); ++j)
                full[j] += (*y)[i] * span_.u(i, j);
        full.resize(generators_.size());
        return group_.reduce(full);
    }

    bool contains(const IntVec& x) const { return coordinates(x).has_value(); }

    bool contains(const Subgroup& other) const
    {
        for (const auto& g : other.generators_)
            if (!contains(g))
                return false;
        return true;
    }

    bool same_as(const Subgroup& other) const { return contains(other) && other.contains(*this); }

    /// Image of a group() element in the ambient group.
    IntVec embed(const IntVec& canon) const { return inclusion().apply(canon); }

private:
    FgAbGroup ambient_;
    std::vector<IntVec> generators_;
    HnfResult span_;
    FgAbGroup group_;
    IntMatrix embedding_;
};

/// Quotient group together with the projection from the ambient group.
struct Quotient {
    FgAbGroup group;
    GroupHom projection;
};

inline Subgroup subgroup_span(const FgAbGroup& g, const std::vector<IntVec>& elements)
{
    return Subgroup(g, elements);
}

inline FgAbGroup group_from_presentation(std::size_t ngens, const IntMatrix& relations)
{
    return FgAbGroup::from_presentation(ngens, relations);
}

/// g modulo the span of the given elements (canonical coordinates of g).
inline Quotient quotient(const FgAbGroup& g, const std::vector<IntVec>& elements)
{
    IntMatrix rel = g.relation_rows();
    for (const auto& e : elements)
        rel.append_row(g.normalize(e));
    if (g.size() == 0)
        rel = IntMatrix(0, 0);
    FgAbGroup q = FgAbGroup::from_presentation(g.size(), rel);
    IntMatrix proj(g.size(), q.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        IntVec c = q.reduce(g.generator(i));
        for (std::size_t j = 0; j < c.size(); ++j)
            proj(i, j) = c[j];
    }
    return {q, GroupHom(g, q, proj)};
}

inline Subgroup hom_image(const GroupHom& f)
{
    return Subgroup(f.target(), f.matrix().row_list());
}

inline Subgroup hom_kernel(const GroupHom& f)
{
    const FgAbGroup& s = f.source();
    const FgAbGroup& t = f.target();
    IntMatrix stacked(0, t.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        stacked.append_row(f.matrix().row(i));
    IntMatrix rel = t.relation_rows();
    for (std::size_t i = 0; i < rel.rows(); ++i)
        stacked.append_row(rel.row(i));
    std::vector<IntVec> gens;
    if (t.size() == 0) {
        for (std::size_t i = 0; i < s.size(); ++i)
            gens.push_back(s.generator(i));
    } else {
        IntMatrix k = left_kernel(stacked);
        for (std::size_t i = 0; i < k.rows(); ++i) {
            IntVec c(k.row(i).begin(), k.row(i).begin() + static_cast<std::ptrdiff_t>(s.size()));
            c = s.normalize(c);
            if (!vec_is_zero(c))
                gens.push_back(c);
        }
    }
    return Subgroup(s, gens);
}

inline Quotient hom_cokernel(const GroupHom& f)
{
    return quotient(f.target(), f.matrix().row_list());
}

/// External direct sum, presented on the concatenated canonical generators.
inline FgAbGroup direct_sum(const std::vector<FgAbGroup>& parts)
{
    IntVec inv;
    for (const auto& p : parts)
        inv.insert(inv.end(), p.invariants().begin(), p.invariants().end());
    return FgAbGroup::from_invariants(inv);
}

/// True iff `a` is a well-defined bijective endomorphism of g (canonical coordinates).
inline bool is_automorphism(const FgAbGroup& g, const IntMatrix& a)
{
    try {
        GroupHom h(g, g, a);
        return hom_kernel(h).group().is_trivial() && hom_cokernel(h).group.is_trivial();
    } catch (const domain_error&) {
        return false;
    }
}

/// Elements of g fixed by every listed automorphism (matrices on canonical coordinates).
inline Subgroup fixed_points(const FgAbGroup& g, const std::vector<IntMatrix>& actions)
{
    for (const auto& a : actions)
        if (!is_automorphism(g, a))
            throw domain_error("fixed_points: action matrix is not an automorphism");
    if (actions.empty() || g.size() == 0) {
        std::vector<IntVec> gens;
        for (std::size_t i = 0; i < g.size(); ++i)
            gens.push_back(g.generator(i));
        return Subgroup(g, gens);
    }
    std::vector<FgAbGroup> parts(actions.size(), g);
    FgAbGroup target = direct_sum(parts);
    const std::size_t k = g.size();
    std::vector<IntVec> images;
    for (std::size_t i = 0; i < k; ++i) {
        IntVec img;
        for (const auto& a : actions) {
            IntVec r = a.row_vec(i);
            r[i] -= 1;
            img.insert(img.end(), r.begin(), r.end());
        }
        images.push_back(img);
    }
    return hom_kernel(GroupHom::from_images(g, target, images));
}

/// sub / (span of `elements`), where the elements lie inside sub (ambient coordinates).
inline Quotient subquotient(const Subgroup& sub, const std::vector<IntVec>& elements)
{
    std::vector<IntVec> coords;
    for (const auto& e : elements) {
        auto c = sub.coordinates(e);
        if (!c)
            throw domain_error("subquotient: element not contained in the subgroup");
        coords.push_back(*c);
    }
    return quotient(sub.group(), coords);
}

} // namespace polya
