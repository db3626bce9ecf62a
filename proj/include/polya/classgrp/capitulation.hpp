#pragma once

#include "class_group.hpp"

namespace polya {

/// Cl(K)_S = Cl(K) / <classes of the finite primes of K in S>.
class SClassGroup {
public:
    SClassGroup() = default;

    SClassGroup(const ClassGroup& cg, std::vector<PrimeIdeal> S) : parent_(&cg), S_(std::move(S))
    {
        std::vector<IntVec> kill;
        for (const auto& P : S_)
            kill.push_back(cg.class_of(P));
        Quotient q = quotient(cg.group(), kill);
        group_ = q.group;
        projection_ = q.projection;
    }

    const ClassGroup& parent() const { return *parent_; }
    const Field& field() const { return parent_->field(); }
    const std::vector<PrimeIdeal>& primes() const { return S_; }
    const FgAbGroup& group() const { return group_; }
    const GroupHom& projection() const { return projection_; }

    IntVec project(const IntVec& c) const { return projection_.apply(c); }
    IntVec class_of(const FracIdeal& A) const { return project(parent_->class_of(A)); }
    IntVec class_of(const Ideal& A) const { return project(parent_->class_of(A)); }

    /// A class of Cl(K) mapping to the given S-class.
    IntVec lift(const IntVec& c) const { return parent_->group().normalize(group_.lift(c)); }

    IntMatrix galois_action(int aut) const
    {
        IntMatrix m(group_.size(), group_.size());
        for (std::size_t j = 0; j < group_.size(); ++j) {
            IntVec img = project(parent_->act(aut, lift(group_.generator(j))));
            for (std::size_t k = 0; k < img.size(); ++k)
                m(j, k) = img[k];
        }
        return m;
    }

private:
    const ClassGroup* parent_ = nullptr;
    std::vector<PrimeIdeal> S_;
    FgAbGroup group_;
    GroupHom projection_;
};

inline SClassGroup s_class_group(const ClassGroup& cg, std::vector<PrimeIdeal> S) { return SClassGroup(cg, std::move(S)); }

/// The primes of K above the given primes of F, in (p, index) order.
inline std::vector<PrimeIdeal> lift_primes(const Field& K, const Subfield& F, const std::vector<PrimeIdeal>& S)
{
    std::vector<PrimeIdeal> out;
    for (const auto& q : S)
        for (const auto& P : primes_above(F, q, K))
            if (std::find(out.begin(), out.end(), P) == out.end())
                out.push_back(P);
    std::sort(out.begin(), out.end());
    return out;
}

/// Class in Cl(K) of the extension of each factor-base prime of F.
inline std::vector<IntVec> extended_base_classes(const Field& K, const Subfield& F)
{
    const ClassGroup& cgF = class_group(F.field);
    const ClassGroup& cgK = class_group(K);
    std::vector<IntVec> out;
    for (const auto& P : cgF.factor_base())
        out.push_back(cgK.class_of(extend_ideal(F, P.ideal, K)));
    return out;
}

/// Cl(F) -> Cl(K) induced by extension of ideals.
inline GroupHom capitulation_full(const Field& K, const Subfield& F)
{
    const ClassGroup& cgF = class_group(F.field);
    const ClassGroup& cgK = class_group(K);
    auto ext = extended_base_classes(K, F);
    std::vector<IntVec> images;
    for (std::size_t j = 0; j < cgF.group().size(); ++j) {
        IntVec exps = cgF.group().lift(cgF.group().generator(j));
        IntVec c = cgK.group().zero();
        for (std::size_t i = 0; i < exps.size(); ++i)
            c = vec_add(c, vec_scale(ext[i], exps[i]));
        images.push_back(cgK.group().lift(cgK.group().normalize(c)));
    }
    return GroupHom::from_images(cgF.group(), cgK.group(), images);
}

/// The S-capitulation map Cl(F)_S -> Cl(K)_S; S is given by primes of F.
inline GroupHom capitulation(const Field& K, const Subfield& F, const std::vector<PrimeIdeal>& S)
{
    SClassGroup clF(class_group(F.field), S);
    SClassGroup clK(class_group(K), lift_primes(K, F, S));
    GroupHom full = capitulation_full(K, F);
    std::vector<IntVec> images;
    for (std::size_t j = 0; j < clF.group().size(); ++j) {
        IntVec c = clK.project(full.apply(clF.lift(clF.group().generator(j))));
        images.push_back(clK.group().lift(c));
    }
    GroupHom eps = GroupHom::from_images(clF.group(), clK.group(), images);
    // The image consists of classes fixed by Gal(K/F).
    for (int s : F.galois) {
        IntMatrix a = clK.galois_action(s);
        for (std::size_t j = 0; j < eps.matrix().rows(); ++j) {
            IntVec x = eps.matrix().row_vec(j);
            if (!clK.group().is_zero(vec_sub(x * a, x)))
                throw verification_error("capitulated class is not Galois-invariant in " + K->name());
        }
    }
    return eps;
}

inline std::vector<IntMatrix> relative_actions(const SClassGroup& cl, const Subfield& F)
{
    std::vector<IntMatrix> out;
    for (int s : F.galois)
        out.push_back(cl.galois_action(s));
    return out;
}

/// (Cl(K)_S)^G for G = Gal(K/F).
inline Subgroup ambiguous_classes(const Field& K, const Subfield& F, const std::vector<PrimeIdeal>& S)
{
    SClassGroup cl(class_group(K), lift_primes(K, F, S));
    return fixed_points(cl.group(), relative_actions(cl, F));
}

} // namespace polya
