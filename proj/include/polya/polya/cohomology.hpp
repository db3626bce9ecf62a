#pragma once

#include "../abelian/fg_group.hpp"

#include <functional>

namespace polya {

/// A finite group G acting on a finitely generated abelian group M.
///
/// Elements of G are labels closed under compose; actions[i] is the matrix of
/// elements[i] on canonical coordinates of M (x -> x * A).
struct GModule {
    FgAbGroup module;
    std::vector<int> elements;
    std::vector<IntMatrix> actions;
    std::function<int(int, int)> compose;

    std::size_t position(int g) const
    {
        for (std::size_t i = 0; i < elements.size(); ++i)
            if (elements[i] == g)
                return i;
        throw domain_error("element not in the group");
    }

    IntVec act(std::size_t i, const IntVec& x) const { return module.normalize(x * actions[i]); }

    /// Sum of all group elements as a matrix.
    IntMatrix norm_matrix() const
    {
        IntMatrix n(module.size(), module.size());
        for (const auto& a : actions)
            n = n + a;
        return n;
    }

    /// True if one element generates G.
    bool is_cyclic() const { return cyclic_generator().has_value(); }

    std::optional<std::size_t> cyclic_generator() const
    {
        for (std::size_t i = 0; i < elements.size(); ++i) {
            std::size_t order = 1;
            for (int x = elements[i]; x != identity(); x = compose(x, elements[i]))
                ++order;
            if (order == elements.size())
                return i;
        }
        return std::nullopt;
    }

    int identity() const
    {
        for (int g : elements)
            if (compose(g, g) == g)
                return g;
        throw domain_error("group has no identity");
    }
};

/// H^1(G, M) as crossed homomorphisms modulo principal ones.
inline FgAbGroup h1(const GModule& gm)
{
    const FgAbGroup& M = gm.module;
    const std::size_t n = gm.elements.size(), k = M.size();
    if (k == 0)
        return FgAbGroup::trivial();
    // Source M^G (one copy per group element), target M^{G x G}.
    FgAbGroup src = direct_sum(std::vector<FgAbGroup>(n, M));
    FgAbGroup tgt = direct_sum(std::vector<FgAbGroup>(n * n, M));
    // f(st) - f(s) - s f(t) for each pair (s, t).
    IntMatrix pres(n * k, n * n * k);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t) {
            const std::size_t st = gm.position(gm.compose(gm.elements[s], gm.elements[t]));
            const std::size_t col = (s * n + t) * k;
            for (std::size_t i = 0; i < k; ++i) {
                pres(st * k + i, col + i) += 1;
                pres(s * k + i, col + i) -= 1;
                for (std::size_t j = 0; j < k; ++j)
                    pres(t * k + i, col + j) -= gm.actions[s](i, j);
            }
        }
    Subgroup z1 = hom_kernel(GroupHom::from_presentation_matrix(src, tgt, pres));
    std::vector<IntVec> b1;
    for (std::size_t i = 0; i < k; ++i) {
        IntVec v(n * k);
        for (std::size_t s = 0; s < n; ++s) {
            IntVec d = vec_sub(M.generator(i) * gm.actions[s], M.generator(i));
            for (std::size_t j = 0; j < k; ++j)
                v[s * k + j] = d[j];
        }
        b1.push_back(src.reduce(v));
    }
    return subquotient(z1, b1).group;
}

/// ker N / im(sigma - 1) for cyclic G generated by sigma; equals H^1(G, M).
inline FgAbGroup h1_cyclic(const GModule& gm)
{
    const FgAbGroup& M = gm.module;
    auto sigma = gm.cyclic_generator();
    if (!sigma)
        throw domain_error("group is not cyclic");
    if (M.size() == 0)
        return FgAbGroup::trivial();
    Subgroup kn = hom_kernel(GroupHom(M, M, gm.norm_matrix()));
    std::vector<IntVec> im;
    for (std::size_t i = 0; i < M.size(); ++i)
        im.push_back(M.normalize(vec_sub(gm.act(*sigma, M.generator(i)), M.generator(i))));
    return subquotient(kn, im).group;
}

/// Tate group M^G / N(M).
inline FgAbGroup h0_tate(const GModule& gm)
{
    const FgAbGroup& M = gm.module;
    if (M.size() == 0)
        return FgAbGroup::trivial();
    Subgroup fixed = fixed_points(M, gm.actions);
    std::vector<IntVec> norms;
    IntMatrix nm = gm.norm_matrix();
    for (std::size_t i = 0; i < M.size(); ++i)
        norms.push_back(M.normalize(M.generator(i) * nm));
    return subquotient(fixed, norms).group;
}

} // namespace polya
