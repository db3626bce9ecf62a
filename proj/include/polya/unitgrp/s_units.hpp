#pragma once

#include "../classgrp/class_group.hpp"

namespace polya {

/// S-unit group U_{K,S} = <zeta> x <eps_1..eps_r> x <gamma_1..gamma_t>.
///
/// The gamma_j generate the S-part: (gamma_j) = prod_i P_i^{C[j][i]} where the
/// rows of C form a basis of {c in Z^S : prod P_i^{c_i} is principal}.
/// Presentation coordinates are (t, a_1..a_r, b_1..b_t).
class SUnitGroup {
public:
    SUnitGroup() = default;

    SUnitGroup(Field K, std::vector<PrimeIdeal> S) : K_(std::move(K)), S_(std::move(S)), units_(&unit_group(K_))
    {
        for (const auto& P : S_)
            if (P.field() != K_)
                throw domain_error("S-prime from a different field");
        const ClassGroup& cg = class_group(K_);
        const std::size_t m = S_.size();
        // Kernel of Z^S -> Cl(K).
        std::vector<ClassWitness> wit;
        IntMatrix stacked(0, cg.group().size());
        for (const auto& P : S_) {
            wit.push_back(cg.witness(P));
            stacked.append_row(cg.group().reduce(wit.back().exps));
        }
        IntMatrix rel = cg.group().relation_rows();
        for (std::size_t i = 0; i < rel.rows(); ++i)
            stacked.append_row(rel.row(i));
        IntMatrix kern(0, m);
        if (cg.group().size() == 0) {
            kern = IntMatrix::identity(m);
        } else if (m > 0) {
            IntMatrix k = left_kernel(stacked);
            for (std::size_t i = 0; i < k.rows(); ++i) {
                IntVec c(k.row(i).begin(), k.row(i).begin() + static_cast<std::ptrdiff_t>(m));
                if (!vec_is_zero(c))
                    kern.append_row(c);
            }
        }
        if (m > 0) {
            s_basis_ = hnf_with_transform(kern, false);
            if (s_basis_.rank != m)
                throw verification_error("S-part of the S-unit group has wrong rank");
            IntMatrix b = s_basis_.basis();
            for (std::size_t j = 0; j < m; ++j) {
                IntVec exps(cg.factor_base().size());
                Element beta = Element::one(K_);
                FracIdeal target = FracIdeal::unit(K_);
                for (std::size_t i = 0; i < m; ++i) {
                    const Int& c = b(j, i);
                    if (c == 0)
                        continue;
                    exps = vec_add(exps, vec_scale(wit[i].exps, c));
                    beta *= wit[i].beta.pow(to_long(c));
                    target = target * FracIdeal(S_[i].ideal).pow(to_long(c));
                }
                auto g = cg.relation_generator(exps);
                if (!g)
                    throw verification_error("S-part basis vector is not principal");
                Element gamma = units_->reduce_by_units(beta * *g);
                if (!(FracIdeal::principal(gamma) == target))
                    throw verification_error("S-unit generator failed to verify");
                gens_.push_back(gamma);
                gens_inv_.push_back(gamma.inverse());
            }
        }
        IntVec inv(1 + units_->rank() + m);
        inv[0] = units_->torsion_order();
        group_ = FgAbGroup::from_invariants(inv);
    }

    const Field& field() const { return K_; }
    const std::vector<PrimeIdeal>& primes() const { return S_; }
    const UnitGroup& units() const { return *units_; }
    const FgAbGroup& group() const { return group_; }
    const std::vector<Element>& s_generators() const { return gens_; }
    std::size_t rank() const { return units_->rank() + S_.size(); }

    /// All presentation generators: zeta, the fundamental units, then the gamma_j.
    std::vector<Element> generators() const
    {
        std::vector<Element> out{units_->torsion_generator()};
        for (const auto& e : units_->fundamental_units())
            out.push_back(e);
        for (const auto& g : gens_)
            out.push_back(g);
        return out;
    }

    /// Valuations of x at the primes of S; throws if x is not an S-unit.
    IntVec valuations(const Element& x) const
    {
        if (x.is_zero())
            throw domain_error("zero is not an S-unit");
        IntVec v(S_.size());
        for (const auto& [P, e] : factor_ideal(FracIdeal::principal(x))) {
            bool found = false;
            for (std::size_t i = 0; i < S_.size(); ++i)
                if (S_[i] == P) {
                    v[i] = e;
                    found = true;
                }
            if (!found)
                throw domain_error(x.str() + " is not an S-unit: divisible by " + P.label());
        }
        return v;
    }

    /// Presentation exponents of an S-unit.
    IntVec log(const Element& x) const
    {
        IntVec v = valuations(x);
        IntVec mu;
        if (!S_.empty()) {
            auto y = solve_echelon(s_basis_.h, s_basis_.pivots, v);
            if (!y)
                throw verification_error("S-unit valuations outside the S-part lattice");
            mu = *y;
        }
        Element u = x;
        for (std::size_t j = 0; j < mu.size(); ++j)
            if (mu[j] != 0)
                u *= mu[j] > 0 ? gens_inv_[j].pow(to_long(mu[j])) : gens_[j].pow(to_long(-mu[j]));
        IntVec out = units_->log(u);
        out.insert(out.end(), mu.begin(), mu.end());
        return out;
    }

    Element exp(const IntVec& pres) const
    {
        const std::size_t r = units_->rank();
        IntVec head(pres.begin(), pres.begin() + static_cast<std::ptrdiff_t>(r + 1));
        Element x = units_->exp(head);
        for (std::size_t j = 0; j < gens_.size(); ++j) {
            const Int& b = pres.at(r + 1 + j);
            if (b != 0)
                x *= b > 0 ? gens_[j].pow(to_long(b)) : gens_inv_[j].pow(to_long(-b));
        }
        return x;
    }

    /// Matrix of an automorphism of K on canonical coordinates. S must be stable under it.
    IntMatrix action(int aut) const
    {
        std::vector<Element> g = generators();
        IntMatrix pres(g.size(), g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            IntVec l = log(g[i].apply(aut));
            for (std::size_t j = 0; j < l.size(); ++j)
                pres(i, j) = l[j];
        }
        return GroupHom::from_presentation_matrix(group_, group_, pres).matrix();
    }

private:
    Field K_;
    std::vector<PrimeIdeal> S_;
    const UnitGroup* units_ = nullptr;
    HnfResult s_basis_;
    std::vector<Element> gens_;
    std::vector<Element> gens_inv_;
    FgAbGroup group_;
};

} // namespace polya
