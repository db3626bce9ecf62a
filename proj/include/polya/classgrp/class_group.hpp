#pragma once

#include "../ideal/lattice.hpp"
#include "../ideal/prime.hpp"
#include "../unitgrp/unit_group.hpp"

namespace polya {

/// A = (beta) * prod_i P_i^{exps[i]} over the factor base.
struct ClassWitness {
    IntVec exps;
    Element beta;
};

/// Minkowski bound of K rounded outward to an integer.
inline long minkowski_bound(const Field& K)
{
    const std::size_t n = K->degree();
    Int D = abs(K->discriminant());
    Int s = isqrt(D);
    if (s * s != D)
        s += 1;
    Int fact = 1, nn = 1;
    for (std::size_t i = 1; i <= n; ++i) {
        fact *= static_cast<long>(i);
        nn *= static_cast<long>(n);
    }
    // 4/pi < 12733/10000
    Int num = fact * pow(Int(12733), K->r2()) * s;
    Int den = nn * pow(Int(10000), K->r2());
    return to_long(num / den);
}

/// Ideal class group of K as Z^{factor base} / relations.
///
/// Every relation row r_j comes with an element alpha_j such that
/// (alpha_j) = prod P_i^{r_j[i]}; these witnesses make principal generators
/// constructible.
class ClassGroup {
public:
    ClassGroup() = default;

    const Field& field() const { return K_; }
    long bound() const { return bound_; }
    const std::vector<PrimeIdeal>& factor_base() const { return fb_; }
    const FgAbGroup& group() const { return group_; }
    const IntMatrix& relations() const { return rel_; }
    const std::vector<Element>& relation_elements() const { return rel_elems_; }
    Int order() const { return *group_.order(); }

    /// Canonical class of a factor-base prime.
    IntVec class_of_base(std::size_t i) const
    {
        IntVec e(fb_.size());
        e.at(i) = 1;
        return group_.reduce(e);
    }

    ClassWitness witness(const PrimeIdeal& P) const
    {
        if (P.field() != K_)
            throw domain_error("prime from a different field");
        if (auto it = fb_index_.find({P.p, P.index}); it != fb_index_.end()) {
            IntVec e(fb_.size());
            e[it->second] = 1;
            return {e, Element::one(K_)};
        }
        {
            std::lock_guard lock(cache_->mu);
            if (auto it = cache_->primes.find({P.p, P.index}); it != cache_->primes.end())
                return it->second;
        }
        ClassWitness w = smooth_prime(P);
        std::lock_guard lock(cache_->mu);
        cache_->primes.emplace(std::make_pair(P.p, P.index), w);
        return w;
    }

    ClassWitness witness(const FracIdeal& A) const
    {
        if (A.field() != K_)
            throw domain_error("ideal from a different field");
        ClassWitness out{IntVec(fb_.size()), Element::from_rational(K_, Rat(1) / Rat(A.den()))};
        for (const auto& [P, v] : factor_ideal(A.num())) {
            ClassWitness w = witness(P);
            out.exps = vec_add(out.exps, vec_scale(w.exps, v));
            if (!(w.beta == Element::one(K_)))
                out.beta *= w.beta.pow(v);
        }
        return out;
    }

    ClassWitness witness(const Ideal& A) const { return witness(FracIdeal(A)); }

    IntVec class_of(const FracIdeal& A) const { return group_.reduce(witness(A).exps); }
    IntVec class_of(const Ideal& A) const { return class_of(FracIdeal(A)); }
    IntVec class_of(const PrimeIdeal& P) const { return group_.reduce(witness(P).exps); }

    bool is_principal(const FracIdeal& A) const { return group_.is_zero(class_of(A)); }

    /// An element of the relation lattice, written as a combination of the
    /// stored relations; nullopt if exps is not a relation.
    std::optional<IntVec> relation_coefficients(const IntVec& exps) const
    {
        if (fb_.empty())
            return IntVec{};
        auto y = solve_echelon(rel_hnf_.h, rel_hnf_.pivots, exps);
        if (!y)
            return std::nullopt;
        IntVec lambda(rel_.rows());
        for (std::size_t i = 0; i < y->size(); ++i)
            for (std::size_t j = 0; j < lambda.size(); ++j)
                lambda[j] += (*y)[i] * rel_hnf_.u(i, j);
        return lambda;
    }

    /// Element gamma with (gamma) = prod P_i^{exps[i]}, for exps in the relation lattice.
    std::optional<Element> relation_generator(const IntVec& exps) const
    {
        auto lambda = relation_coefficients(exps);
        if (!lambda)
            return std::nullopt;
        Element g = Element::one(K_);
        for (std::size_t j = 0; j < lambda->size(); ++j)
            if ((*lambda)[j] != 0)
                g *= rel_elems_[j].pow(to_long((*lambda)[j]));
        return g;
    }

    /// A generator of A when A is principal; verified exactly.
    std::optional<Element> principal_generator(const FracIdeal& A) const
    {
        ClassWitness w = witness(A);
        auto g = relation_generator(w.exps);
        if (!g)
            return std::nullopt;
        Element gamma = unit_group(K_).reduce_by_units(w.beta * *g);
        if (!(FracIdeal::principal(gamma) == A))
            throw verification_error("principal generator failed to verify in " + K_->name());
        return gamma;
    }

    /// Matrix of the automorphism aut on canonical coordinates.
    const IntMatrix& galois_action(int aut) const { return action_.at(static_cast<std::size_t>(aut)); }

    IntVec act(int aut, const IntVec& c) const { return group_.normalize(c * galois_action(aut)); }

    friend ClassGroup compute_class_group(const Field& K);

private:
    struct Cache {
        std::mutex mu;
        std::map<std::pair<Int, int>, ClassWitness> primes;
    };

    std::optional<IntVec> base_exponents(const Ideal& C) const
    {
        IntVec e(fb_.size());
        if (C.is_unit())
            return e;
        for (const auto& [p, k] : factor(C.norm()))
            if (p > bound_)
                return std::nullopt;
        for (const auto& [P, v] : factor_ideal(C)) {
            auto it = fb_index_.find({P.p, P.index});
            if (it == fb_index_.end())
                return std::nullopt;
            e[it->second] += v;
        }
        return e;
    }

    /// Relation attempt: small elements alpha of I; returns exps with (alpha) = I * C.
    template <class Sink>
    bool harvest(const Ideal& I, const IntVec& exps_I, std::size_t count, Sink&& sink) const
    {
        for (const auto& alpha : small_elements(I, count)) {
            Ideal C = Ideal::principal(alpha).divide(I);
            if (auto e = base_exponents(C))
                if (sink(vec_add(exps_I, *e), alpha))
                    return true;
        }
        return false;
    }

    ClassWitness smooth_prime(const PrimeIdeal& P) const
    {
        // Try P, then P * Q for factor-base primes Q, then P * Q1 * Q2.
        const std::size_t k = fb_.size();
        std::optional<ClassWitness> found;
        auto attempt = [&](const Ideal& M, const IntVec& eM) {
            harvest(P.ideal * M, eM, 60, [&](const IntVec& e, const Element& alpha) {
                // (alpha) = P * M * C with e = e(M) + e(C), so P = (alpha) * prod P_i^{-e}.
                found = ClassWitness{vec_scale(e, -1), alpha};
                return true;
            });
            return found.has_value();
        };
        if (attempt(Ideal::unit(K_), IntVec(k)))
            return *found;
        for (std::size_t i = 0; i < k; ++i) {
            IntVec e(k);
            e[i] = 1;
            if (attempt(fb_[i].ideal, e))
                return *found;
        }
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i; j < k; ++j) {
                IntVec e(k);
                e[i] += 1;
                e[j] += 1;
                if (attempt(fb_[i].ideal * fb_[j].ideal, e))
                    return *found;
            }
        throw verification_error("could not smooth the prime " + P.label() + " of " + K_->name());
    }

    Field K_;
    long bound_ = 0;
    std::vector<PrimeIdeal> fb_;
    std::map<std::pair<Int, int>, std::size_t> fb_index_;
    IntMatrix rel_;
    std::vector<Element> rel_elems_;
    HnfResult rel_hnf_;
    FgAbGroup group_;
    std::vector<IntMatrix> action_;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

namespace detail {

/// Exponent vectors with support at most 3 and entries in 1..4, by total weight.
inline std::vector<IntVec> relation_candidates(std::size_t k)
{
    std::vector<IntVec> out;
    for (int weight = 1; weight <= 12; ++weight) {
        IntVec e(k);
        std::function<void(std::size_t, int, int)> rec = [&](std::size_t from, int left, int support) {
            if (left == 0) {
                out.push_back(e);
                return;
            }
            if (support == 3)
                return;
            for (std::size_t i = from; i < k; ++i)
                for (int v = 1; v <= std::min(4, left); ++v) {
                    e[i] = v;
                    rec(i + 1, left - v, support + 1);
                    e[i] = 0;
                }
        };
        rec(0, weight, 0);
    }
    return out;
}

inline Int hnf_determinant(const HnfResult& h, std::size_t k)
{
    if (h.rank < k)
        return 0;
    Int d = 1;
    for (std::size_t i = 0; i < k; ++i)
        d *= h.h(i, h.pivots[i]);
    return abs(d);
}

} // namespace detail

inline ClassGroup compute_class_group(const Field& K)
{
    ClassGroup cg;
    cg.K_ = K;
    cg.bound_ = minkowski_bound(K);
    cg.fb_ = primes_up_to_norm(K, cg.bound_);
    const std::size_t k = cg.fb_.size();
    for (std::size_t i = 0; i < k; ++i)
        cg.fb_index_[{cg.fb_[i].p, cg.fb_[i].index}] = i;
    const Int h = class_number_oracle(K);
    cg.rel_ = IntMatrix(0, k);

    Int det = k == 0 ? Int(1) : Int(0);
    auto accept = [&](const IntVec& e, const Element& alpha) {
        if (cg.rel_.rows() > 0 && solve_echelon(cg.rel_hnf_.h, cg.rel_hnf_.pivots, e))
            return false;
        IntMatrix trial = cg.rel_;
        trial.append_row(e);
        HnfResult t = hnf_with_transform(trial, false);
        Int d = detail::hnf_determinant(t, k);
        cg.rel_ = trial;
        cg.rel_elems_.push_back(alpha);
        cg.rel_hnf_ = t;
        det = d;
        return det == h;
    };

    if (k > 0) {
        cg.rel_hnf_.rank = 0;
        // (p) = prod P^e for every p whose primes all lie in the factor base.
        for (std::size_t i = 0; i < k && det != h; ++i) {
            const PrimeIdeal& P = cg.fb_[i];
            if (P.index != 0)
                continue;
            IntVec e(k);
            bool all = true;
            for (const auto& Q : primes_above(K, P.p)) {
                auto it = cg.fb_index_.find({Q.p, Q.index});
                if (it == cg.fb_index_.end()) {
                    all = false;
                    break;
                }
                e[it->second] = Q.e;
            }
            if (all)
                accept(e, Element::from_rational(K, Rat(P.p)));
        }
        std::map<std::pair<std::size_t, int>, Ideal> powers;
        auto power = [&](std::size_t i, int v) -> const Ideal& {
            auto key = std::make_pair(i, v);
            auto it = powers.find(key);
            if (it == powers.end())
                it = powers.emplace(key, cg.fb_[i].ideal.pow(static_cast<unsigned long>(v))).first;
            return it->second;
        };
        // Widen the number of small elements tried per ideal until the lattice is complete.
        const auto candidates = detail::relation_candidates(k);
        for (std::size_t per_ideal = 12; det != h && per_ideal <= 768; per_ideal *= 4) {
            for (const auto& cand : candidates) {
                if (det == h)
                    break;
                Ideal I = Ideal::unit(K);
                for (std::size_t i = 0; i < k; ++i)
                    if (cand[i] != 0)
                        I *= power(i, to_long(cand[i]));
                cg.harvest(I, cand, per_ideal, accept);
            }
        }
        if (det != h)
            throw verification_error("class group search for " + K->name() + " stopped at determinant " +
                                     det.get_str() + ", expected " + h.get_str());
        cg.rel_hnf_ = hnf_with_transform(cg.rel_);
        // Post-check: further relations must already lie in the lattice.
        std::size_t checked = 0;
        for (std::size_t i = 0; i < k && checked < 8; ++i) {
            IntVec ei(k);
            ei[i] = 1;
            cg.harvest(cg.fb_[i].ideal, ei, 4, [&](const IntVec& e, const Element&) {
                ++checked;
                if (!cg.relation_coefficients(e))
                    throw verification_error("relation outside the lattice: class number oracle for " + K->name() +
                                             " is inconsistent");
                return false;
            });
        }
    } else if (h != 1) {
        throw verification_error("empty factor base but class number " + h.get_str() + " for " + K->name());
    }

    cg.group_ = FgAbGroup::from_presentation(k, cg.rel_hnf_.rank ? cg.rel_hnf_.basis() : IntMatrix(0, k));
    if (cg.group_.order() != h)
        throw verification_error("class group order mismatch for " + K->name());

    // Galois action: automorphisms permute the factor base.
    for (int s = 0; s < static_cast<int>(K->num_automorphisms()); ++s) {
        std::vector<std::size_t> perm(k);
        for (std::size_t i = 0; i < k; ++i) {
            Ideal img = cg.fb_[i].ideal.apply(s);
            bool found = false;
            for (const auto& Q : primes_above(K, cg.fb_[i].p))
                if (Q.ideal == img) {
                    perm[i] = cg.fb_index_.at({Q.p, Q.index});
                    found = true;
                }
            if (!found)
                throw verification_error("automorphism does not permute the factor base");
        }
        std::vector<IntVec> images;
        for (std::size_t c = 0; c < cg.group_.size(); ++c) {
            IntVec v = cg.group_.lift(cg.group_.generator(c));
            IntVec w(k);
            for (std::size_t i = 0; i < k; ++i)
                w[perm[i]] += v[i];
            images.push_back(w);
        }
        cg.action_.push_back(GroupHom::from_images(cg.group_, cg.group_, images).matrix());
    }
    return cg;
}

namespace detail {

inline Memo<std::string, ClassGroup>& class_group_memo()
{
    static Memo<std::string, ClassGroup> m;
    return m;
}

} // namespace detail

/// Class group of K (memoized).
inline const ClassGroup& class_group(const Field& K)
{
    return detail::class_group_memo().get(K->name(), [&] { return compute_class_group(K); });
}

} // namespace polya
