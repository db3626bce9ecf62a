#pragma once

#include "../classgrp/capitulation.hpp"
#include "../unitgrp/s_units.hpp"
#include "cohomology.hpp"

namespace polya {

/// Product of the primes of K above base whose relative residue degree is f.
struct OstrowskiIdeal {
    Ideal ideal;
    PrimeIdeal base;
    int f = 1;
    std::vector<PrimeIdeal> primes;
};

inline OstrowskiIdeal ostrowski_ideal(const Field& K, const Subfield& F, const PrimeIdeal& p, int f)
{
    if (f <= 0)
        throw domain_error("Ostrowski exponent must be positive");
    OstrowskiIdeal out{Ideal::unit(K), p, f, {}};
    for (const auto& P : primes_above(F, p, K))
        if (P.f == f) {
            out.ideal *= P.ideal;
            out.primes.push_back(P);
        }
    return out;
}

inline bool contains_prime(const std::vector<PrimeIdeal>& S, const PrimeIdeal& p)
{
    return std::find(S.begin(), S.end(), p) != S.end();
}

/// A prime of F with its relative ramification index and residue degree in K.
struct LocalData {
    PrimeIdeal prime;
    int e = 1;
    int f = 1;
    int g = 1;
};

inline LocalData local_data(const Field& K, const Subfield& F, const PrimeIdeal& p)
{
    auto above = primes_above(F, p, K);
    return {p, above.front().e, above.front().f, static_cast<int>(above.size())};
}

/// R_{K/F}: the finite primes of F ramified in K.
inline std::vector<LocalData> ramified_primes(const Field& K, const Subfield& F)
{
    std::vector<LocalData> out;
    for (const auto& [p, k] : factor(abs(K->discriminant())))
        for (const auto& q : primes_above(F.field, p)) {
            LocalData d = local_data(K, F, q);
            if (d.e > 1)
                out.push_back(d);
        }
    return out;
}

/// The prime of F below a prime of K.
inline PrimeIdeal prime_below(const Subfield& F, const PrimeIdeal& P, const Field& K)
{
    for (const auto& q : primes_above(F.field, P.p))
        if (P.ideal.contains(extend_ideal(F, q.ideal, K)))
            return q;
    throw verification_error("no prime of the subfield below " + P.label());
}

/// One factor Pi_{p^f}^n of a G-invariant ideal.
struct OstrowskiFactor {
    PrimeIdeal base;
    int f = 1;
    long exponent = 0;
};

/// Writes a G-invariant fractional ideal with support outside S as a product
/// of Ostrowski ideals.
inline std::vector<OstrowskiFactor> invariant_factorization(const Field& K, const Subfield& F,
                                                            const std::vector<PrimeIdeal>& S, const FracIdeal& A)
{
    for (int s : F.galois)
        if (!(A.apply(s) == A))
            throw domain_error("ideal " + A.str() + " is not invariant under Gal(K/F)");
    std::vector<OstrowskiFactor> out;
    for (const auto& [P, v] : factor_ideal(A)) {
        PrimeIdeal q = prime_below(F, P, K);
        if (contains_prime(S, q))
            throw domain_error("ideal " + A.str() + " is divisible by the S-prime " + q.label());
        int f = 0;
        for (const auto& Q : primes_above(F, q, K))
            if (Q == P)
                f = Q.f;
        auto it = std::find_if(out.begin(), out.end(), [&](const OstrowskiFactor& o) { return o.base == q && o.f == f; });
        if (it == out.end())
            out.push_back({q, f, v});
        else if (it->exponent != v)
            throw verification_error("invariant ideal has unequal valuations above " + q.label());
    }
    std::sort(out.begin(), out.end(), [](const OstrowskiFactor& a, const OstrowskiFactor& b) {
        return a.base < b.base || (a.base == b.base && a.f < b.f);
    });
    return out;
}

/// prod Pi^n for a factor list.
inline FracIdeal ostrowski_product(const Field& K, const Subfield& F, const std::vector<OstrowskiFactor>& fs)
{
    FracIdeal out = FracIdeal::unit(K);
    for (const auto& o : fs)
        out = out * FracIdeal(ostrowski_ideal(K, F, o.base, o.f).ideal).pow(o.exponent);
    return out;
}

/// Po(K/F)_S inside Cl(K)_S with labelled generators, and the span of the same
/// ideals inside Cl(K).
struct PolyaGroupS {
    SClassGroup ambient;
    Subgroup subgroup;
    std::vector<std::string> labels;
    std::vector<IntVec> generators;
    Subgroup ambient_lift;
};

/// Class in Cl(K) of an Ostrowski ideal, as the sum of its prime classes.
inline IntVec ostrowski_class(const ClassGroup& cg, const OstrowskiIdeal& pi)
{
    IntVec c = cg.group().zero();
    for (const auto& P : pi.primes)
        c = vec_add(c, cg.class_of(P));
    return cg.group().normalize(c);
}

inline PolyaGroupS relative_polya_group_S(const Field& K, const Subfield& F, const std::vector<PrimeIdeal>& S)
{
    const ClassGroup& cg = class_group(K);
    SClassGroup cl(cg, lift_primes(K, F, S));
    GroupHom eps = capitulation(K, F, S);
    GroupHom full = capitulation_full(K, F);
    std::vector<std::string> labels;
    std::vector<IntVec> gens, lift;
    for (std::size_t j = 0; j < eps.source().size(); ++j) {
        gens.push_back(cl.group().normalize(eps.matrix().row_vec(j)));
        labels.push_back("eps(c" + std::to_string(j) + ")");
    }
    for (std::size_t j = 0; j < full.source().size(); ++j)
        lift.push_back(full.matrix().row_vec(j));
    for (const auto& r : ramified_primes(K, F)) {
        if (contains_prime(S, r.prime))
            continue;
        IntVec c = ostrowski_class(cg, ostrowski_ideal(K, F, r.prime, r.f));
        lift.push_back(c);
        gens.push_back(cl.project(c));
        labels.push_back("Pi" + r.prime.label());
    }
    Subgroup sub(cl.group(), gens);
    Subgroup amb(cg.group(), lift);
    return {std::move(cl), std::move(sub), std::move(labels), std::move(gens), std::move(amb)};
}

/// Po(K/F)_S spanned by the classes of all Ostrowski ideals over primes of F
/// outside S with norm at most bound.
inline Subgroup polya_group_by_definition(const Field& K, const Subfield& F, const std::vector<PrimeIdeal>& S,
                                          long bound = 200)
{
    const ClassGroup& cg = class_group(K);
    SClassGroup cl(cg, lift_primes(K, F, S));
    std::vector<IntVec> gens;
    for (const auto& q : primes_up_to_norm(F.field, bound)) {
        if (contains_prime(S, q))
            continue;
        std::vector<int> fs;
        for (const auto& P : primes_above(F, q, K))
            if (std::find(fs.begin(), fs.end(), P.f) == fs.end())
                fs.push_back(P.f);
        for (int f : fs)
            gens.push_back(cl.project(ostrowski_class(cg, ostrowski_ideal(K, F, q, f))));
    }
    return Subgroup(cl.group(), gens);
}

/// Ost(K/F)_S = Po(K/F)_S / eps_S(Cl(F)_S).
inline FgAbGroup ostrowski_quotient_S(const PolyaGroupS& po, const GroupHom& eps)
{
    return subquotient(po.subgroup, eps.matrix().row_list()).group;
}

inline FgAbGroup ostrowski_quotient_S(const Field& K, const Subfield& F, const std::vector<PrimeIdeal>& S)
{
    return ostrowski_quotient_S(relative_polya_group_S(K, F, S), capitulation(K, F, S));
}

inline SUnitGroup s_unit_group(const Field& K, std::vector<PrimeIdeal> S) { return SUnitGroup(K, std::move(S)); }

/// U_{K,S} as a Gal(K/F)-module.
inline GModule unit_module(const SUnitGroup& U, const Subfield& F)
{
    GModule gm{U.group(), F.galois, {}, [](int a, int b) { return a ^ b; }};
    for (int s : F.galois)
        gm.actions.push_back(U.action(s));
    return gm;
}

/// H^1(G, U_{K,S}); for cyclic G both solvers are run and must agree.
inline FgAbGroup h1_units(const GModule& gm)
{
    FgAbGroup h = h1(gm);
    if (gm.is_cyclic() && !h.isomorphic_to(h1_cyclic(gm)))
        throw verification_error("crossed-homomorphism and cyclic H^1 disagree");
    return h;
}

inline FgAbGroup h1_units(const Field& K, const Subfield& F, const std::vector<PrimeIdeal>& S)
{
    return h1_units(unit_module(s_unit_group(K, lift_primes(K, F, S)), F));
}

/// (U_{F,S} : N_{K/F} U_{K,S}), the order of the Tate group of the units.
inline Int unit_norm_index(const Field& K, const Subfield& F, const std::vector<PrimeIdeal>& S)
{
    auto o = h0_tate(unit_module(s_unit_group(K, lift_primes(K, F, S)), F)).order();
    if (!o)
        throw verification_error("norm index of S-units is infinite");
    return *o;
}

/// prod over places v of F in S of |G_w|, archimedean places included.
inline Int decomposition_product(const Field& K, const Subfield& F, const std::vector<PrimeIdeal>& S)
{
    Int prod = 1;
    for (const auto& q : S) {
        LocalData d = local_data(K, F, q);
        prod *= d.e * d.f;
    }
    if (F.field->is_totally_real() && !K->is_totally_real())
        prod *= pow(Int(2), static_cast<unsigned long>(F.field->r1()));
    return prod;
}

enum class Verdict { pass, fail, undecided };

inline const char* verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    default: return "undecided";
    }
}

struct CheckResult {
    std::string name;
    Int lhs = 0;
    Int rhs = 0;
    Verdict verdict = Verdict::undecided;
    std::string note;
};

inline CheckResult equality_check(std::string name, Int lhs, Int rhs)
{
    Verdict v = lhs == rhs ? Verdict::pass : Verdict::fail;
    return {std::move(name), std::move(lhs), std::move(rhs), v, {}};
}

inline Int finite_order(const FgAbGroup& g)
{
    auto o = g.order();
    if (!o)
        throw verification_error("expected a finite group");
    return *o;
}

/// Text form of S over F: "oo" then rational primes (F = Q) or "(p,i)" selectors.
inline std::string describe_S(const Subfield& F, const std::vector<PrimeIdeal>& S)
{
    std::string out = "oo";
    for (const auto& q : S)
        out += "," + (F.field->kind() == FieldKind::rational ? q.p.get_str() : q.label());
    return out;
}

/// Everything the identity checks need for one (K, F, S).
struct RelativeData {
    Field K;
    Subfield F;
    std::vector<PrimeIdeal> S;
    SClassGroup clK;
    SClassGroup clF;
    GroupHom eps;
    Subgroup kernel;
    Subgroup ambiguous;
    FgAbGroup cokernel;
    PolyaGroupS po;
    FgAbGroup ost;
    std::vector<LocalData> ramified;
    Int ram_product = 1;
    FgAbGroup ram_group;

    RelativeData(Field k, Subfield f, std::vector<PrimeIdeal> s) : K(std::move(k)), F(std::move(f)), S(std::move(s))
    {
        for (const auto& q : S)
            if (q.field() != F.field)
                throw domain_error("S-prime " + q.label() + " does not belong to the base field");
        clK = SClassGroup(class_group(K), lift_primes(K, F, S));
        clF = SClassGroup(class_group(F.field), S);
        eps = capitulation(K, F, S);
        kernel = hom_kernel(eps);
        ambiguous = fixed_points(clK.group(), relative_actions(clK, F));
        cokernel = subquotient(ambiguous, eps.matrix().row_list()).group;
        po = relative_polya_group_S(K, F, S);
        ost = ostrowski_quotient_S(po, eps);
        IntVec es;
        for (const auto& r : ramified_primes(K, F))
            if (!contains_prime(S, r.prime)) {
                ramified.push_back(r);
                ram_product *= r.e;
                es.push_back(r.e);
            }
        ram_group = FgAbGroup::from_invariants(es);
    }

    std::size_t degree() const { return F.relative_degree(); }
    bool cyclic() const { return F.galois.size() != 4; }
    bool unramified_outside_S() const { return ramified.empty(); }
};

/// H^1 and the Tate group of U_{K,S}.
struct UnitCohomology {
    FgAbGroup h1;
    FgAbGroup h0;
};

inline UnitCohomology unit_cohomology(const RelativeData& d)
{
    GModule gm = unit_module(s_unit_group(d.K, lift_primes(d.K, d.F, d.S)), d.F);
    return {h1_units(gm), h0_tate(gm)};
}

inline CheckResult herbrand_check(const RelativeData& d, const UnitCohomology& u)
{
    if (!d.cyclic())
        throw domain_error("Herbrand quotient check needs a cyclic extension");
    // |H0| / |H1| = prod |G_w| / [K:F], cross-multiplied.
    return equality_check("herbrand", finite_order(u.h0) * static_cast<long>(d.degree()),
                          finite_order(u.h1) * decomposition_product(d.K, d.F, d.S));
}

/// |Ker eps| * prod e = |H^1| * |Ost|.
inline CheckResult brz_sequence_check(const RelativeData& d, const UnitCohomology& u)
{
    return equality_check("brz_a", finite_order(d.kernel.group()) * d.ram_product,
                          finite_order(u.h1) * finite_order(d.ost));
}

/// |Coker eps| * |Po| = |Ost| * |(Cl_S)^G|.
inline CheckResult cokernel_check(const RelativeData& d)
{
    return equality_check("brz_b", finite_order(d.cokernel) * finite_order(d.po.subgroup.group()),
                          finite_order(d.ost) * finite_order(d.ambiguous.group()));
}

/// |H^0(G, U_{K,S})| = |Coker eps| for cyclic K/F unramified outside S.
inline CheckResult kisilevsky_check(const RelativeData& d, const UnitCohomology& u)
{
    if (!d.cyclic() || !d.unramified_outside_S())
        throw domain_error("Kisilevsky check needs a cyclic extension unramified outside S");
    CheckResult r = equality_check("brz_c", finite_order(u.h0), finite_order(d.cokernel));
    r.note = "prod |G_w| over S = " + decomposition_product(d.K, d.F, d.S).get_str();
    return r;
}

/// Generator-based Po equals the span of all Ostrowski classes up to a norm bound.
inline CheckResult polya_oracle_check(const RelativeData& d, long bound = 200)
{
    Subgroup def = polya_group_by_definition(d.K, d.F, d.S, bound);
    CheckResult r{"brz_d", finite_order(d.po.subgroup.group()), finite_order(def.group()), Verdict::fail, {}};
    if (d.po.subgroup.same_as(def))
        r.verdict = Verdict::pass;
    return r;
}

inline CheckResult ikp_check(const RelativeData& d, const UnitCohomology& u)
{
    if (!d.unramified_outside_S())
        throw domain_error("Iwasawa-Khare-Prasad check needs K/F unramified outside S; " +
                           d.ramified.front().prime.label() + " ramifies");
    CheckResult r{"ikp", finite_order(d.kernel.group()), finite_order(u.h1), Verdict::fail, {}};
    if (d.kernel.group().isomorphic_to(u.h1) && d.ost.is_trivial())
        r.verdict = Verdict::pass;
    return r;
}

/// prod |G_w| * |Ker eps| = (U_{F,S} : N U_{K,S}) * [K:F].
inline CheckResult hilbert94_check(const RelativeData& d, const UnitCohomology& u)
{
    if (!d.cyclic() || !d.unramified_outside_S())
        throw domain_error("Hilbert 94 check needs a cyclic extension unramified outside S");
    return equality_check("hilbert94", decomposition_product(d.K, d.F, d.S) * finite_order(d.kernel.group()),
                          finite_order(u.h0) * static_cast<long>(d.degree()));
}

inline CheckResult herbrand_check(const Field& K, const Subfield& F, const std::vector<PrimeIdeal>& S)
{
    RelativeData d(K, F, S);
    return herbrand_check(d, unit_cohomology(d));
}

inline CheckResult ikp_check(const Field& K, const Subfield& F, const std::vector<PrimeIdeal>& S)
{
    RelativeData d(K, F, S);
    return ikp_check(d, unit_cohomology(d));
}

inline CheckResult hilbert94_check(const Field& K, const Subfield& F, const std::vector<PrimeIdeal>& S)
{
    RelativeData d(K, F, S);
    return hilbert94_check(d, unit_cohomology(d));
}

/// Primes of a field above the given rational primes.
inline std::vector<PrimeIdeal> primes_above_all(const Field& F, const std::vector<Int>& ps)
{
    std::vector<PrimeIdeal> out;
    for (const auto& p : ps)
        for (const auto& q : primes_above(F, p))
            out.push_back(q);
    return out;
}

/// Po(K/Q)_S inside Po(K/M)_S for a quadratic subfield M of biquadratic K;
/// S is given by rational primes.
inline CheckResult filtration_check(const Field& K, std::size_t m, const std::vector<Int>& S)
{
    if (K->kind() != FieldKind::biquadratic || m < 1 || m > 3)
        throw domain_error("filtration check needs a biquadratic field and a quadratic subfield");
    Subfield Q = K->subfield(0), M = K->subfield(m);
    PolyaGroupS small = relative_polya_group_S(K, Q, primes_above_all(Q.field, S));
    PolyaGroupS big = relative_polya_group_S(K, M, primes_above_all(M.field, S));
    CheckResult r{"filtration", finite_order(small.subgroup.group()), finite_order(big.subgroup.group()), Verdict::fail, {}};
    if (big.subgroup.contains(small.subgroup))
        r.verdict = Verdict::pass;
    return r;
}

/// S1 within S2 implies ambient_lift(S2) within ambient_lift(S1).
inline CheckResult monotonicity_check(const Field& K, const Subfield& F, const std::vector<PrimeIdeal>& S1,
                                      const std::vector<PrimeIdeal>& S2)
{
    for (const auto& q : S1)
        if (!contains_prime(S2, q))
            throw domain_error("monotonicity check needs S1 contained in S2");
    PolyaGroupS p1 = relative_polya_group_S(K, F, S1), p2 = relative_polya_group_S(K, F, S2);
    CheckResult r{"monotonicity", finite_order(p2.ambient_lift.group()), finite_order(p1.ambient_lift.group()),
                  Verdict::fail, {}};
    if (p1.ambient_lift.contains(p2.ambient_lift))
        r.verdict = Verdict::pass;
    return r;
}

struct GroupRecord {
    std::string name;
    FgAbGroup group;
};

struct BrzReport {
    std::string field;
    std::string base;
    std::string S;
    std::vector<GroupRecord> groups;
    std::vector<CheckResult> checks;

    bool all_pass() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.verdict == Verdict::pass; });
    }

    const FgAbGroup* group(const std::string& name) const
    {
        for (const auto& g : groups)
            if (g.name == name)
                return &g.group;
        return nullptr;
    }

    const CheckResult* check(const std::string& name) const
    {
        for (const auto& c : checks)
            if (c.name == name)
                return &c;
        return nullptr;
    }
};

inline std::string base_name(const Subfield& F) { return F.field->name(); }

/// Runs every identity check whose preconditions hold. Computation failures
/// become undecided checks rather than exceptions.
inline BrzReport brz_verify(const Field& K, const Subfield& F, const std::vector<PrimeIdeal>& S, long oracle_bound = 200)
{
    BrzReport rep{K->name(), base_name(F), describe_S(F, S), {}, {}};
    auto undecided = [&](const std::string& name, const std::exception& e) {
        rep.checks.push_back({name, 0, 0, Verdict::undecided, e.what()});
    };
    std::optional<RelativeData> d;
    try {
        d.emplace(K, F, S);
    } catch (const domain_error&) {
        throw;
    } catch (const std::exception& e) {
        for (const char* n : {"brz_a", "brz_b", "brz_d"})
            undecided(n, e);
        return rep;
    }
    rep.groups = {{"Cl(K)", class_group(K).group()},
                  {"Cl(K)_S", d->clK.group()},
                  {"Cl(F)_S", d->clF.group()},
                  {"Ker", d->kernel.group()},
                  {"Coker", d->cokernel},
                  {"Amb", d->ambiguous.group()},
                  {"Po", d->po.subgroup.group()},
                  {"Ost", d->ost},
                  {"Ram", d->ram_group}};
    std::optional<UnitCohomology> u;
    try {
        u = unit_cohomology(*d);
        rep.groups.push_back({"H1", u->h1});
        rep.groups.push_back({"H0", u->h0});
    } catch (const domain_error&) {
        throw;
    } catch (const std::exception& e) {
        undecided("brz_a", e);
    }
    if (u)
        rep.checks.push_back(brz_sequence_check(*d, *u));
    rep.checks.push_back(cokernel_check(*d));
    if (u && d->cyclic() && d->unramified_outside_S())
        rep.checks.push_back(kisilevsky_check(*d, *u));
    try {
        rep.checks.push_back(polya_oracle_check(*d, oracle_bound));
    } catch (const domain_error&) {
        throw;
    } catch (const std::exception& e) {
        undecided("brz_d", e);
    }
    if (u && d->cyclic())
        rep.checks.push_back(herbrand_check(*d, *u));
    if (u && d->unramified_outside_S())
        rep.checks.push_back(ikp_check(*d, *u));
    if (u && d->cyclic() && d->unramified_outside_S())
        rep.checks.push_back(hilbert94_check(*d, *u));
    return rep;
}

} // namespace polya
