#include <polya/polya/polya.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace polya;

namespace {

const PrimeIdeal& rational_prime(long p) { return primes_above(rationals(), p).front(); }

std::vector<PrimeIdeal> rational_S(std::initializer_list<long> ps)
{
    std::vector<PrimeIdeal> out;
    for (long p : ps)
        out.push_back(rational_prime(p));
    return out;
}

Int order_of(const FgAbGroup& g) { return *g.order(); }

// x / y is a unit of K.
bool associate(const Element& x, const Element& y)
{
    Element q = x * y.inverse();
    return q.is_integral() && abs(q.norm()) == 1;
}

// Index of the subgroup generated by N(generators) in the group generated by
// the S-units of Q, computed on valuations and signs: for F = Q the S-units
// are +-prod p^a, so the index is the order of Z/2 x Z^S modulo the images.
Int rational_norm_index(const SUnitGroup& U, const std::vector<Int>& S)
{
    IntMatrix rows(0, S.size() + 1);
    for (const auto& g : U.generators()) {
        Rat n = g.norm();
        IntVec r(S.size() + 1);
        r[0] = n < 0 ? 1 : 0;
        for (std::size_t i = 0; i < S.size(); ++i)
            r[i + 1] = valuation(n.get_num(), S[i]) - valuation(n.get_den(), S[i]);
        rows.append_row(r);
    }
    IntVec inv(S.size() + 1);
    inv[0] = 2;
    FgAbGroup ambient = FgAbGroup::from_invariants(inv);
    return *quotient(ambient, rows.row_list()).group.order();
}

}  // namespace

TEST(SUnits, SpecExamples)
{
    {
        Field K = make_quadratic(-5);
        SUnitGroup U(K, {primes_above(K, 2).front()});
        EXPECT_EQ(U.rank(), 1u);
        EXPECT_EQ(U.units().torsion_order(), 2);
        ASSERT_EQ(U.s_generators().size(), 1u);
        EXPECT_TRUE(associate(U.s_generators()[0], Element::from_rational(K, 2)));
    }
    {
        Field Q = rationals();
        SUnitGroup U(Q, rational_S({2, 5}));
        ASSERT_EQ(U.s_generators().size(), 2u);
        EXPECT_TRUE(associate(U.s_generators()[0], Element::from_rational(Q, 2)));
        EXPECT_TRUE(associate(U.s_generators()[1], Element::from_rational(Q, 5)));
    }
    {
        Field K = make_quadratic(-1);
        SUnitGroup U(K, {primes_above(K, 2).front()});
        EXPECT_EQ(U.units().torsion_order(), 4);
        ASSERT_EQ(U.s_generators().size(), 1u);
        EXPECT_TRUE(associate(U.s_generators()[0], Element::from_power(K, {Rat(1), Rat(1)})));
    }
}

TEST(SUnits, DependentPrimeClasses)
{
    // p2, p3, p3' in Q(sqrt -5) all have order 2, and p2 p3 = (1 + sqrt -5).
    Field K = make_quadratic(-5);
    std::vector<PrimeIdeal> S = {primes_above(K, 2).front()};
    for (const auto& P : primes_above(K, 3))
        S.push_back(P);
    SUnitGroup U(K, S);
    EXPECT_EQ(U.rank(), 3u);
    Element a = Element::from_power(K, {Rat(1), Rat(1)});
    IntVec l = U.log(a);
    EXPECT_EQ(U.exp(l), a);
}

TEST(SUnits, LogRoundTripAndSupport)
{
    std::mt19937 rng(3);
    for (const Field& K : {make_quadratic(-5), make_quadratic(10), make_quadratic(-23), make_biquadratic(-1, 5),
                           make_biquadratic(2, 3), make_biquadratic(-1, 2)}) {
        std::vector<PrimeIdeal> S;
        for (long p : {2L, 3L, 5L})
            for (const auto& P : primes_above(K, p))
                S.push_back(P);
        SUnitGroup U(K, S);
        for (const auto& g : U.generators())
            EXPECT_NO_THROW(U.valuations(g));
        std::uniform_int_distribution<int> ex(-2, 2);
        for (int t = 0; t < 10; ++t) {
            IntVec v(U.group().ngens());
            for (auto& x : v)
                x = ex(rng);
            Element x = U.exp(v);
            EXPECT_EQ(U.group().reduce(U.log(x)), U.group().reduce(v)) << K->name();
        }
        // Galois action composes like the automorphism group.
        for (int s = 0; s < static_cast<int>(K->num_automorphisms()); ++s)
            for (int r = 0; r < static_cast<int>(K->num_automorphisms()); ++r)
                for (std::size_t i = 0; i < U.group().size(); ++i) {
                    IntVec lhs = U.group().normalize(U.group().generator(i) * U.action(s) * U.action(r));
                    EXPECT_EQ(lhs, U.group().normalize(U.group().generator(i) * U.action(s ^ r))) << K->name();
                }
    }
}

TEST(SUnits, NormIndexExamples)
{
    Subfield Q = make_quadratic(-1)->subfield(0);
    EXPECT_EQ(unit_norm_index(make_quadratic(-1), Q, rational_S({2})), 2);
    EXPECT_EQ(unit_norm_index(make_quadratic(5), make_quadratic(5)->subfield(0), {}), 1);
    EXPECT_EQ(unit_norm_index(make_quadratic(3), make_quadratic(3)->subfield(0), {}), 2);
}

TEST(SUnits, NormIndexAgreesWithValuationOracle)
{
    for (long d : {-5L, -1L, -3L, 2L, 3L, 5L, 6L, 7L, 10L, 15L, -6L, 34L}) {
        for (auto ps : {std::vector<long>{}, std::vector<long>{2}, std::vector<long>{2, 3}}) {
            Field K = make_quadratic(d);
            std::vector<PrimeIdeal> S;
            std::vector<Int> SZ;
            for (long p : ps) {
                S.push_back(rational_prime(p));
                SZ.push_back(p);
            }
            SUnitGroup U(K, lift_primes(K, K->subfield(0), S));
            EXPECT_EQ(unit_norm_index(K, K->subfield(0), S), rational_norm_index(U, SZ)) << d;
        }
    }
}

TEST(Cohomology, GenericAgreesWithCyclicFormula)
{
    for (long d : {-5L, -1L, -3L, 2L, 3L, 5L, 79L, -23L}) {
        Field K = make_quadratic(d);
        for (auto S : {rational_S({}), rational_S({2}), rational_S({2, 3})}) {
            GModule gm = unit_module(SUnitGroup(K, lift_primes(K, K->subfield(0), S)), K->subfield(0));
            EXPECT_TRUE(h1(gm).isomorphic_to(h1_cyclic(gm))) << d;
        }
    }
}

TEST(Cohomology, SpecExamples)
{
    auto h1q = [](long d) { return h1_units(make_quadratic(d), make_quadratic(d)->subfield(0), {}).invariants(); };
    EXPECT_EQ(h1q(-5), IntVec{2});
    EXPECT_EQ(h1q(5), IntVec{2});
    EXPECT_EQ(h1q(3), (IntVec{2, 2}));
    EXPECT_EQ(h1q(-1), IntVec{2});
}

TEST(Cohomology, TrivialModule)
{
    // Z/6 with trivial action of Z/2: H^1 = Hom(Z/2, Z/6) = Z/2, H^0 = Z/6 / 2Z/6 = Z/2.
    GModule gm{FgAbGroup::from_invariants({6}), {0, 1}, {IntMatrix::identity(1), IntMatrix::identity(1)},
               [](int a, int b) { return a ^ b; }};
    EXPECT_EQ(h1(gm).invariants(), IntVec{2});
    EXPECT_EQ(h0_tate(gm).invariants(), IntVec{2});
    // Z with the sign action: H^1 = Z/2, H^0 = 0.
    GModule sign{FgAbGroup::from_invariants({0}), {0, 1}, {IntMatrix::identity(1), IntMatrix::from_rows({IntVec{-1}}, 1)},
                 [](int a, int b) { return a ^ b; }};
    EXPECT_EQ(h1(sign).invariants(), IntVec{2});
    EXPECT_TRUE(h0_tate(sign).is_trivial());
}

TEST(Capitulation, SClassGroupExamples)
{
    Field K = make_quadratic(-5);
    const ClassGroup& cg = class_group(K);
    EXPECT_TRUE(s_class_group(cg, {primes_above(K, 2).front()}).group().is_trivial());
    EXPECT_TRUE(s_class_group(cg, {}).group().isomorphic_to(cg.group()));
    EXPECT_EQ(s_class_group(cg, primes_above(K, 11)).group().invariants(), IntVec{2});
}

TEST(Capitulation, Examples)
{
    Field K = make_biquadratic(-1, 5);
    auto idx = K->subfield_by_radicand(-5);
    ASSERT_TRUE(idx);
    Subfield F = K->subfield(*idx);
    GroupHom eps = capitulation(K, F, {});
    EXPECT_EQ(hom_kernel(eps).group().invariants(), IntVec{2});
    EXPECT_TRUE(capitulation(K, K->subfield(0), {}).source().is_trivial());
    Field L = make_quadratic(-23);
    GroupHom id = capitulation(L, L->self(), {});
    EXPECT_EQ(id.matrix(), IntMatrix::identity(id.source().size()));
    EXPECT_EQ(ambiguous_classes(make_quadratic(-5), make_quadratic(-5)->subfield(0), {}).group().invariants(), IntVec{2});
}

TEST(Capitulation, CommutesWithClassMap)
{
    std::mt19937 rng(5);
    for (auto [a, b] : {std::pair{-1L, 5L}, {-5L, 2L}, {-5L, -7L}, {-3L, 5L}, {2L, -7L}}) {
        Field K = make_biquadratic(a, b);
        for (std::size_t i = 1; i <= 3; ++i) {
            Subfield F = K->subfield(i);
            const ClassGroup& cgF = class_group(F.field);
            GroupHom eps = capitulation_full(K, F);
            auto primes = primes_up_to_norm(F.field, 200);
            std::uniform_int_distribution<std::size_t> pick(0, primes.size() - 1);
            for (int t = 0; t < 8; ++t) {
                Ideal A = primes[pick(rng)].ideal * primes[pick(rng)].ideal;
                EXPECT_EQ(class_group(K).class_of(extend_ideal(F, A, K)), eps.apply(cgF.class_of(A))) << K->name();
            }
            Int ker = order_of(hom_kernel(eps).group()), im = order_of(hom_image(eps).group());
            EXPECT_EQ(ker * im, cgF.order());
        }
    }
}

TEST(Polya, OstrowskiExamples)
{
    Field K = make_quadratic(-5);
    Subfield Q = K->subfield(0);
    EXPECT_EQ(ostrowski_ideal(K, Q, rational_prime(2), 1).ideal, primes_above(K, 2).front().ideal);
    EXPECT_EQ(ostrowski_ideal(K, Q, rational_prime(3), 1).ideal, Ideal::from_integer(K, 3));
    EXPECT_TRUE(ostrowski_ideal(K, Q, rational_prime(3), 2).ideal.is_unit());
}

TEST(Polya, OstrowskiInvariantAndNorm)
{
    for (auto [a, b] : {std::pair{-1L, 5L}, {2L, 3L}, {-5L, 2L}}) {
        Field K = make_biquadratic(a, b);
        for (std::size_t i = 0; i < K->num_subfields() - 1; ++i) {
            Subfield F = K->subfield(i);
            for (const auto& q : primes_up_to_norm(F.field, 60))
                for (int f : {1, 2, 4}) {
                    OstrowskiIdeal pi = ostrowski_ideal(K, F, q, f);
                    for (int s : F.galois)
                        EXPECT_EQ(pi.ideal.apply(s), pi.ideal);
                    // Absolute norm: N(q)^{f g}.
                    Int expect = pow(q.norm(), static_cast<unsigned long>(f * pi.primes.size()));
                    EXPECT_EQ(pi.ideal.norm(), expect);
                }
        }
    }
}

TEST(Polya, UnramifiedOstrowskiClassIsCapitulated)
{
    for (auto [a, b] : {std::pair{-1L, 5L}, {-5L, 2L}, {-3L, 5L}}) {
        Field K = make_biquadratic(a, b);
        for (std::size_t i = 0; i <= 3; ++i) {
            Subfield F = K->subfield(i);
            SClassGroup cl(class_group(K), {});
            GroupHom eps = capitulation(K, F, {});
            SClassGroup clF(class_group(F.field), {});
            for (const auto& q : primes_up_to_norm(F.field, 200)) {
                LocalData ld = local_data(K, F, q);
                if (ld.e > 1)
                    continue;
                IntVec c = cl.project(ostrowski_class(class_group(K), ostrowski_ideal(K, F, q, ld.f)));
                EXPECT_EQ(c, eps.apply(clF.class_of(q.ideal))) << K->name() << " " << q.label();
            }
        }
    }
}

TEST(Polya, InvariantFactorization)
{
    Field K = make_quadratic(-5);
    Subfield Q = K->subfield(0);
    auto fs = invariant_factorization(K, Q, {}, FracIdeal(Ideal::from_integer(K, 6)));
    ASSERT_EQ(fs.size(), 2u);
    EXPECT_EQ(fs[0].base.p, 2);
    EXPECT_EQ(fs[0].exponent, 2);
    EXPECT_EQ(fs[1].base.p, 3);
    EXPECT_EQ(fs[1].exponent, 1);
    EXPECT_TRUE(invariant_factorization(K, Q, {}, FracIdeal::unit(K)).empty());
    EXPECT_THROW(invariant_factorization(K, Q, {}, FracIdeal(primes_above(K, 3).front().ideal)), domain_error);
    EXPECT_THROW(invariant_factorization(K, Q, rational_S({2}), FracIdeal(Ideal::from_integer(K, 6))), domain_error);
}

TEST(Polya, InvariantFactorizationRoundTrip)
{
    std::mt19937 rng(17);
    for (const Field& K : {make_quadratic(-5), make_quadratic(10), make_biquadratic(-1, 5)}) {
        Subfield F = K->subfield(K->kind() == FieldKind::biquadratic ? 3 : 0);
        auto base = primes_up_to_norm(F.field, 50);
        std::uniform_int_distribution<std::size_t> pick(0, base.size() - 1);
        std::uniform_int_distribution<int> ex(-2, 3);
        for (int t = 0; t < 30; ++t) {
            std::vector<OstrowskiFactor> fs;
            for (int k = 0; k < 2; ++k) {
                const PrimeIdeal& q = base[pick(rng)];
                int f = local_data(K, F, q).f;
                int e = ex(rng);
                if (e == 0 || std::any_of(fs.begin(), fs.end(), [&](const auto& o) { return o.base == q; }))
                    continue;
                fs.push_back({q, f, e});
            }
            std::sort(fs.begin(), fs.end(), [](const auto& a, const auto& b) { return a.base < b.base; });
            FracIdeal A = ostrowski_product(K, F, fs);
            auto back = invariant_factorization(K, F, {}, A);
            ASSERT_EQ(back.size(), fs.size());
            for (std::size_t i = 0; i < fs.size(); ++i) {
                EXPECT_EQ(back[i].base, fs[i].base);
                EXPECT_EQ(back[i].exponent, fs[i].exponent);
            }
        }
    }
}

TEST(Polya, PoAndOstExamples)
{
    Field K = make_quadratic(-5);
    Subfield Q = K->subfield(0);
    EXPECT_EQ(relative_polya_group_S(K, Q, {}).subgroup.group().invariants(), IntVec{2});
    EXPECT_TRUE(relative_polya_group_S(K, Q, rational_S({2})).subgroup.group().is_trivial());
    EXPECT_TRUE(relative_polya_group_S(make_biquadratic(-1, 2), make_biquadratic(-1, 2)->subfield(0), {})
                    .subgroup.group()
                    .is_trivial());
    EXPECT_EQ(ostrowski_quotient_S(K, Q, {}).invariants(), IntVec{2});
    Field L = make_biquadratic(-1, 5);
    EXPECT_TRUE(ostrowski_quotient_S(L, L->subfield(*L->subfield_by_radicand(-5)), {}).is_trivial());
    EXPECT_TRUE(ostrowski_quotient_S(L, L->self(), {}).is_trivial());
}

TEST(Polya, HerbrandExamples)
{
    for (long d : {5L, 3L, -1L, -5L, 79L}) {
        Field K = make_quadratic(d);
        EXPECT_EQ(herbrand_check(K, K->subfield(0), {}).verdict, Verdict::pass) << d;
    }
}

TEST(Polya, BrzExamples)
{
    Field K = make_quadratic(-5);
    Subfield Q = K->subfield(0);
    auto r = brz_verify(K, Q, {});
    ASSERT_TRUE(r.check("brz_a"));
    EXPECT_EQ(r.check("brz_a")->lhs, 4);
    EXPECT_EQ(r.check("brz_a")->rhs, 4);
    EXPECT_TRUE(r.all_pass());
    auto r2 = brz_verify(K, Q, rational_S({2}));
    EXPECT_EQ(r2.check("brz_a")->lhs, 2);
    EXPECT_EQ(r2.check("brz_a")->rhs, 2);
    EXPECT_TRUE(r2.all_pass());
    Field K3 = make_quadratic(3);
    auto r3 = brz_verify(K3, K3->subfield(0), {});
    EXPECT_EQ(r3.check("brz_a")->lhs, 4);
    EXPECT_TRUE(r3.group("Ost")->is_trivial());
}

TEST(Polya, IkpAndHilbert94)
{
    Field L = make_biquadratic(-1, 5);
    Subfield F = L->subfield(*L->subfield_by_radicand(-5));
    EXPECT_EQ(ikp_check(L, F, {}).verdict, Verdict::pass);
    Field K = make_quadratic(-5);
    EXPECT_EQ(ikp_check(K, K->subfield(0), rational_S({2, 5})).verdict, Verdict::pass);
    EXPECT_THROW(ikp_check(K, K->subfield(0), {}), domain_error);
    auto h = hilbert94_check(make_quadratic(-1), make_quadratic(-1)->subfield(0), rational_S({2}));
    EXPECT_EQ(h.lhs, 4);
    EXPECT_EQ(h.rhs, 4);
    auto h5 = hilbert94_check(K, K->subfield(0), rational_S({2, 5}));
    EXPECT_EQ(h5.lhs, 8);
    EXPECT_EQ(h5.rhs, 8);
    EXPECT_THROW(hilbert94_check(make_quadratic(5), make_quadratic(5)->subfield(0), {}), domain_error);
}

TEST(Polya, FiltrationAndMonotonicity)
{
    Field K = make_biquadratic(-1, 5);
    EXPECT_EQ(filtration_check(K, *K->subfield_by_radicand(-5), {}).verdict, Verdict::pass);
    Field L = make_biquadratic(2, -5);
    EXPECT_EQ(filtration_check(L, *L->subfield_by_radicand(2), {}).verdict, Verdict::pass);
    Field M = make_quadratic(-5);
    EXPECT_EQ(monotonicity_check(M, M->subfield(0), {}, rational_S({2})).verdict, Verdict::pass);
}

TEST(Polya, TrivialBoundary)
{
    for (const Field& K : {make_quadratic(-5), make_quadratic(-23), make_quadratic(10), make_biquadratic(-5, 2)}) {
        for (auto S : {std::vector<Int>{}, std::vector<Int>{2}}) {
            Subfield F = K->self();
            auto SF = primes_above_all(F.field, S);
            PolyaGroupS po = relative_polya_group_S(K, F, SF);
            EXPECT_TRUE(po.subgroup.group().isomorphic_to(po.ambient.group()));
            EXPECT_TRUE(ostrowski_quotient_S(K, F, SF).is_trivial());
        }
    }
}

TEST(SUnits, LargeGeneratorsNeedHigherPrecision)
{
    // Building these S-part generators reduces products whose conjugates cancel at 100 digits.
    for (long d : {163L, 211L, 259L, 298L}) {
        Field K = make_quadratic(d);
        SUnitGroup U(K, primes_above(K, 2));
        for (const auto& g : U.generators())
            EXPECT_EQ(U.exp(U.log(g)), g) << d;
    }
}
