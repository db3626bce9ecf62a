// Acceptance criteria 1-8: one PASS/FAIL line each, exit status 0 iff all pass.
#include <polya/polya/polya.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

using namespace polya;

namespace {

constexpr double golden_limit_s = 1.0;
constexpr double quadratic_scan_limit_s = 120.0;
constexpr double biquadratic_limit_s = 300.0;
constexpr long oracle_norm_bound = 200;

constexpr int max_reported = 6;

struct Outcome {
    bool ok = true;
    int failures = 0;
    std::ostringstream why;

    void require(bool cond, const std::string& what)
    {
        if (cond)
            return;
        if (failures < max_reported)
            why << (failures ? "; " : "") << what;
        ++failures;
        ok = false;
    }

    std::string summary() const
    {
        std::string s = why.str();
        if (failures > max_reported)
            s += "; ... " + std::to_string(failures) + " failures in total";
        return s;
    }
};

std::vector<PrimeIdeal> rational_S(std::initializer_list<long> ps)
{
    std::vector<PrimeIdeal> out;
    for (long p : ps)
        out.push_back(primes_above(rationals(), p).front());
    return out;
}

std::string inv(const FgAbGroup& g) { return g.describe(); }

bool verdict_ok(const BrzReport& r, const std::string& name, Outcome& o)
{
    const CheckResult* c = r.check(name);
    if (!c) {
        o.require(false, r.field + " over " + r.base + " S=" + r.S + ": missing check " + name);
        return false;
    }
    o.require(c->verdict == Verdict::pass, r.field + " over " + r.base + " S=" + r.S + ": " + name + " " +
                                               verdict_name(c->verdict) + " (" + c->lhs.get_str() + " vs " +
                                               c->rhs.get_str() + ")");
    return c->verdict == Verdict::pass;
}

void boundary(const Field& K, const std::vector<Int>& S, Outcome& o)
{
    Subfield F = K->self();
    auto SF = primes_above_all(F.field, S);
    PolyaGroupS po = relative_polya_group_S(K, F, SF);
    o.require(po.subgroup.same_as(Subgroup(po.ambient.group(), [&] {
                  std::vector<IntVec> all;
                  for (std::size_t i = 0; i < po.ambient.group().size(); ++i)
                      all.push_back(po.ambient.group().generator(i));
                  return all;
              }())),
              K->name() + ": Po(K/K)_S != Cl(K)_S");
    o.require(ostrowski_quotient_S(K, F, SF).is_trivial(), K->name() + ": Ost(K/K)_S != 0");
}

// Round trip on random invariant ideals: norms-down-and-up of random ideals and
// random Ostrowski products.
void factorization_round_trip(const Field& K, std::mt19937& rng, int count, Outcome& o)
{
    Subfield F = K->subfield(0);
    auto primesK = primes_up_to_norm(K, 200);
    auto primesF = primes_up_to_norm(F.field, 60);
    std::uniform_int_distribution<std::size_t> pk(0, primesK.size() - 1), pf(0, primesF.size() - 1);
    std::uniform_int_distribution<int> ex(-2, 3);
    for (int t = 0; t < count; ++t) {
        FracIdeal A = FracIdeal::unit(K);
        if (t % 2 == 0) {
            Ideal B = primesK[pk(rng)].ideal * primesK[pk(rng)].ideal;
            for (int s : F.galois)
                A = A * FracIdeal(B.apply(s));
            if (t % 4 == 0)
                A = A.inverse();
        } else {
            for (int k = 0; k < 3; ++k) {
                const PrimeIdeal& q = primesF[pf(rng)];
                int f = local_data(K, F, q).f;
                A = A * FracIdeal(ostrowski_ideal(K, F, q, f).ideal).pow(ex(rng));
            }
        }
        auto fs = invariant_factorization(K, F, {}, A);
        o.require(ostrowski_product(K, F, fs) == A, K->name() + ": factorization of " + A.str() + " does not round-trip");
    }
}

struct Criterion {
    int id;
    std::string title;
    double limit_s;
    std::function<void(Outcome&)> run;
};

}  // namespace

int main()
{
    std::vector<Criterion> criteria;

    criteria.push_back({1, "golden Q(sqrt -5)/Q, S={oo}", golden_limit_s, [](Outcome& o) {
        Field K = make_quadratic(-5);
        BrzReport r = brz_verify(K, K->subfield(0), {}, oracle_norm_bound);
        o.require(r.group("Cl(K)")->invariants() == IntVec{2}, "Cl = " + inv(*r.group("Cl(K)")));
        o.require(r.group("Po")->invariants() == IntVec{2}, "Po = " + inv(*r.group("Po")));
        o.require(r.group("H1") && r.group("H1")->invariants() == IntVec{2}, "H1 wrong");
        o.require(r.group("Ker")->is_trivial(), "Ker nontrivial");
        if (verdict_ok(r, "brz_a", o))
            o.require(r.check("brz_a")->lhs == 4, "identity value " + r.check("brz_a")->lhs.get_str());
    }});

    criteria.push_back({2, "golden Q(sqrt -5)/Q, S={oo,2}", golden_limit_s, [](Outcome& o) {
        Field K = make_quadratic(-5);
        BrzReport r = brz_verify(K, K->subfield(0), rational_S({2}), oracle_norm_bound);
        o.require(r.group("Po")->is_trivial(), "Po_S = " + inv(*r.group("Po")));
        o.require(r.group("Ost")->is_trivial(), "Ost_S = " + inv(*r.group("Ost")));
        o.require(r.group("H1") && r.group("H1")->invariants() == IntVec{2}, "H1 wrong");
        if (verdict_ok(r, "brz_a", o))
            o.require(r.check("brz_a")->lhs == 2, "identity value " + r.check("brz_a")->lhs.get_str());
    }});

    criteria.push_back({3, "Hilbert 94 fixtures", golden_limit_s, [](Outcome& o) {
        Field K = make_quadratic(-1);
        CheckResult a = hilbert94_check(K, K->subfield(0), rational_S({2}));
        o.require(a.verdict == Verdict::pass && a.lhs == 4, "Q(i): " + a.lhs.get_str() + " vs " + a.rhs.get_str());
        Field L = make_quadratic(-5);
        CheckResult b = hilbert94_check(L, L->subfield(0), rational_S({2, 5}));
        o.require(b.verdict == Verdict::pass && b.lhs == 8, "Q(sqrt -5): " + b.lhs.get_str() + " vs " + b.rhs.get_str());
    }});

    criteria.push_back({4, "cyclotomic Polya fields Q(zeta8), Q(zeta12)", 0, [](Outcome& o) {
        for (const Field& K : {make_biquadratic(-1, 2), make_biquadratic(-1, 3)}) {
            PolyaGroupS po = relative_polya_group_S(K, K->subfield(0), {});
            o.require(po.subgroup.group().is_trivial(), K->name() + ": Po = " + inv(po.subgroup.group()));
            Subgroup def = polya_group_by_definition(K, K->subfield(0), {}, oracle_norm_bound);
            o.require(def.group().is_trivial(), K->name() + ": definition-based Po nontrivial");
        }
    }});

    criteria.push_back({5, "capitulation Q(i, sqrt 5)/Q(sqrt -5)", 0, [](Outcome& o) {
        Field K = make_biquadratic(-1, 5);
        Subfield F = K->subfield(*K->subfield_by_radicand(-5));
        BrzReport r = brz_verify(K, F, {}, oracle_norm_bound);
        const FgAbGroup* ker = r.group("Ker");
        o.require(ker->invariants() == IntVec{2} && ker->isomorphic_to(class_group(F.field).group()),
                  "Ker = " + inv(*ker));
        o.require(r.group("H1") && ker->isomorphic_to(*r.group("H1")), "Ker and H1 differ");
        o.require(r.group("Ost")->is_trivial(), "Ost = " + inv(*r.group("Ost")));
        verdict_ok(r, "ikp", o);
    }});

    std::vector<Field> quadratic_fields;
    for (long d = -300; d <= 300; ++d)
        if (d != 0 && d != 1 && is_squarefree(Int(d)))
            quadratic_fields.push_back(make_quadratic(d));

    criteria.push_back({6, "quadratic scan 0 < |d| <= 300", quadratic_scan_limit_s, [&](Outcome& o) {
        for (const Field& K : quadratic_fields)
            for (auto S : {rational_S({}), rational_S({2})}) {
                BrzReport r = brz_verify(K, K->subfield(0), S, oracle_norm_bound);
                for (const char* c : {"brz_a", "brz_b", "brz_d", "herbrand"})
                    verdict_ok(r, c, o);
            }
        std::mt19937 rng(2024);
        for (long d : {-5L, -6L, -14L, -23L, -30L, 10L, 15L, 79L, 82L, 226L})
            factorization_round_trip(make_quadratic(d), rng, 100, o);
    }});

    std::vector<Field> biquadratic_fields;
    const long ms[] = {-1, 2, -2, 3, -3, 5, -5, -7};
    for (long a : ms)
        for (long b : ms)
            if (a < b) {
                try {
                    Field K = make_biquadratic(a, b);
                    if (std::find(biquadratic_fields.begin(), biquadratic_fields.end(), K) == biquadratic_fields.end())
                        biquadratic_fields.push_back(K);
                } catch (const domain_error&) {
                }
            }

    criteria.push_back({7, "biquadratic relative suite", biquadratic_limit_s, [&](Outcome& o) {
        for (const Field& K : biquadratic_fields) {
            o.require(class_group(K).order() == class_number_oracle(K), K->name() + ": class number mismatch");
            for (std::size_t i = 1; i <= 3; ++i) {
                Subfield F = K->subfield(i);
                for (auto SZ : {std::vector<Int>{}, std::vector<Int>{2}}) {
                    BrzReport r = brz_verify(K, F, primes_above_all(F.field, SZ), oracle_norm_bound);
                    verdict_ok(r, "brz_a", o);
                    verdict_ok(r, "brz_b", o);
                    if (r.group("H1") && F.relative_degree() == 2 && r.group("Ram")->is_trivial())
                        verdict_ok(r, "brz_c", o);
                    CheckResult fc = filtration_check(K, i, SZ);
                    o.require(fc.verdict == Verdict::pass, K->name() + ": filtration fails for " + F.field->name());
                }
            }
        }
    }});

    criteria.push_back({8, "trivial boundary Po(K/K)_S = Cl(K)_S, Ost(K/K)_S = 0", 0, [&](Outcome& o) {
        for (const auto* list : {&quadratic_fields, &biquadratic_fields})
            for (const Field& K : *list)
                for (auto S : {std::vector<Int>{}, std::vector<Int>{2}})
                    boundary(K, S, o);
    }});

    bool all = true;
    for (auto& c : criteria) {
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit_s > 0)
            o.require(secs < c.limit_s, "runtime " + std::to_string(secs) + " s over limit");
        all = all && o.ok;
        std::printf("criterion %d: %s  %s  (%.2f s)%s%s\n", c.id, o.ok ? "PASS" : "FAIL", c.title.c_str(), secs,
                    o.ok ? "" : "  ", o.summary().c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
