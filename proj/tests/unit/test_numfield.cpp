#include <polya/numfield/element.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace polya;

namespace {

Element random_integral(const Field& K, std::mt19937& rng, int range = 9)
{
    std::uniform_int_distribution<int> d(-range, range);
    IntVec c(K->degree());
    for (auto& v : c)
        v = d(rng);
    return Element(K, c);
}

std::vector<Field> sample_fields()
{
    std::vector<Field> out;
    for (long d : {-1, -2, -3, -5, -7, -23, 2, 3, 5, 13, 15})
        out.push_back(make_quadratic(d));
    for (auto [a, b] : std::vector<std::pair<long, long>>{{-1, 2}, {-1, 5}, {-1, 3}, {2, 3}, {-2, 5}, {-3, 5}, {5, -7}, {3, -7}, {2, -5}})
        out.push_back(make_biquadratic(a, b));
    return out;
}

} // namespace

TEST(NumberField, Quadratic)
{
    auto K = make_quadratic(-5);
    EXPECT_EQ(K->discriminant(), -20);
    EXPECT_EQ(K->r1(), 0);
    EXPECT_EQ(K->r2(), 1);
    EXPECT_EQ(Element(K, IntVec{0, 1}).str(), "sqrt(-5)");
    auto Q5 = make_quadratic(5);
    EXPECT_EQ(Q5->discriminant(), 5);
    EXPECT_EQ(Q5->r1(), 2);
    EXPECT_EQ(Element(Q5, IntVec{0, 1}).str(), "1/2 + 1/2*sqrt(5)");
    EXPECT_THROW(make_quadratic(12), domain_error);
    EXPECT_THROW(make_quadratic(1), domain_error);
    // sigma(sqrt -5) = -sqrt -5
    auto r = Element::radical(K, 1);
    EXPECT_EQ(r.apply(1), -r);
    EXPECT_EQ(make_quadratic(-5), K);
}

TEST(NumberField, DiscriminantFormula)
{
    for (long d = -60; d <= 60; ++d) {
        if (d == 0 || d == 1 || !is_squarefree(d))
            continue;
        auto K = make_quadratic(d);
        EXPECT_EQ(K->discriminant(), mod(Int(d), 4) == 1 ? Int(d) : Int(4 * d));
    }
}

TEST(NumberField, Biquadratic)
{
    auto K = make_biquadratic(-1, 2);
    EXPECT_EQ(K->discriminant(), 256);
    std::vector<Int> subdiscs;
    for (std::size_t i = 1; i <= 3; ++i)
        subdiscs.push_back(K->subfield(i).field->discriminant());
    EXPECT_EQ(subdiscs, (std::vector<Int>{-4, 8, -8}));
    auto L = make_biquadratic(-1, 5);
    EXPECT_EQ(L->discriminant(), 400);
    EXPECT_EQ(L->subfield(3).field->d(), -5);
    EXPECT_THROW(make_biquadratic(2, 8), domain_error);
    EXPECT_THROW(make_biquadratic(3, 3), domain_error);
    EXPECT_EQ(parse_field(" Q( sqrt -1 , sqrt 5 ) "), L);
    EXPECT_EQ(parse_field("Q(sqrt -5)"), make_quadratic(-5));
    EXPECT_THROW(parse_field("Q(sqrt 12)"), domain_error);
}

TEST(NumberField, BiquadraticDiscriminantIsProduct)
{
    for (long a : {-7, -5, -3, -2, -1, 2, 3, 5, 6, 7, 10, 11})
        for (long b : {-11, -6, -5, -3, -2, -1, 2, 3, 5, 7, 13}) {
            if (a == b || is_square(Int(a * b)))
                continue;
            auto K = make_biquadratic(a, b);
            Int prod = 1;
            for (std::size_t i = 1; i <= 3; ++i)
                prod *= K->subfield(i).field->discriminant();
            EXPECT_EQ(K->discriminant(), prod) << K->name();
        }
}

TEST(NumberField, AutomorphismGroup)
{
    for (const auto& K : sample_fields()) {
        const int n = static_cast<int>(K->degree());
        for (int a = 0; a < n; ++a) {
            EXPECT_EQ(K->automorphism(a) * K->automorphism(a), IntMatrix::identity(K->degree()));
            for (int b = 0; b < n; ++b)
                EXPECT_EQ(K->automorphism(a) * K->automorphism(b), K->automorphism(K->compose(a, b)));
        }
    }
}

TEST(NumberField, GaloisOverSubfields)
{
    auto K = make_biquadratic(-1, 2);
    EXPECT_EQ(K->subfield(2).relative_degree(), 2u);  // Gal(Q(zeta8)/Q(sqrt 2))
    EXPECT_EQ(K->self().galois, (std::vector<int>{0}));
    EXPECT_EQ(K->subfield(0).relative_degree(), 4u);
    std::mt19937 rng(1);
    for (std::size_t i = 0; i < K->num_subfields(); ++i) {
        auto F = K->subfield(i);
        auto x = random_integral(F.field, rng);
        auto y = embed(F, x, K);
        for (int s : F.galois)
            EXPECT_EQ(y.apply(s), y);
    }
}

TEST(NumberField, Embedding)
{
    auto K = make_biquadratic(-1, 5);
    auto F = K->subfield(2);
    auto s5 = embed(F, Element::radical(F.field, 1), K);
    EXPECT_EQ(s5 * s5, Element::from_rational(K, 5));
    EXPECT_EQ(embed(F, Element::one(F.field), K), Element::one(K));
    std::mt19937 rng(2);
    for (int t = 0; t < 20; ++t) {
        auto a = random_integral(F.field, rng), b = random_integral(F.field, rng);
        EXPECT_EQ(embed(F, a * b, K), embed(F, a, K) * embed(F, b, K));
        EXPECT_EQ(embed(F, a + b, K), embed(F, a, K) + embed(F, b, K));
    }
    EXPECT_THROW(embed(F, Element::one(make_quadratic(3)), K), domain_error);
}

TEST(NumberField, Norms)
{
    auto K = make_quadratic(-5);
    EXPECT_EQ(Element(K, IntVec{1, 1}).norm(), 6);
    auto L = make_biquadratic(-1, 5);
    auto i = Element::radical(L, 1);
    EXPECT_EQ(relative_norm(L->subfield(2), i), Element::one(L->subfield(2).field));
    std::mt19937 rng(4);
    auto x = random_integral(L, rng);
    EXPECT_EQ(relative_norm(L->self(), x), x);
}

TEST(NumberField, NormProperties)
{
    std::mt19937 rng(9);
    for (const auto& K : sample_fields()) {
        for (int t = 0; t < 10; ++t) {
            auto x = random_integral(K, rng), y = random_integral(K, rng);
            EXPECT_EQ((x * y).norm(), x.norm() * y.norm());
            EXPECT_TRUE(is_integer(x.norm()));
            if (!x.is_zero()) {
                EXPECT_EQ(x * x.inverse(), Element::one(K));
            }
            for (std::size_t i = 0; i < K->num_subfields(); ++i) {
                auto F = K->subfield(i);
                auto nk = relative_norm(F, x);
                EXPECT_EQ(nk.norm(), x.norm());
                auto ny = relative_norm(F, y);
                EXPECT_EQ(relative_norm(F, x * y), nk * ny);
            }
        }
    }
}

TEST(NumberField, IntegralBasisIsClosed)
{
    for (const auto& K : sample_fields()) {
        const std::size_t n = K->degree();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                IntVec ei(n), ej(n);
                ei[i] = 1;
                ej[j] = 1;
                EXPECT_TRUE((Element(K, ei) * Element(K, ej)).is_integral());
            }
        EXPECT_EQ(Element(K, IntVec(n, 0)).power_coords(), RatVec(n));
    }
}

TEST(NumberField, SquareRoots)
{
    std::mt19937 rng(12);
    for (const auto& K : sample_fields()) {
        for (int t = 0; t < 10; ++t) {
            auto x = random_integral(K, rng);
            if (x.is_zero())
                continue;
            auto r = sqrt_in_field(x * x);
            ASSERT_TRUE(r.has_value()) << K->name() << " " << x.str();
            EXPECT_EQ(*r * *r, x * x);
        }
    }
    EXPECT_FALSE(sqrt_in_field(Element::from_rational(make_quadratic(-5), 2)).has_value());
    EXPECT_TRUE(sqrt_in_field(Element::from_rational(make_biquadratic(-1, 5), -5)).has_value());
}

TEST(NumberField, RootsOfUnity)
{
    EXPECT_EQ(roots_of_unity(make_quadratic(-5)).first, 2);
    EXPECT_EQ(roots_of_unity(make_quadratic(-1)).first, 4);
    EXPECT_EQ(roots_of_unity(make_quadratic(-3)).first, 6);
    EXPECT_EQ(roots_of_unity(make_biquadratic(-1, 2)).first, 8);
    EXPECT_EQ(roots_of_unity(make_biquadratic(-1, 3)).first, 12);
    EXPECT_EQ(roots_of_unity(make_biquadratic(2, 3)).first, 2);
    for (const auto& K : sample_fields()) {
        auto [w, z] = roots_of_unity(K);
        EXPECT_EQ(z.pow(w), Element::one(K));
        for (int k = 1; k < w; ++k)
            EXPECT_NE(z.pow(k), Element::one(K));
    }
}
