#include <polya/abelian/fg_group.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace polya;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi)
{
    std::uniform_int_distribution<int> dist(lo, hi);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = dist(rng);
    return m;
}

bool is_row_hnf(const IntMatrix& h)
{
    auto piv = echelon_pivots(h);
    for (std::size_t i = 0; i < piv.size(); ++i) {
        if (h(i, piv[i]) <= 0)
            return false;
        for (std::size_t k = 0; k < i; ++k)
            if (h(k, piv[i]) < 0 || h(k, piv[i]) >= h(i, piv[i]))
                return false;
        for (std::size_t k = i + 1; k < h.rows(); ++k)
            if (h(k, piv[i]) != 0)
                return false;
    }
    for (std::size_t i = piv.size(); i < h.rows(); ++i)
        if (!h.row_is_zero(i))
            return false;
    return true;
}

} // namespace

TEST(Hnf, SmallExample)
{
    IntMatrix m{{2, 4}, {1, 3}};
    auto [h, u] = hnf(m);
    // [[1,3],[0,2]] spans the same lattice; reducing 3 modulo the pivot 2 gives the canonical form.
    EXPECT_EQ(h, (IntMatrix{{1, 1}, {0, 2}}));
    EXPECT_EQ(hnf(IntMatrix{{1, 3}, {0, 2}}).first, h);
    EXPECT_EQ(u * m, h);
    EXPECT_EQ(abs(determinant(u)), 1);
}

TEST(Hnf, IdentityAndZero)
{
    auto [h, u] = hnf(IntMatrix::identity(3));
    EXPECT_EQ(h, IntMatrix::identity(3));
    EXPECT_EQ(u, IntMatrix::identity(3));
    auto [z, uz] = hnf(IntMatrix(2, 3));
    EXPECT_TRUE(z.is_zero());
}

TEST(Hnf, RandomProperties)
{
    std::mt19937 rng(7);
    for (int t = 0; t < 200; ++t) {
        auto m = random_matrix(rng, 1 + t % 5, 1 + (t / 5) % 4, -20, 20);
        auto [h, u] = hnf(m);
        EXPECT_EQ(u * m, h);
        EXPECT_EQ(abs(determinant(u)), 1);
        EXPECT_TRUE(is_row_hnf(h)) << h;
    }
}

TEST(Snf, Examples)
{
    auto [d1, l1, r1] = snf(IntMatrix{{2, 0}, {0, 3}});
    EXPECT_EQ(d1, (IntMatrix{{1, 0}, {0, 6}}));
    IntMatrix m{{4, 6}, {6, 4}};
    auto [d2, l2, r2] = snf(m);
    EXPECT_EQ(d2, (IntMatrix{{2, 0}, {0, 10}}));
    EXPECT_EQ(l2 * m * r2, d2);
    auto [d3, l3, r3] = snf(IntMatrix(2, 2));
    EXPECT_TRUE(d3.is_zero());
}

TEST(Snf, RandomProperties)
{
    std::mt19937 rng(11);
    for (int t = 0; t < 200; ++t) {
        auto m = random_matrix(rng, 1 + t % 5, 1 + (t / 5) % 5, -30, 30);
        auto s = snf_full(m);
        EXPECT_EQ(s.l * m * s.r, s.d);
        EXPECT_EQ(abs(determinant(s.l)), 1);
        EXPECT_EQ(abs(determinant(s.r)), 1);
        EXPECT_EQ(s.r * s.r_inv, IntMatrix::identity(m.cols()));
        auto diag = s.diagonal();
        for (std::size_t i = 0; i < s.d.rows(); ++i)
            for (std::size_t j = 0; j < s.d.cols(); ++j)
                if (i != j) {
                    EXPECT_EQ(s.d(i, j), 0);
                }
        for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
            EXPECT_GE(diag[i], 0);
            if (diag[i] != 0) {
                EXPECT_EQ(mod(diag[i + 1], diag[i]), 0);
            } else {
                EXPECT_EQ(diag[i + 1], 0);
            }
        }
    }
}

TEST(FgAbGroup, Presentations)
{
    auto g = group_from_presentation(2, IntMatrix{{2, 0}});
    EXPECT_EQ(g.invariants(), (IntVec{2, 0}));
    EXPECT_EQ(g.describe(), "Z/2 + Z");
    EXPECT_FALSE(g.order().has_value());
    auto h = group_from_presentation(2, IntMatrix{{2, 0}, {0, 3}});
    EXPECT_EQ(h.invariants(), (IntVec{6}));
    EXPECT_EQ(*h.order(), 6);
    auto z3 = group_from_presentation(3, IntMatrix(0, 3));
    EXPECT_EQ(z3.invariants(), (IntVec{0, 0, 0}));
}

TEST(FgAbGroup, InvariantUnderRowOperations)
{
    std::mt19937 rng(3);
    for (int t = 0; t < 50; ++t) {
        auto m = random_matrix(rng, 3, 3, -9, 9);
        auto g = group_from_presentation(3, m);
        IntMatrix m2 = m;
        m2.add_row(0, 1, 5);
        m2.swap_rows(1, 2);
        m2.negate_row(2);
        EXPECT_EQ(group_from_presentation(3, m2).invariants(), g.invariants());
    }
}

TEST(FgAbGroup, ReduceLiftRoundTrip)
{
    auto g = group_from_presentation(3, IntMatrix{{4, 6, 0}, {6, 4, 0}});
    EXPECT_EQ(g.invariants(), (IntVec{2, 10, 0}));
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b) {
            IntVec x{a, b, a - b};
            EXPECT_EQ(g.reduce(g.lift(g.reduce(x))), g.reduce(x));
        }
    EXPECT_TRUE(vec_is_zero(g.reduce(IntVec{4, 6, 0})));
}

TEST(GroupHom, KernelAndCokernel)
{
    auto z4 = FgAbGroup::from_invariants({4});
    GroupHom times2(z4, z4, IntMatrix{{2}});
    auto k = hom_kernel(times2);
    EXPECT_EQ(k.group().invariants(), (IntVec{2}));
    EXPECT_TRUE(k.contains(IntVec{2}));
    EXPECT_FALSE(k.contains(IntVec{1}));
    EXPECT_EQ(hom_cokernel(times2).group.invariants(), (IntVec{2}));

    auto z6 = FgAbGroup::from_invariants({6});
    EXPECT_EQ(*hom_kernel(GroupHom::zero(z6, z6)).order(), 6);

    auto z = FgAbGroup::from_invariants({0});
    auto z5 = FgAbGroup::from_invariants({5});
    GroupHom proj(z, z5, IntMatrix{{1}});
    auto kp = hom_kernel(proj);
    EXPECT_EQ(kp.group().invariants(), (IntVec{0}));
    EXPECT_TRUE(kp.contains(IntVec{5}));
    EXPECT_FALSE(kp.contains(IntVec{3}));
    EXPECT_TRUE(hom_cokernel(proj).group.is_trivial());

    GroupHom incl(z, z, IntMatrix{{2}});
    EXPECT_EQ(hom_cokernel(incl).group.invariants(), (IntVec{2}));
    EXPECT_THROW(GroupHom(z4, z6, IntMatrix{{1}}), domain_error);
}

TEST(GroupHom, OrderIdentityRandom)
{
    std::mt19937 rng(5);
    for (int t = 0; t < 60; ++t) {
        auto s = FgAbGroup::from_invariants({2, 6, 12});
        auto tg = FgAbGroup::from_invariants({3, 6});
        std::vector<IntVec> imgs;
        // Images must respect orders: choose multiples that vanish.
        std::uniform_int_distribution<int> d(0, 5);
        for (const auto& ord : s.invariants()) {
            IntVec v{d(rng) % 3, d(rng)};
            for (auto& x : v)
                x *= 1;
            IntVec w = tg.normalize(vec_scale(v, ord));
            if (!vec_is_zero(w))
                v = tg.zero();
            imgs.push_back(v);
        }
        GroupHom f = GroupHom::from_images(s, tg, {tg.lift(imgs[0]), tg.lift(imgs[1]), tg.lift(imgs[2])});
        auto k = hom_kernel(f);
        auto im = hom_image(f);
        EXPECT_EQ(*s.order(), *k.order() * *im.order());
    }
}

TEST(Subgroup, Span)
{
    auto z4 = FgAbGroup::from_invariants({4});
    EXPECT_EQ(subgroup_span(z4, {{2}}).group().invariants(), (IntVec{2}));
    EXPECT_TRUE(subgroup_span(z4, {}).group().is_trivial());
    auto g = FgAbGroup::from_invariants({2, 4});
    auto s = subgroup_span(g, {{1, 0}, {0, 2}});
    EXPECT_EQ(*s.order(), 4);
    EXPECT_TRUE(s.contains(IntVec{1, 2}));
    EXPECT_FALSE(s.contains(IntVec{0, 1}));
    auto q = quotient(g, s.generators());
    EXPECT_EQ(*q.group.order(), 2);
}

TEST(FixedPoints, Examples)
{
    auto z2 = FgAbGroup::from_invariants({0, 0});
    auto fp = fixed_points(z2, {IntMatrix{{0, 1}, {1, 0}}});
    EXPECT_EQ(fp.group().invariants(), (IntVec{0}));
    EXPECT_TRUE(fp.contains(IntVec{3, 3}));
    EXPECT_FALSE(fp.contains(IntVec{1, 0}));

    auto g = FgAbGroup::from_invariants({2, 4});
    auto all = fixed_points(g, {IntMatrix::identity(2)});
    EXPECT_EQ(*all.order(), 8);

    auto z3 = FgAbGroup::from_invariants({3});
    EXPECT_TRUE(fixed_points(z3, {IntMatrix{{-1}}}).group().is_trivial());
    EXPECT_THROW(fixed_points(z3, {IntMatrix{{3}}}), domain_error);
}

TEST(FixedPoints, Idempotent)
{
    auto g = FgAbGroup::from_invariants({2, 4, 0});
    IntMatrix a{{1, 0, 0}, {1, 3, 0}, {0, 0, 1}};
    auto fp = fixed_points(g, {a});
    for (const auto& x : fp.generators()) {
        EXPECT_EQ(GroupHom(g, g, a).apply(x), g.normalize(x));
        EXPECT_TRUE(fp.contains(GroupHom(g, g, a).apply(x)));
    }
    auto inner = fixed_points(g, {a, a});
    EXPECT_TRUE(inner.same_as(fp));
}
