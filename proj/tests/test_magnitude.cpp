#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

using namespace eulerkit;
using namespace testgen;

namespace {
Rational q(std::int64_t n, std::int64_t d = 1) { return Rational(BigInt(n), BigInt(d)); }
}  // namespace

TEST(Euler, TwoArrow) {
    const auto r = euler_char(two_arrow());
    ASSERT_TRUE(r.exists);
    EXPECT_EQ(*r.value, q(1));
    EXPECT_EQ(r.weighting->values, (QVector{0, 1}));
    EXPECT_EQ(r.coweighting->values, (QVector{1, 0}));
    EXPECT_EQ(adjacency(two_arrow()).matrix.str(), "1 1 / 0 1");
}

TEST(Euler, ThreeObjectHasManyWeightings) {
    const auto c = three_object();
    const auto s = weighting_solution(c);
    ASSERT_TRUE(s.consistent);
    EXPECT_EQ(*s.particular, (QVector{0, 0, 1}));
    EXPECT_EQ(s.nullspace_basis.size(), 1u);
    const auto r = euler_char(c);
    ASSERT_TRUE(r.exists);
    EXPECT_EQ(*r.value, q(1));
    EXPECT_EQ(r.coweighting->values, (QVector{1, 0, 0}));
    // every shifted weighting is still a weighting with the same sum
    QVector w = *s.particular;
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += Rational(5) * s.nullspace_basis[0][i];
    EXPECT_TRUE(is_weighting(c, w));
    EXPECT_EQ(sum(w), q(1));
}

TEST(Euler, DiscreteMonoidsEmpty) {
    for (std::size_t n = 0; n <= 6; ++n) EXPECT_EQ(*euler_char(discrete_category(n)).value, q(std::int64_t(n)));
    for (std::size_t m : {1, 2, 3, 4, 6}) EXPECT_EQ(*euler_char(cyclic_group(m)).value, q(1, std::int64_t(m)));
    EXPECT_EQ(*euler_char(klein_four()).value, q(1, 4));
    EXPECT_EQ(*euler_char(transformation_monoid(3)).value, q(1, 27));
    const auto e = euler_char(empty_category());
    ASSERT_TRUE(e.exists);
    EXPECT_EQ(*e.value, q(0));
}

TEST(Euler, MissingCoweightingIsReported) {
    const auto c = no_coweighting();
    EXPECT_EQ(adjacency(c).matrix.str(), "4 2 / 4 2");
    const auto r = euler_char(c);
    EXPECT_FALSE(r.exists);
    EXPECT_TRUE(r.weighting.has_value());
    EXPECT_FALSE(r.coweighting.has_value());
    EXPECT_EQ(r.reason, "no coweighting");
    const auto o = euler_char(opposite(c));
    EXPECT_FALSE(o.exists);
    EXPECT_EQ(o.reason, "no weighting");
}

TEST(Euler, OppositeAgrees) {
    for (const auto& [name, c] : generated_suite()) {
        const auto a = euler_char(c);
        const auto b = euler_char(opposite(c));
        ASSERT_EQ(a.exists, b.exists) << name;
        if (a.exists) { EXPECT_EQ(*a.value, *b.value) << name; }
    }
}

TEST(Euler, MatchesAdjugateOracleWhenInvertible) {
    std::size_t checked = 0;
    for (const auto& [name, c] : generated_suite()) {
        if (c.object_count() > 7) continue;
        const auto o = oracle::chi_invertible(adjacency(c).matrix);
        if (!o) continue;
        ++checked;
        const auto r = euler_char(c);
        ASSERT_TRUE(r.exists) << name;
        EXPECT_EQ(*r.value, *o) << name;
    }
    EXPECT_GE(checked, 20u);
}

TEST(Euler, PreordersMatchMobiusOracle) {
    for (std::uint32_t seed = 1; seed <= 40; ++seed) {
        const std::size_t n = 1 + seed % 6;
        auto rel = seed % 2 ? random_poset_relation(n, seed) : random_preorder_relation(n, seed);
        const auto c = thin_category(rel, "t");
        const auto r = euler_char(c);
        ASSERT_TRUE(r.exists) << seed;
        EXPECT_EQ(*r.value, oracle::chi_of_preorder(rel)) << seed;
    }
}

TEST(Euler, NonSquareMatrixRejected) {
    EXPECT_THROW(euler_from_matrix(QMatrix(2, 3)), std::invalid_argument);
    EXPECT_EQ(*euler_from_matrix(QMatrix(0, 0)).value, q(0));
}

TEST(Weightings, ConstantOnClasses) {
    const auto c = chaotic(2);
    const auto w = weighting(c);
    ASSERT_TRUE(w.has_value());
    const auto k = constant_weighting(c);
    ASSERT_TRUE(k.has_value());
    EXPECT_EQ(k->values, (QVector{q(1, 2), q(1, 2)}));
    EXPECT_TRUE(is_weighting(c, k->values));
    const auto cw = constant_coweighting(three_object());
    ASSERT_TRUE(cw.has_value());
    EXPECT_EQ(cw->values, (QVector{q(1, 2), q(1, 2), 0}));
    EXPECT_TRUE(is_coweighting(three_object(), cw->values));
    EXPECT_FALSE(constant_coweighting(no_coweighting()).has_value());
}

TEST(Weightings, TransportAcrossEquivalence) {
    const auto a = three_object();
    const auto b = two_arrow();
    const auto eq = equivalence_witness(a, b);
    ASSERT_TRUE(eq.has_value());
    const auto k = transport_weighting(*eq, a, b, *weighting(b));
    EXPECT_EQ(k.values, (QVector{0, 0, 1}));
    EXPECT_TRUE(is_weighting(a, k.values));
    const auto back = equivalence_witness(b, a);
    const auto l = transport_weighting(*back, b, a, *constant_coweighting(a));
    EXPECT_EQ(l.side, Side::coweighting);
    EXPECT_EQ(l.values, (QVector{1, 0}));
    EXPECT_TRUE(is_coweighting(b, l.values));

    const auto ch = chaotic(2);
    const auto to_point = equivalence_witness(discrete_category(1), ch);
    ASSERT_TRUE(to_point.has_value());
    EXPECT_THROW(transport_weighting(*to_point, discrete_category(1), ch, Weighting{{1, 0}, Side::weighting}),
                 std::invalid_argument);
    EXPECT_THROW(transport_weighting(*to_point, discrete_category(1), ch, Weighting{{1}, Side::weighting}),
                 std::invalid_argument);
}
