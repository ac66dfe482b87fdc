#include "oracles.hpp"

#include "csplab/boolean_ideal.hpp"
#include "csplab/encoding.hpp"

#include <gtest/gtest.h>

using namespace csplab;

namespace {

auto x(int i) -> VarId { return {i, 0}; }

auto two_var_set(std::vector<std::vector<std::uint8_t>> pts) -> PointSetIdeal
{
    PointSetIdeal v;
    v.universe = {x(0), x(1)};
    v.points = std::move(pts);
    return v;
}

auto ord_n(int n) -> LexOrder { return LexOrder::input_order(n, 1); }

auto vanishes_on(const Polynomial & p, const PointSetIdeal & v) -> bool
{
    for (auto & pt : v.points) {
        auto val = evaluate(p, [&](VarId var) {
            auto pos = std::find(v.universe.begin(), v.universe.end(), var) - v.universe.begin();
            return pt[pos] != 0;
        });
        if (val != 0)
            return false;
    }
    return true;
}

}

TEST(BooleanIdeal, DiagonalPairStandardMonomialsAndReduction)
{
    auto v = two_var_set({{1, 1}, {0, 0}});
    auto ord = ord_n(2);
    auto std_monos = standard_monomials(v, ord);
    EXPECT_EQ(std_monos, (std::vector<Monomial>{{}, {x(1)}}));
    EXPECT_EQ(reduce(v, {x(0)}, ord), monomial_poly({x(1)}));
    EXPECT_TRUE(lex_reducible(v, {x(0)}, ord));
    EXPECT_FALSE(lex_reducible(v, {x(1)}, ord));
}

TEST(BooleanIdeal, DiagonalPairStrategyPolynomial)
{
    auto v = two_var_set({{1, 1}, {0, 0}});
    auto p = strategy_polynomial(v, {x(0)}, ord_n(2));
    ASSERT_TRUE(p.has_value());
    EXPECT_EQ(*p, monomial_poly({x(0)}) - monomial_poly({x(1)}));
}

TEST(BooleanIdeal, SingleOriginPointMakesSmallestVariableReducible)
{
    auto v = two_var_set({{0, 0}});
    EXPECT_TRUE(lex_reducible(v, {x(1)}, ord_n(2)));
    EXPECT_TRUE(reduce(v, {x(1)}, ord_n(2)).empty());
}

TEST(BooleanIdeal, EmptySetMakesEverythingReducible)
{
    auto v = two_var_set({});
    auto ord = ord_n(2);
    for (auto & m : oracle::all_monomials(v.universe)) {
        EXPECT_TRUE(lex_reducible(v, m, ord));
        EXPECT_TRUE(reduce(v, m, ord).empty());
    }
    EXPECT_TRUE(standard_monomials(v, ord).empty());
}

TEST(BooleanIdeal, FullCubeHasNoReducibleMultilinearMonomial)
{
    PointSetIdeal v;
    for (int i = 0; i < 3; ++i)
        v.universe.push_back(x(i));
    for (int b = 0; b < 8; ++b)
        v.points.push_back({std::uint8_t(b & 1), std::uint8_t((b >> 1) & 1), std::uint8_t((b >> 2) & 1)});
    auto ord = ord_n(3);
    EXPECT_EQ(standard_monomials(v, ord).size(), 8u);
    for (auto & m : oracle::all_monomials(v.universe))
        EXPECT_FALSE(lex_reducible(v, m, ord));
}

TEST(BooleanIdeal, LexGameMatchesEliminationOnRandomSets)
{
    CounterRng rng(11, 1);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + trial % 4;
        auto v = oracle::random_point_set(n, rng);
        auto ord = ord_n(n);
        auto expected = oracle::elimination_reducible(v, ord);
        PackedPoints P(v, ord);
        for (auto & [m, red] : expected)
            ASSERT_EQ(lex_reducible(P, m), red) << "n=" << n << " trial=" << trial;
    }
}

TEST(BooleanIdeal, StandardMonomialsCountEqualsPointCount)
{
    CounterRng rng(12, 1);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 1 + trial % 6;
        auto v = oracle::random_point_set(n, rng);
        auto ord = ord_n(n);
        PackedPoints P(v, ord);
        auto s = standard_monomials(P);
        EXPECT_EQ(s.size(), P.size());
        for (auto & m : s)
            EXPECT_FALSE(lex_reducible(P, m));
    }
}

TEST(BooleanIdeal, StandardMonomialsRespectDegreeBound)
{
    CounterRng rng(13, 1);
    auto v = oracle::random_point_set(5, rng);
    auto s = standard_monomials(v, ord_n(5), 2);
    for (auto & m : s)
        EXPECT_LE(m.size(), 2u);
}

TEST(BooleanIdeal, ReductionMatchesSquareSystemSolve)
{
    CounterRng rng(14, 1);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + trial % 4;
        auto v = oracle::random_point_set(n, rng);
        auto ord = ord_n(n);
        PackedPoints P(v, ord);
        for (auto & m : oracle::all_monomials(v.universe)) {
            auto r = reduce(P, m);
            ASSERT_EQ(r, oracle::interpolation_by_system(v, m, ord));
            EXPECT_TRUE(all_integral(r));
        }
    }
}

TEST(BooleanIdeal, ReductionUnderReversedOrder)
{
    CounterRng rng(15, 1);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 3 + trial % 3;
        auto v = oracle::random_point_set(n, rng);
        std::vector<int> els;
        for (int i = n - 1; i >= 0; --i)
            els.push_back(i);
        auto ord = LexOrder::from_elements(n, 1, els);
        auto red = oracle::elimination_reducible(v, ord);
        PackedPoints P(v, ord);
        for (auto & [m, r] : red) {
            ASSERT_EQ(lex_reducible(P, m), r);
            ASSERT_EQ(reduce(P, m), oracle::interpolation_by_system(v, m, ord));
        }
    }
}

TEST(BooleanIdeal, StrategyPolynomialLiesInIdealWithLeadingMonomial)
{
    CounterRng rng(16, 1);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + trial % 4;
        auto v = oracle::random_point_set(n, rng);
        auto ord = ord_n(n);
        PackedPoints P(v, ord);
        for (auto & m : oracle::all_monomials(v.universe)) {
            auto p = strategy_polynomial(P, m);
            ASSERT_EQ(p.has_value(), lex_reducible(P, m));
            if (! p)
                continue;
            EXPECT_TRUE(vanishes_on(*p, v));
            EXPECT_EQ(ord.leading(*p), m);
            EXPECT_EQ(p->at(m), 1);
            EXPECT_TRUE(all_integral(*p));
        }
    }
}

TEST(BooleanIdeal, StrategyReductionEqualsInterpolation)
{
    CounterRng rng(17, 1);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + trial % 3;
        auto v = oracle::random_point_set(n, rng);
        auto ord = ord_n(n);
        PackedPoints P(v, ord);
        for (auto & m : oracle::all_monomials(v.universe))
            ASSERT_EQ(oracle::reduce_by_strategies(v, m, ord), reduce(P, m));
    }
}

TEST(BooleanIdeal, InterpolationFallsBackToBigIntegers)
{
    CounterRng rng(18, 1);
    auto v = oracle::random_point_set(4, rng);
    auto ord = ord_n(4);
    PackedPoints P(v, ord);
    std::vector<Int> g;
    for (std::size_t i = 0; i < P.size(); ++i)
        g.push_back(Int(i % 2 ? 1 : -1) * (Int(1) << 63) + Int(int(i)));
    auto r = interpolate_function(P, g);
    for (std::size_t i = 0; i < P.size(); ++i) {
        auto val = evaluate(r, [&](VarId var) { return PackedPoints::bit(P.point(i), P.coord_of(var)); });
        EXPECT_EQ(val, Rat(g[i]));
    }
}

TEST(BooleanIdeal, HomPointSetOfSingleEdge)
{
    RelStructure a, t;
    a.add_symbol("E", 2);
    t.add_symbol("E", 2);
    a.add_element("u");
    a.add_element("v");
    a.add_tuple(0, {0, 1});
    t.add_element("0");
    t.add_element("1");
    t.add_tuple(0, {0, 1});
    t.add_tuple(0, {1, 0});
    auto v = hom_point_set(a, t, {0, 1});
    EXPECT_EQ(v.universe.size(), 4u);
    ASSERT_EQ(v.points.size(), 2u);
    EXPECT_EQ(v.points[0], (std::vector<std::uint8_t>{1, 0, 0, 1}));
    EXPECT_EQ(v.points[1], (std::vector<std::uint8_t>{0, 1, 1, 0}));
    auto ord = LexOrder::input_order(2, 2);
    PackedPoints P(v, ord);
    EXPECT_EQ(standard_monomials(P).size(), 2u);
    // x_{u,0} x_{v,0} vanishes on every colouring.
    EXPECT_TRUE(reduce(P, make_monomial({{0, 0}, {1, 0}})).empty());
}

TEST(Encoding, AxiomFamiliesForSingleEdgeIntoTwoColours)
{
    RelStructure a, t;
    a.add_symbol("E", 2);
    t.add_symbol("E", 2);
    a.add_element("u");
    a.add_element("v");
    a.add_tuple(0, {0, 1});
    t.add_element("0");
    t.add_element("1");
    t.add_tuple(0, {0, 1});
    t.add_tuple(0, {1, 0});
    auto enc = encode_csp(a, t);
    int one = 0, most = 0, con = 0;
    for (auto f : enc.family) {
        one += f == AxiomFamily::OneValue;
        most += f == AxiomFamily::AtMostOne;
        con += f == AxiomFamily::Constraint;
    }
    EXPECT_EQ(one, 2);
    EXPECT_EQ(most, 2);
    EXPECT_EQ(con, 2);
}
