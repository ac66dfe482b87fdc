#include "fixtures.hpp"

#include "csplab/json_io.hpp"
#include "csplab/relational.hpp"

#include <gtest/gtest.h>

using namespace csplab;

TEST(Relational, InducedSubstructureKeepsExactlyInsideTuples)
{
    auto k3 = fixture::complete(3);
    EXPECT_EQ(induced_substructure(k3, {0, 1, 2}).structure.tuple_count(), k3.tuple_count());
    EXPECT_EQ(induced_substructure(k3, {0, 1}).structure.tuple_count(), 2u);  // one undirected edge
    auto p3 = fixture::path(3);
    auto sub = induced_substructure(p3, {0, 2});
    EXPECT_EQ(sub.structure.size(), 2);
    EXPECT_EQ(sub.structure.tuple_count(), 0u);
}

TEST(Relational, InducedSubstructureIsMonotone)
{
    CounterRng rng(3, 0);
    auto t = builtin_template("k3");
    for (int trial = 0; trial < 20; ++trial) {
        auto a = fixture::random_instance(6, t, 0.3, rng);
        std::vector<int> y, x;
        for (int e = 0; e < 6; ++e) {
            bool in_x = rng.below(3) != 0;
            if (in_x) {
                x.push_back(e);
                if (rng.below(2))
                    y.push_back(e);
            }
        }
        auto ax = induced_substructure(a, x), ay = induced_substructure(a, y);
        for (std::size_t s = 0; s < ay.structure.relations.size(); ++s)
            for (auto & tup : ay.structure.relations[s]) {
                Tuple orig;
                for (int e : tup)
                    orig.push_back(ay.original[e]);
                std::vector<char> in(6, 0);
                for (int e : x)
                    in[e] = 1;
                bool found = false;
                for (auto & [sym, tp] : tuples_inside(a, in))
                    found = found || (sym == int(s) && *tp == orig);
                EXPECT_TRUE(found);
            }
    }
}

TEST(Relational, HomomorphismChecks)
{
    auto k3 = fixture::complete(3);
    auto tk3 = builtin_template("k3");
    EXPECT_TRUE(is_homomorphism(k3, tk3, {0, 1, 2}));
    auto edge = fixture::path(2);
    auto k2 = builtin_template("k2");
    EXPECT_FALSE(is_homomorphism(edge, k2, {1, 1}));
    auto c5 = fixture::cycle(5);
    RelationIndex idx(k2);
    EXPECT_TRUE(is_partial_homomorphism(c5, idx, PartialHom::from({0, 1, 2, 3}, {0, 1, 0, 1})));
    EXPECT_FALSE(is_partial_homomorphism(c5, idx, PartialHom::from({0, 1, 2, 3, 4}, {0, 1, 0, 1, 0})));
}

TEST(Relational, EnumerateHomsCounts)
{
    RelStructure one;
    one.add_symbol("E", 2);
    one.add_element("a");
    auto k3 = builtin_template("k3");
    EXPECT_EQ(enumerate_homs(one, k3, {0}).size(), 3u);
    EXPECT_EQ(enumerate_homs(fixture::complete(3), k3, {0, 1, 2}).size(), 6u);
    EXPECT_TRUE(enumerate_homs(fixture::complete(3), builtin_template("k2"), {0, 1, 2}).empty());
}

TEST(Relational, EnumerateHomsMatchesBruteForceInLexOrder)
{
    CounterRng rng(4, 0);
    for (auto name : {"k2", "k3", "nae3"}) {
        auto t = builtin_template(name);
        for (int trial = 0; trial < 15; ++trial) {
            int n = 4 + trial % 3;
            auto a = fixture::random_instance(n, t, t.signature.symbols[0].arity == 3 ? 0.06 : 0.25, rng);
            std::vector<int> x;
            for (int e = 0; e < n; ++e)
                if (rng.below(4) != 0)
                    x.push_back(e);
            rng.shuffle(x);
            ASSERT_EQ(enumerate_homs(a, t, x), fixture::brute_homs(a, t, x)) << name << " " << trial;
        }
    }
}

TEST(Relational, RestrictionsOfHomsAreHoms)
{
    CounterRng rng(5, 0);
    auto t = builtin_template("k3");
    RelationIndex idx(t);
    for (int trial = 0; trial < 10; ++trial) {
        auto a = fixture::random_instance(6, t, 0.3, rng);
        auto x = all_elements(a);
        std::vector<int> y{0, 2, 3};
        auto on_y = enumerate_homs(a, idx, y);
        for (auto & v : enumerate_homs(a, idx, x)) {
            auto r = restrict(PartialHom::from(x, v), y);
            std::vector<int> rv;
            for (auto & [e, val] : r.entries)
                rv.push_back(val);
            EXPECT_TRUE(std::find(on_y.begin(), on_y.end(), rv) != on_y.end());
        }
    }
}

TEST(Relational, EnumerationCapRaisesOverflow)
{
    RelStructure a;
    a.add_symbol("E", 2);
    for (auto & n : padded_names(8))
        a.add_element(n);
    EXPECT_THROW(enumerate_homs(a, builtin_template("k3"), all_elements(a), 100), HomOverflow);
}

TEST(Relational, ExtendsAndRestrict)
{
    auto phi = PartialHom::from({{0, 1}, {2, 0}});
    EXPECT_EQ(restrict(phi, phi.domain()), phi);
    auto empty = restrict(phi, {});
    EXPECT_TRUE(empty.entries.empty());
    EXPECT_TRUE(extends(phi, empty));
    auto a = PartialHom::from({{0, 1}});
    EXPECT_TRUE(extends(phi, a));
    EXPECT_FALSE(extends(phi, PartialHom::from({{0, 0}})));
    EXPECT_THROW(restrict(phi, {1}), std::invalid_argument);
}

TEST(Relational, HypergraphOfDeduplicatesVertexSets)
{
    RelStructure a;
    a.add_symbol("R", 3);
    a.add_symbol("S", 3);
    for (auto n : {"a", "b", "c", "d"})
        a.add_element(n);
    a.add_tuple(0, {0, 1, 2});
    a.add_tuple(1, {2, 1, 0});
    a.add_tuple(0, {1, 2, 3});
    a.normalize();
    auto h = hypergraph_of(a);
    EXPECT_EQ(h.m(), 2);
    EXPECT_EQ(h.uniformity(), 3);
    EXPECT_EQ(h.degree(1), 2);
}

TEST(Relational, HypergraphOfRejectsMixedArities)
{
    RelStructure a;
    a.add_symbol("R", 3);
    a.add_symbol("E", 2);
    EXPECT_THROW(hypergraph_of(a), std::invalid_argument);
}

TEST(Relational, InstancesRejectRepeatedElements)
{
    RelStructure a;
    a.add_symbol("E", 2);
    a.add_element("a");
    a.add_tuple(0, {0, 0});
    EXPECT_FALSE(is_instance(a));
    EXPECT_THROW(require_instance(a), std::invalid_argument);
}

TEST(Relational, JsonRoundTripIsCanonical)
{
    auto j = Json::parse(R"({"signature":[{"name":"E","arity":2}],"domain":["v2","v1","v3"],
        "relations":{"E":[["v2","v3"],["v1","v2"],["v1","v2"]]}})");
    auto s = structure_from_json(j);
    EXPECT_EQ(s.tuple_count(), 2u);
    auto out = structure_to_json(s);
    EXPECT_EQ(out["domain"], Json({"v1", "v2", "v3"}));
    EXPECT_EQ(out["relations"]["E"], Json::array({Json::array({"v1", "v2"}), Json::array({"v2", "v3"})}));
    EXPECT_EQ(structure_to_json(structure_from_json(out)), out);
}

TEST(Relational, JsonRejectsUnknownElements)
{
    auto j = Json::parse(R"({"signature":[{"name":"E","arity":2}],"domain":["a"],"relations":{"E":[["a","b"]]}})");
    EXPECT_ANY_THROW(structure_from_json(j));
}

TEST(Relational, PolynomialJsonRoundTrip)
{
    Polynomial p = monomial_poly(make_monomial({{0, 1}, {1, 0}}), Rat(-3, 2)) + constant(2);
    auto j = polynomial_to_json(p);
    EXPECT_EQ(j[0]["coef"], "2/1");
    VarNaming nm;
    auto back = polynomial_from_json(polynomial_to_json(p, nm), nm);
    EXPECT_EQ(back.size(), 2u);
    EXPECT_EQ(back.begin()->second, 2);
}
