#include "fixtures.hpp"

#include "csplab/boundary.hpp"
#include "csplab/combinatorics.hpp"
#include "csplab/instance_gen.hpp"
#include "csplab/json_io.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace csplab;

namespace {

auto degrees(const RelStructure & g) -> std::vector<int>
{
    auto h = hypergraph_of(g);
    std::vector<int> d(h.n);
    for (int v = 0; v < h.n; ++v)
        d[v] = h.degree(v);
    return d;
}

auto is_connected_subset(const Adjacency & adj, const std::vector<int> & s) -> bool
{
    return components_of(adj, s).size() == 1;
}

// Berge cycle search by definition for small hypergraphs: choose l edges and
// l vertices and test all cyclic arrangements.
auto brute_girth(const Hypergraph & h) -> std::optional<int>
{
    for (int l = 2; l <= h.m(); ++l) {
        std::vector<int> edges;
        bool found = false;
        auto rec = [&](auto && self, std::vector<int> & vs, std::vector<int> & es) -> void {
            if (found)
                return;
            int k = int(es.size());
            if (k == l) {
                // Closing vertex v0 must lie in the last edge.
                int v0 = vs.front();
                if (std::find(h.edges[es.back()].begin(), h.edges[es.back()].end(), v0) != h.edges[es.back()].end())
                    found = true;
                return;
            }
            int v = vs.back();
            for (int e : h.incident[v]) {
                if (std::find(es.begin(), es.end(), e) != es.end())
                    continue;
                es.push_back(e);
                if (k + 1 == l) {
                    self(self, vs, es);
                }
                else {
                    for (int w : h.edges[e]) {
                        if (std::find(vs.begin(), vs.end(), w) != vs.end())
                            continue;
                        vs.push_back(w);
                        self(self, vs, es);
                        vs.pop_back();
                    }
                }
                es.pop_back();
            }
        };
        for (int v = 0; v < h.n && ! found; ++v) {
            std::vector<int> vs{v}, es;
            rec(rec, vs, es);
        }
        if (found)
            return l;
    }
    return std::nullopt;
}

auto random_hypergraph(int n, int t, int m, CounterRng & rng) -> Hypergraph
{
    std::vector<std::vector<int>> edges;
    for (int i = 0; i < m; ++i) {
        std::vector<int> e;
        while (int(e.size()) < t) {
            int v = int(rng.below(n));
            if (std::find(e.begin(), e.end(), v) == e.end())
                e.push_back(v);
        }
        edges.push_back(e);
    }
    return make_hypergraph(n, edges);
}

}

TEST(Combinatorics, ConnectedSubsetEnumerationMatchesBruteForce)
{
    CounterRng rng(21, 0);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 5 + trial % 6;
        std::vector<std::pair<int, int>> e;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng.below(3) == 0)
                    e.emplace_back(i, j);
        auto adj = gaifman_adjacency(hypergraph_of(fixture::graph(n, e)));
        int s = 1 + trial % 5;
        std::set<std::vector<int>> got;
        enumerate_connected(adj, s, [&](const std::vector<int> & sub) {
            auto c = sub;
            std::sort(c.begin(), c.end());
            EXPECT_TRUE(got.insert(c).second) << "duplicate";
            return true;
        });
        std::set<std::vector<int>> want;
        for (int mask = 1; mask < (1 << n); ++mask) {
            if (std::popcount(unsigned(mask)) > s)
                continue;
            std::vector<int> sub;
            for (int v = 0; v < n; ++v)
                if (mask >> v & 1)
                    sub.push_back(v);
            if (is_connected_subset(adj, sub))
                want.insert(sub);
        }
        EXPECT_EQ(got, want);
    }
}

TEST(InstanceGen, RegularGraphExamples)
{
    auto k4 = sample_regular_graph(4, 3, 9);
    EXPECT_EQ(k4.tuple_count(), 12u);
    auto c = sample_regular_graph(6, 2, 3);
    for (int d : degrees(c))
        EXPECT_EQ(d, 2);
    auto g = sample_regular_graph(20, 4, 1);
    for (int d : degrees(g))
        EXPECT_EQ(d, 4);
    EXPECT_EQ(structure_to_json(g), structure_to_json(sample_regular_graph(20, 4, 1)));
    EXPECT_THROW(sample_regular_graph(5, 3, 1), std::invalid_argument);
}

TEST(InstanceGen, RegularGraphsPassDegreeAudit)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto g = sample_regular_graph(30 + int(seed), 4, seed);
        EXPECT_TRUE(is_instance(g));
        for (int d : degrees(g))
            ASSERT_EQ(d, 4);
    }
}

TEST(InstanceGen, CspInstanceShape)
{
    auto t = nae3_template();
    auto empty = sample_csp_instance(10, 0, t, 1);
    EXPECT_EQ(empty.tuple_count(), 0u);
    auto one = sample_csp_instance(3, 1, t, 1);
    EXPECT_EQ(hypergraph_of(one).m(), 1);
    auto a = sample_csp_instance(30, 20, t, 7);
    auto h = hypergraph_of(a);
    EXPECT_EQ(h.m(), 20);
    EXPECT_EQ(h.uniformity(), 3);
    EXPECT_TRUE(is_instance(a));
    EXPECT_THROW(sample_csp_instance(4, 5, t, 1), std::invalid_argument);
}

TEST(InstanceGen, EdgePermutationsAreUniform)
{
    // Chi-squared over the 6 orderings of the forced edge on 3 vertices.
    auto t = nae3_template();
    std::map<Tuple, int> hist;
    const int seeds = 12000;
    for (int seed = 0; seed < seeds; ++seed) {
        auto a = sample_csp_instance(3, 1, t, std::uint64_t(seed));
        hist[a.relations[0].front()]++;
    }
    ASSERT_EQ(hist.size(), 6u);
    double chi = 0, expect = seeds / 6.0;
    for (auto & [tup, c] : hist)
        chi += (c - expect) * (c - expect) / expect;
    EXPECT_LT(chi, 20.5);  // 5 degrees of freedom, p ~ 0.001
}

TEST(InstanceGen, EdgeSubsetsAreUniform)
{
    // All 4 triples of a 4-vertex set should be chosen equally often with m = 1.
    auto t = nae3_template();
    std::map<std::vector<int>, int> hist;
    const int seeds = 10000;
    for (int seed = 0; seed < seeds; ++seed)
        hist[hypergraph_of(sample_csp_instance(4, 1, t, std::uint64_t(seed))).edges[0]]++;
    ASSERT_EQ(hist.size(), 4u);
    double chi = 0, expect = seeds / 4.0;
    for (auto & [e, c] : hist)
        chi += (c - expect) * (c - expect) / expect;
    EXPECT_LT(chi, 16.3);  // 3 degrees of freedom, p ~ 0.001
}

TEST(InstanceGen, SparsityExamples)
{
    auto tree = hypergraph_of(fixture::path(8));
    EXPECT_EQ(check_graph_sparsity(tree, 8, 0.0).verdict, Verdict::Pass);
    auto k4 = hypergraph_of(fixture::complete(4));
    auto r = check_graph_sparsity(k4, 4, 0.3);
    ASSERT_EQ(r.verdict, Verdict::Fail);
    EXPECT_EQ(r.witness, (std::vector<int>{0, 1, 2, 3}));
    auto single = make_hypergraph(3, {{0, 1, 2}});
    EXPECT_EQ(check_hypergraph_sparsity(single, 1, 0.0).verdict, Verdict::Pass);
}

TEST(InstanceGen, ConnectedSparsityAgreesWithAllSubsets)
{
    CounterRng rng(22, 0);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 6 + trial % 7;
        std::vector<std::pair<int, int>> e;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng.below(4) == 0)
                    e.emplace_back(i, j);
        auto h = hypergraph_of(fixture::graph(n, e));
        int s = 3 + trial % 5;
        double eps = 0.1 * double(trial % 4);
        bool brute_ok = true;
        for (int mask = 1; mask < (1 << n) && brute_ok; ++mask) {
            if (std::popcount(unsigned(mask)) > s)
                continue;
            int edges = 0;
            for (auto & ed : h.edges)
                edges += (mask >> ed[0] & 1) && (mask >> ed[1] & 1);
            brute_ok = edges <= (1 + eps) * std::popcount(unsigned(mask)) + 1e-9;
        }
        auto r = check_graph_sparsity(h, s, eps);
        EXPECT_EQ(r.verdict, verdict_of(brute_ok));
        if (r.verdict == Verdict::Fail) {
            int edges = 0;
            for (auto & ed : h.edges)
                edges += std::binary_search(r.witness.begin(), r.witness.end(), ed[0])
                    && std::binary_search(r.witness.begin(), r.witness.end(), ed[1]);
            EXPECT_GT(edges, (1 + eps) * double(r.witness.size()));
        }
    }
}

TEST(InstanceGen, HypergraphSparsityAgreesWithAllEdgeSubsets)
{
    CounterRng rng(23, 0);
    for (int trial = 0; trial < 30; ++trial) {
        auto h = random_hypergraph(7, 3, 4 + trial % 5, rng);
        int s = 2 + trial % 4;
        double eps = 0.2 * double(trial % 3);
        bool brute_ok = true;
        for (int mask = 1; mask < (1 << h.m()); ++mask) {
            if (std::popcount(unsigned(mask)) > s)
                continue;
            std::set<int> vs;
            for (int e = 0; e < h.m(); ++e)
                if (mask >> e & 1)
                    vs.insert(h.edges[e].begin(), h.edges[e].end());
            if (std::popcount(unsigned(mask)) > (1 + eps) / 2.0 * double(vs.size()) + 1e-9)
                brute_ok = false;
        }
        EXPECT_EQ(check_hypergraph_sparsity(h, s, eps).verdict, verdict_of(brute_ok)) << trial;
    }
}

TEST(InstanceGen, BergeGirthExamples)
{
    EXPECT_FALSE(berge_girth(make_hypergraph(7, {{0, 1, 2}, {2, 3, 4}, {4, 5, 6}})).has_value());
    EXPECT_EQ(berge_girth(make_hypergraph(4, {{0, 1, 2}, {0, 1, 3}})), 2);
    EXPECT_EQ(berge_girth(make_hypergraph(6, {{0, 1, 2}, {2, 3, 4}, {4, 5, 0}})), 3);
    EXPECT_EQ(berge_girth(hypergraph_of(fixture::cycle(7))), 7);
}

TEST(InstanceGen, BergeGirthMatchesCycleSearch)
{
    CounterRng rng(24, 0);
    for (int trial = 0; trial < 60; ++trial) {
        auto h = random_hypergraph(9, 2 + trial % 2, 2 + trial % 7, rng);
        ASSERT_EQ(berge_girth(h), brute_girth(h)) << trial;
    }
}

TEST(InstanceGen, ExpansionExamples)
{
    // A single edge is its own B1 element.
    auto single = make_hypergraph(3, {{0, 1, 2}});
    EXPECT_EQ(check_expansion(single, 1, 1, 1.0).verdict, Verdict::Pass);
    // Tight 2-cycle: both vertices of the overlap are high-degree in F.
    auto tight = make_hypergraph(4, {{0, 1, 2}, {0, 1, 3}});
    BoundaryComputer bc(tight);
    EXPECT_TRUE(bc.b1({}, {0, 1}).empty());
    auto r = check_expansion(tight, 1, 2, 1.0);
    EXPECT_EQ(r.verdict, Verdict::Pass);  // length-1 pendant paths exist
    auto r2 = check_expansion(tight, 3, 2, 1.0);
    ASSERT_EQ(r2.verdict, Verdict::Fail);
    EXPECT_EQ(r2.witness, (std::vector<int>{0, 1}));
    EXPECT_TRUE(BoundaryComputer(tight).boundary({}, r2.witness, 3).empty());
}

TEST(InstanceGen, ChromaticNumberExamples)
{
    auto chi = [](const RelStructure & g) { return chromatic_number(gaifman_adjacency(hypergraph_of(g))); };
    EXPECT_EQ(chi(fixture::cycle(5)).chromatic, 3);
    EXPECT_EQ(chi(fixture::complete(4)).chromatic, 4);
    EXPECT_EQ(chi(fixture::cycle(6)).chromatic, 2);
    // Petersen graph.
    auto pet = fixture::graph(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},
                                      {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}});
    auto r = chi(pet);
    EXPECT_EQ(r.verdict, Verdict::Pass);
    EXPECT_EQ(r.chromatic, 3);
    EXPECT_TRUE(is_homomorphism(pet, clique_template(3), r.colouring));
}

TEST(InstanceGen, ChromaticNumberMatchesHomSearch)
{
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        auto g = sample_regular_graph(14, 4, seed);
        auto r = chromatic_number(gaifman_adjacency(hypergraph_of(g)));
        ASSERT_EQ(r.verdict, Verdict::Pass);
        EXPECT_TRUE(find_hom(g, RelationIndex(clique_template(r.chromatic)), all_elements(g)).has_value());
        if (r.chromatic > 1) {
            auto t = clique_template(r.chromatic - 1);
            EXPECT_FALSE(find_hom(g, RelationIndex(t), all_elements(g)).has_value());
        }
    }
}

TEST(InstanceGen, ExactSatisfiability)
{
    auto t = nae3_template();
    EXPECT_EQ(exact_satisfiable(sample_csp_instance(6, 0, t, 1), t).verdict, Verdict::Pass);
    auto k2 = builtin_template("k2");
    EXPECT_EQ(exact_satisfiable(fixture::cycle(5), k2).verdict, Verdict::Fail);
    auto s = exact_satisfiable(fixture::cycle(6), k2);
    ASSERT_EQ(s.verdict, Verdict::Pass);
    EXPECT_TRUE(is_homomorphism(fixture::cycle(6), k2, s.solution));
    CounterRng rng(25, 0);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = sample_csp_instance(7, 6 + trial % 8, t, std::uint64_t(trial));
        bool brute = ! fixture::brute_homs(a, t, all_elements(a)).empty();
        EXPECT_EQ(exact_satisfiable(a, t).verdict, verdict_of(brute));
    }
}

TEST(InstanceGen, ExactSatisfiabilityHonoursBudget)
{
    auto k3 = builtin_template("k3");
    auto r = exact_satisfiable(sample_regular_graph(40, 4, 3), k3, 10);
    EXPECT_EQ(r.verdict, Verdict::Unverified);
}

TEST(InstanceGen, TemplateProperties)
{
    EXPECT_FALSE(is_trivially_satisfiable(builtin_template("k3")).has_value());
    EXPECT_FALSE(is_trivially_satisfiable(nae3_template()).has_value());
    RelStructure full;
    full.add_symbol("R", 3);
    full.add_element("0");
    full.add_element("1");
    for (int b = 0; b < 8; ++b)
        full.add_tuple(0, {b & 1, b >> 1 & 1, b >> 2 & 1});
    full.normalize();
    EXPECT_EQ(is_trivially_satisfiable(full), 0);
    EXPECT_TRUE(is_lax(nae3_template()));
    EXPECT_FALSE(is_lax(builtin_template("k2")));
    EXPECT_FALSE(is_lax(builtin_template("k3")));
    EXPECT_TRUE(is_null_constraining(nae3_template(), 2));
    EXPECT_FALSE(is_null_constraining(builtin_template("k2"), 5));
    EXPECT_TRUE(is_null_constraining(builtin_template("k3"), 2));
    EXPECT_FALSE(is_null_constraining(builtin_template("k3"), 1));
}
