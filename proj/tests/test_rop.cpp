#include "csplab/closure.hpp"
#include "csplab/consistency.hpp"
#include "csplab/instance_gen.hpp"
#include "csplab/pc_oracle.hpp"
#include "csplab/rop.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace csplab;

namespace {

auto satisfiable_instance(int n, const RelStructure & t, double p, std::uint64_t seed) -> RelStructure
{
    CounterRng rng(seed, 0);
    for (;;) {
        auto a = fixture::random_instance(n, t, p, rng);
        if (exact_satisfiable(a, t).verdict == Verdict::Pass)
            return a;
    }
}

auto passes(const RopReport & r) -> bool { return r.verdict == Verdict::Pass; }

auto describe(const RopReport & r) -> std::string { return report_to_json(r).dump(); }

// Closed neighbourhood of X: monotone and self-containing, not idempotent.
auto neighbourhood_closure(Adjacency adj) -> ClosureFn
{
    return [adj = std::move(adj)](const std::vector<int> & u) {
        auto in = membership(int(adj.size()), u);
        for (int v : u)
            for (int w : adj[v])
                in[w] = 1;
        ClosureResult r;
        r.set = members(in);
        return r;
    };
}

}

TEST(Rop, GlobalClosureIsTrueReduction)
{
    auto t = clique_template(3);
    for (int trial = 0; trial < 4; ++trial) {
        auto a = satisfiable_instance(6, t, 0.35, 70 + trial);
        auto enc = encode_csp(a, t);
        RopHandle r(a, t, global_closure(a.size()), LexOrder::input_order(a.size(), t.size()));
        RopVerifyOptions opt;
        opt.degree = 3;
        opt.exhaustive_degree = 2;
        auto rep = verify_rop_properties(r, enc, opt);
        EXPECT_TRUE(passes(rep)) << describe(rep);
        EXPECT_EQ(r.apply(constant(1)), constant(1));
        auto cond = verify_conditions(r, ConditionOptions{});
        EXPECT_TRUE(passes(cond)) << describe(cond);
    }
}

TEST(Rop, OutputsMatchStrategyReductions)
{
    auto t = clique_template(3);
    auto a = satisfiable_instance(4, t, 0.5, 80);
    auto ord = LexOrder::input_order(a.size(), t.size());
    RopHandle r(a, t, global_closure(a.size()), ord);
    auto v = hom_point_set(a, t, all_elements(a));
    std::vector<Monomial> ms;
    std::vector<VarId> vars;
    for (int e = 0; e < a.size(); ++e)
        for (int i = 0; i < t.size(); ++i)
            vars.push_back({e, i});
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i; j < vars.size(); ++j)
            ms.push_back(make_monomial(i == j ? std::vector<VarId>{vars[i]} : std::vector<VarId>{vars[i], vars[j]}));
    for (auto & m : ms)
        EXPECT_EQ(r.apply(m), oracle::reduce_by_strategies(v, m, ord)) << polynomial_to_json(monomial_poly(m)).dump();
    EXPECT_EQ(check_integrality(r, ms).verdict, Verdict::Pass);
    // Standard monomials are fixed.
    for (auto & m : standard_monomials(r.points(all_elements(a)), 2))
        EXPECT_EQ(r.apply(m), monomial_poly(m));
}

TEST(Rop, SupportOfTrueReductionIsRestrictionsOfSolutions)
{
    auto t = clique_template(3);
    auto a = satisfiable_instance(6, t, 0.4, 90);
    RopHandle r(a, t, global_closure(a.size()), LexOrder::input_order(a.size(), t.size()));
    auto support = support_family(r, 2);
    auto sols = fixture::brute_homs(a, t, all_elements(a));
    ASSERT_FALSE(sols.empty());
    for (std::size_t x = 0; x < support.space->count(); ++x) {
        std::set<std::uint32_t> expect;
        for (auto & s : sols) {
            std::vector<int> vals;
            for (int e : support.space->elements(x))
                vals.push_back(s[e]);
            expect.insert(support.coder.encode(vals));
        }
        EXPECT_EQ(std::vector<std::uint32_t>(expect.begin(), expect.end()), support.homs[x]) << x;
    }
    auto lk = verify_Lk_polynomial(r, support);
    EXPECT_TRUE(passes(lk)) << describe(lk);
}

TEST(Rop, FoolingSolutionsSolveLk)
{
    auto t = clique_template(3);
    auto a = satisfiable_instance(6, t, 0.4, 91);
    RopHandle r(a, t, global_closure(a.size()), LexOrder::input_order(a.size(), t.size()));
    auto support = support_family(r, 2);
    auto off = support.offsets();
    for (std::size_t x = 0; x < support.space->count(); ++x)
        for (std::size_t h = 0; h < support.homs[x].size(); ++h) {
            auto sol = fooling_solution(r, support, x, int(h));
            ASSERT_TRUE(sol);
            EXPECT_TRUE(satisfies_Lk(support, [&](std::size_t y, std::size_t i) { return (*sol)[off[y] + i]; }));
            EXPECT_EQ((*sol)[off[x] + h], 1);
            for (std::size_t g = 0; g < support.homs[x].size(); ++g) {
                if (g != h) {
                    EXPECT_EQ((*sol)[off[x] + g], 0);
                }
            }
        }
    EXPECT_EQ((*fooling_solution(r, support, 0, 0))[0], 1);
    HierarchyOptions opt;
    opt.k = 2;
    opt.witnesses = {rop_witness(r)};
    EXPECT_EQ(run_z_affine(a, t, opt).accepted, Verdict::Pass);
}

TEST(Rop, IdentityClosureOnUnsatisfiableInstance)
{
    // K4 -> K3 has no solution; with the identity closure the operator
    // checks out at degree 1, so no degree-1 refutation exists.
    auto a = fixture::complete(4);
    auto t = clique_template(3);
    auto enc = encode_csp(a, t);
    RopHandle r(a, t, identity_closure(), LexOrder::input_order(a.size(), t.size()));
    RopVerifyOptions opt;
    opt.degree = 1;
    auto rep = verify_rop_properties(r, enc, opt);
    ASSERT_TRUE(passes(rep)) << describe(rep);
    auto pc = min_refutation_degree(enc.axioms, 1);
    EXPECT_EQ(pc.verdict, Verdict::Fail);
    // At the true refutation degree no operator exists.
    auto full = min_refutation_degree(enc.axioms, 6);
    ASSERT_EQ(full.verdict, Verdict::Pass);
    RopHandle r2(a, t, identity_closure(), LexOrder::input_order(a.size(), t.size()));
    opt.degree = full.degree;
    opt.exhaustive_degree = full.degree;
    EXPECT_EQ(verify_rop_properties(r2, enc, opt).verdict, Verdict::Fail);
}

TEST(Rop, NonIdempotentClosureFailsCommutation)
{
    auto t = clique_template(3);
    auto a = fixture::cycle(7);
    auto enc = encode_csp(a, t);
    auto adj = gaifman_adjacency(hypergraph_of(a));
    RopHandle r(a, t, neighbourhood_closure(adj), LexOrder::input_order(a.size(), t.size()));
    RopVerifyOptions opt;
    opt.degree = 3;
    opt.exhaustive_degree = 2;
    auto rep = verify_rop_properties(r, enc, opt);
    ASSERT_EQ(rep.verdict, Verdict::Fail) << describe(rep);
    bool found = false;
    for (auto & c : rep.checks)
        if (c.verdict == Verdict::Fail) {
            found = true;
            EXPECT_FALSE(c.counterexample.is_null());
        }
    EXPECT_TRUE(found);
}

TEST(Rop, ClosureDependsOnVerticesOnly)
{
    auto t = clique_template(3);
    auto g = sample_regular_graph(30, 3, 5);
    auto adj = gaifman_adjacency(hypergraph_of(g));
    auto rank = colour_class_order(chromatic_number(adj).colouring);
    RopHandle r(g, t, graph_closure_fn(adj, rank, 60), order_from_rank(rank, 3));
    for (int v = 0; v + 1 < 30; v += 3) {
        auto c0 = r.closure_of(make_monomial({{v, 0}, {v + 1, 1}}));
        auto c1 = r.closure_of(make_monomial({{v, 2}, {v + 1, 0}}));
        EXPECT_EQ(c0, c1);
    }
}

TEST(Rop, GraphClosureOperatorOnLongCycle)
{
    auto t = clique_template(3);
    // Long cycles keep closures small; dense regular graphs at this size do not.
    auto g = fixture::cycle(31);
    auto adj = gaifman_adjacency(hypergraph_of(g));
    auto col = chromatic_number(adj);
    ASSERT_EQ(col.chromatic, 3);
    auto rank = colour_class_order(col.colouring);
    RopHandle r(g, t, graph_closure_fn(adj, rank, 16), order_from_rank(rank, 3));
    ConditionOptions copt;
    copt.degree = 2;
    auto cond = verify_conditions(r, copt);
    EXPECT_TRUE(passes(cond)) << describe(cond);
    RopVerifyOptions opt;
    opt.degree = 2;
    auto rep = verify_rop_properties(r, encode_csp(g, t), opt);
    EXPECT_TRUE(passes(rep)) << describe(rep);
}

TEST(Rop, OverflowIsSkippedNotGuessed)
{
    auto a = fixture::complete(5);
    auto t = clique_template(3);
    ClosureFn tiny = [](const std::vector<int> & u) {
        ClosureResult r;
        r.set = u;
        if (u.size() > 1)
            r.verdict = Verdict::Unverified;
        return r;
    };
    RopHandle r(a, t, tiny, LexOrder::input_order(5, 3));
    EXPECT_THROW(r.apply(make_monomial({{0, 0}, {1, 1}})), ClosureOverflow);
    RopVerifyOptions opt;
    opt.degree = 2;
    auto rep = verify_rop_properties(r, encode_csp(a, t), opt);
    EXPECT_EQ(rep.verdict, Verdict::Unverified) << describe(rep);
}
