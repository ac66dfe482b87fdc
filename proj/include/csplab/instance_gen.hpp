#pragma once

#include "csplab/boundary.hpp"
#include "csplab/combinatorics.hpp"
#include "csplab/relational.hpp"
#include "csplab/rng.hpp"
#include "csplab/verdict.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace csplab {

// Element names padded so that name order equals index order.
inline auto padded_names(int n, const std::string & prefix = "v") -> std::vector<std::string>
{
    int width = 1;
    for (int k = n - 1; k >= 10; k /= 10)
        ++width;
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) {
        auto s = std::to_string(i);
        out.push_back(prefix + std::string(width - s.size(), '0') + s);
    }
    return out;
}

// K_c: E = {(i, j) : i != j} over {0, ..., c-1}.
inline auto clique_template(int c) -> RelStructure
{
    RelStructure t;
    t.add_symbol("E", 2);
    for (int i = 0; i < c; ++i)
        t.add_element(std::to_string(i));
    for (int i = 0; i < c; ++i)
        for (int j = 0; j < c; ++j)
            if (i != j)
                t.add_tuple(0, {i, j});
    t.normalize();
    return t;
}

// Not-all-equal on three Boolean values.
inline auto nae3_template() -> RelStructure
{
    RelStructure t;
    t.add_symbol("R", 3);
    t.add_element("0");
    t.add_element("1");
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                if (! (a == b && b == c))
                    t.add_tuple(0, {a, b, c});
    t.normalize();
    return t;
}

// "nae3", "k2".."k9", or "kc" (three colours).
inline auto builtin_template(const std::string & name) -> RelStructure
{
    if (name == "nae3")
        return nae3_template();
    if (name == "kc")
        return clique_template(3);
    if (name.size() == 2 && name[0] == 'k' && name[1] >= '2' && name[1] <= '9')
        return clique_template(name[1] - '0');
    throw std::invalid_argument("unknown builtin template: " + name);
}

// Smallest value v with (v, ..., v) in every relation.
inline auto is_trivially_satisfiable(const RelStructure & t) -> std::optional<int>
{
    RelationIndex idx(t);
    for (int v = 0; v < t.size(); ++v) {
        bool all = true;
        for (std::size_t s = 0; s < t.relations.size(); ++s)
            if (! idx.contains(int(s), Tuple(t.signature.symbols[s].arity, v)))
                all = false;
        if (all)
            return v;
    }
    return std::nullopt;
}

// For each symbol and coordinate j, some fixing of the other coordinates
// admits every value at j.
inline auto is_lax(const RelStructure & t) -> bool
{
    RelationIndex idx(t);
    const int q = t.size();
    for (std::size_t s = 0; s < t.relations.size(); ++s) {
        const int r = t.signature.symbols[s].arity;
        for (int j = 0; j < r; ++j) {
            bool found = false;
            Tuple others(r, 0);
            for (;;) {
                bool all = true;
                for (int v = 0; v < q && all; ++v) {
                    auto tup = others;
                    tup[j] = v;
                    all = idx.contains(int(s), tup);
                }
                if (all) {
                    found = true;
                    break;
                }
                int k = 0;
                while (k < r && (k == j || ++others[k] == q)) {
                    if (k != j)
                        others[k] = 0;
                    ++k;
                }
                if (k == r)
                    break;
            }
            if (! found)
                return false;
        }
    }
    return true;
}

// Every simple path instance of length len permits every endpoint pair. A path
// edge is (symbol, position of entering vertex, position of leaving vertex) with
// all other positions fresh.
inline auto paths_of_length_permit_all(const RelStructure & t, int len) -> bool
{
    const int q = t.size();
    using Rel = std::vector<char>;
    std::vector<Rel> steps;
    for (std::size_t s = 0; s < t.relations.size(); ++s) {
        const int r = t.signature.symbols[s].arity;
        for (int p = 0; p < r; ++p)
            for (int w = 0; w < r; ++w) {
                if (p == w)
                    continue;
                Rel rel(q * q, 0);
                for (auto & tup : t.relations[s])
                    rel[tup[p] * q + tup[w]] = 1;
                steps.push_back(std::move(rel));
            }
    }
    auto compose = [&](const Rel & a, const Rel & b) {
        Rel c(q * q, 0);
        for (int x = 0; x < q; ++x)
            for (int y = 0; y < q; ++y)
                if (a[x * q + y])
                    for (int z = 0; z < q; ++z)
                        if (b[y * q + z])
                            c[x * q + z] = 1;
        return c;
    };
    std::vector<int> pick(len, 0);
    if (steps.empty())
        return false;
    for (;;) {
        Rel cur = steps[pick[0]];
        for (int i = 1; i < len; ++i)
            cur = compose(cur, steps[pick[i]]);
        if (std::find(cur.begin(), cur.end(), 0) != cur.end())
            return false;
        int i = 0;
        while (i < len && ++pick[i] == int(steps.size()))
            pick[i++] = 0;
        if (i == len)
            return true;
    }
}

// Checked at lengths ell and ell + 1; for lax templates longer paths follow.
inline auto is_null_constraining(const RelStructure & t, int ell) -> bool
{
    return paths_of_length_permit_all(t, ell) && paths_of_length_permit_all(t, ell + 1);
}

// Random d-regular simple graph on n vertices by the configuration model with
// rejection. Attempt a uses stream a of the seed.
inline auto sample_regular_graph(int n, int d, std::uint64_t seed, int max_attempts = 100000) -> RelStructure
{
    if (n <= 0 || d < 0 || d >= n || (std::int64_t(n) * d) % 2 != 0)
        throw std::invalid_argument("no simple d-regular graph with these parameters");
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        CounterRng rng(seed, std::uint64_t(attempt));
        std::vector<int> points;
        for (int v = 0; v < n; ++v)
            for (int k = 0; k < d; ++k)
                points.push_back(v);
        rng.shuffle(points);
        std::set<std::pair<int, int>> edges;
        bool ok = true;
        for (std::size_t i = 0; i + 1 < points.size(); i += 2) {
            int a = points[i], b = points[i + 1];
            if (a == b || ! edges.insert({std::min(a, b), std::max(a, b)}).second) {
                ok = false;
                break;
            }
        }
        if (! ok)
            continue;
        RelStructure g;
        g.add_symbol("E", 2);
        for (auto & name : padded_names(n))
            g.add_element(name);
        for (auto [a, b] : edges) {
            g.add_tuple(0, {a, b});
            g.add_tuple(0, {b, a});
        }
        g.normalize();
        return g;
    }
    throw BudgetExceeded("configuration model rejected every attempt");
}

// Draw from D(n, m, T): a uniform m-subset of the t-subsets of [n]; edge i (in
// sorted order) then gets a uniform vertex permutation and a uniform symbol
// from stream i + 1 of the seed. Stream 0 drives the subset.
inline auto sample_csp_instance(int n, int m, const RelStructure & t, std::uint64_t seed) -> RelStructure
{
    if (t.signature.symbols.empty())
        throw std::invalid_argument("template has no relation symbols");
    const int arity = t.signature.symbols[0].arity;
    for (auto & s : t.signature.symbols)
        if (s.arity != arity)
            throw std::invalid_argument("template symbols must share one arity");
    double total = 1;
    for (int i = 0; i < arity; ++i)
        total = total * double(n - i) / double(i + 1);
    if (arity > n || double(m) > total)
        throw std::invalid_argument("more edges requested than t-subsets exist");
    CounterRng rng(seed, 0);
    std::set<std::vector<int>> chosen;
    while (int(chosen.size()) < m) {
        // Partial Fisher-Yates on a virtual identity array.
        std::vector<int> pick;
        std::vector<std::pair<int, int>> swaps;
        auto at = [&](int i) {
            for (auto it = swaps.rbegin(); it != swaps.rend(); ++it)
                if (it->first == i)
                    return it->second;
            return i;
        };
        for (int i = 0; i < arity; ++i) {
            int j = i + int(rng.below(std::uint64_t(n - i)));
            int vi = at(i), vj = at(j);
            swaps.emplace_back(j, vi);
            swaps.emplace_back(i, vj);
            pick.push_back(vj);
        }
        std::sort(pick.begin(), pick.end());
        chosen.insert(std::move(pick));
    }
    RelStructure a;
    for (auto & s : t.signature.symbols)
        a.add_symbol(s.name, s.arity);
    for (auto & name : padded_names(n))
        a.add_element(name);
    std::uint64_t i = 0;
    for (auto & e : chosen) {
        CounterRng er(seed, ++i);
        auto tup = e;
        er.shuffle(tup);
        int sym = int(er.below(t.signature.symbols.size()));
        a.add_tuple(sym, std::move(tup));
    }
    a.normalize();
    return a;
}

struct PropertyCheck
{
    Verdict verdict = Verdict::Unverified;
    std::vector<int> witness;
    std::size_t examined = 0;
};

// (s, eps)-sparse graph: |E(U)| <= (1 + eps)|U| for every U with |U| <= s.
// A violating set can be taken connected, so connected sets are enumerated.
inline auto check_graph_sparsity(const Hypergraph & g, int s, double eps, std::size_t budget = 50000000)
    -> PropertyCheck
{
    auto adj = gaifman_adjacency(g);
    PropertyCheck out;
    std::vector<char> in(g.n, 0);
    bool exhausted = false;
    bool complete = enumerate_connected(adj, s, [&](const std::vector<int> & u) {
        if (++out.examined > budget) {
            exhausted = true;
            return false;
        }
        for (int v : u)
            in[v] = 1;
        long e = 0;
        for (int v : u)
            for (int w : adj[v])
                if (in[w] && w > v)
                    ++e;
        for (int v : u)
            in[v] = 0;
        if (double(e) > (1.0 + eps) * double(u.size()) + 1e-9) {
            out.witness = u;
            std::sort(out.witness.begin(), out.witness.end());
            return false;
        }
        return true;
    });
    if (! out.witness.empty())
        out.verdict = Verdict::Fail;
    else if (exhausted || ! complete)
        out.verdict = Verdict::Unverified;
    else
        out.verdict = Verdict::Pass;
    return out;
}

// (s, eps)-sparse t-uniform hypergraph: |F| <= (1 + eps)/(t - 1) |V(F)| for
// every edge set with |F| <= s. Witness lists edge indices.
inline auto check_hypergraph_sparsity(const Hypergraph & h, int s, double eps, std::size_t budget = 50000000)
    -> PropertyCheck
{
    const int t = h.uniformity();
    PropertyCheck out;
    if (h.m() == 0) {
        out.verdict = Verdict::Pass;
        return out;
    }
    if (t < 2)
        throw std::invalid_argument("hypergraph sparsity needs a t-uniform hypergraph with t >= 2");
    auto lg = line_graph(h);
    std::vector<int> mark(h.n, 0);
    int stamp = 0;
    bool exhausted = false;
    enumerate_connected(lg, s, [&](const std::vector<int> & f) {
        if (++out.examined > budget) {
            exhausted = true;
            return false;
        }
        ++stamp;
        long nv = 0;
        for (int e : f)
            for (int v : h.edges[e])
                if (mark[v] != stamp) {
                    mark[v] = stamp;
                    ++nv;
                }
        if (double(f.size()) > (1.0 + eps) / double(t - 1) * double(nv) + 1e-9) {
            out.witness = f;
            std::sort(out.witness.begin(), out.witness.end());
            return false;
        }
        return true;
    });
    if (! out.witness.empty())
        out.verdict = Verdict::Fail;
    else if (exhausted)
        out.verdict = Verdict::Unverified;
    else
        out.verdict = Verdict::Pass;
    return out;
}

// Length of the shortest Berge cycle, or nullopt when there is none. Berge
// cycles of length l are the 2l-cycles of the vertex-edge incidence graph.
inline auto berge_girth(const Hypergraph & h) -> std::optional<int>
{
    const int n = h.n, m = h.m();
    const int total = n + m;
    Adjacency adj(total);
    for (int e = 0; e < m; ++e)
        for (int v : h.edges[e]) {
            adj[v].push_back(n + e);
            adj[n + e].push_back(v);
        }
    int best = INT_MAX;
    std::vector<int> dist(total), parent(total);
    for (int r = 0; r < total; ++r) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[r] = 0;
        parent[r] = -1;
        std::queue<int> qu;
        qu.push(r);
        while (! qu.empty()) {
            int u = qu.front();
            qu.pop();
            if (2 * dist[u] + 1 >= best)
                break;
            for (int w : adj[u]) {
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    qu.push(w);
                }
                else if (parent[u] != w)
                    best = std::min(best, dist[u] + dist[w] + 1);
            }
        }
    }
    if (best == INT_MAX)
        return std::nullopt;
    return best / 2;
}

// (ell, s, gamma)-expanding: every nonempty edge set F with |F| <= s has
// |B^ell(emptyset, F)| >= gamma |F| (or gamma |E| with per_total_edges).
// Connected sets suffice: boundaries of components add up.
inline auto check_expansion(const Hypergraph & h, int ell, int s, double gamma, bool per_total_edges = false,
    std::size_t budget = 20000000) -> PropertyCheck
{
    PropertyCheck out;
    auto lg = line_graph(h);
    BoundaryComputer bc(h);
    bool exhausted = false;
    enumerate_connected(lg, s, [&](const std::vector<int> & f) {
        if (++out.examined > budget) {
            exhausted = true;
            return false;
        }
        double need = gamma * double(per_total_edges ? h.m() : int(f.size()));
        auto b = bc.boundary({}, f, ell);
        if (double(b.size()) + 1e-12 < need) {
            out.witness = f;
            std::sort(out.witness.begin(), out.witness.end());
            return false;
        }
        return true;
    });
    if (! out.witness.empty())
        out.verdict = Verdict::Fail;
    else if (exhausted)
        out.verdict = Verdict::Unverified;
    else
        out.verdict = Verdict::Pass;
    return out;
}

// Randomized falsification: grows random connected edge sets; can only
// find violations, so a clean run is Unverified.
inline auto check_expansion_sampled(const Hypergraph & h, int ell, int s, double gamma, std::size_t samples,
    std::uint64_t seed, bool per_total_edges = false) -> PropertyCheck
{
    PropertyCheck out;
    if (h.m() == 0) {
        out.verdict = Verdict::Pass;
        return out;
    }
    auto lg = line_graph(h);
    BoundaryComputer bc(h);
    CounterRng rng(seed, 0x65);
    for (std::size_t i = 0; i < samples; ++i) {
        ++out.examined;
        std::vector<int> f{int(rng.below(std::uint64_t(h.m())))};
        int target = 1 + int(rng.below(std::uint64_t(s)));
        while (int(f.size()) < target) {
            std::vector<int> frontier;
            for (int e : f)
                for (int g : lg[e])
                    if (std::find(f.begin(), f.end(), g) == f.end())
                        frontier.push_back(g);
            if (frontier.empty())
                break;
            f.push_back(frontier[rng.below(frontier.size())]);
        }
        std::sort(f.begin(), f.end());
        f.erase(std::unique(f.begin(), f.end()), f.end());
        double need = gamma * double(per_total_edges ? h.m() : int(f.size()));
        if (double(bc.boundary({}, f, ell).size()) + 1e-12 < need) {
            out.witness = f;
            out.verdict = Verdict::Fail;
            return out;
        }
    }
    out.verdict = Verdict::Unverified;
    return out;
}

struct ColouringResult
{
    Verdict verdict = Verdict::Unverified;  // Pass when chi is exact
    int chromatic = 0;                       // exact value, or best upper bound
    int lower_bound = 0;
    std::vector<int> colouring;
};

// Exact chromatic number by DSATUR branch and bound.
inline auto chromatic_number(const Adjacency & adj, std::size_t node_budget = 50000000) -> ColouringResult
{
    const int n = int(adj.size());
    ColouringResult res;
    if (n == 0) {
        res.verdict = Verdict::Pass;
        return res;
    }
    // Greedy DSATUR colouring for the initial upper bound.
    std::vector<int> col(n, -1);
    auto dsatur_pick = [&](const std::vector<int> & c) {
        int best = -1, best_sat = -1, best_deg = -1;
        for (int v = 0; v < n; ++v) {
            if (c[v] >= 0)
                continue;
            std::vector<char> seen(n + 1, 0);
            int sat = 0, deg = 0;
            for (int w : adj[v]) {
                if (c[w] >= 0 && ! seen[c[w]]) {
                    seen[c[w]] = 1;
                    ++sat;
                }
                if (c[w] < 0)
                    ++deg;
            }
            if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
                best = v;
                best_sat = sat;
                best_deg = deg;
            }
        }
        return best;
    };
    for (int k = 0; k < n; ++k) {
        int v = dsatur_pick(col);
        std::vector<char> used(n + 1, 0);
        for (int w : adj[v])
            if (col[w] >= 0)
                used[col[w]] = 1;
        int c = 0;
        while (used[c])
            ++c;
        col[v] = c;
    }
    int ub = *std::max_element(col.begin(), col.end()) + 1;
    res.colouring = col;
    res.chromatic = ub;
    // Lower bound from a greedy clique.
    int lb = 1;
    for (int v = 0; v < n; ++v) {
        std::vector<int> clique{v};
        for (int w : adj[v]) {
            bool ok = true;
            for (int c : clique)
                if (c != v && ! std::binary_search(adj[c].begin(), adj[c].end(), w))
                    ok = false;
            if (ok)
                clique.push_back(w);
        }
        lb = std::max(lb, int(clique.size()));
    }
    res.lower_bound = lb;
    std::size_t nodes = 0;
    bool exhausted = false;
    // Try to colour with k = ub - 1, ub - 2, ... colours.
    for (int k = ub - 1; k >= lb; --k) {
        std::vector<int> c(n, -1);
        bool found = false;
        auto rec = [&](auto && self, int coloured, int used_colours) -> void {
            if (found || exhausted)
                return;
            if (++nodes > node_budget) {
                exhausted = true;
                return;
            }
            if (coloured == n) {
                found = true;
                return;
            }
            int v = dsatur_pick(c);
            std::vector<char> used(k, 0);
            for (int w : adj[v])
                if (c[w] >= 0)
                    used[c[w]] = 1;
            // Colours beyond used_colours are symmetric; try only one of them.
            for (int colour = 0; colour < std::min(k, used_colours + 1); ++colour) {
                if (used[colour])
                    continue;
                c[v] = colour;
                self(self, coloured + 1, std::max(used_colours, colour + 1));
                if (found || exhausted)
                    return;
                c[v] = -1;
            }
        };
        rec(rec, 0, 0);
        if (exhausted)
            break;
        if (! found) {
            res.lower_bound = k + 1;
            break;
        }
        res.colouring = c;
        res.chromatic = k;
    }
    if (exhausted) {
        res.verdict = Verdict::Unverified;
        return res;
    }
    res.lower_bound = res.chromatic;
    res.verdict = Verdict::Pass;
    return res;
}

struct SatResult
{
    Verdict verdict = Verdict::Unverified;  // Pass: satisfiable, Fail: unsatisfiable
    std::vector<int> solution;
    std::size_t nodes = 0;
};

// Exact satisfiability by backtracking with forward checking; elements are
// visited in breadth-first order from the most constrained element.
inline auto exact_satisfiable(const RelStructure & a, const RelStructure & t, std::size_t node_budget = 100000000)
    -> SatResult
{
    check_compatible(a, t);
    RelationIndex idx(t);
    auto h = hypergraph_of(a);
    auto adj = gaifman_adjacency(h);
    std::vector<int> order;
    std::vector<char> seen(a.size(), 0);
    std::vector<int> by_degree = all_elements(a);
    std::stable_sort(by_degree.begin(), by_degree.end(), [&](int x, int y) { return adj[x].size() > adj[y].size(); });
    for (int r : by_degree) {
        if (seen[r])
            continue;
        seen[r] = 1;
        std::queue<int> qu;
        qu.push(r);
        while (! qu.empty()) {
            int v = qu.front();
            qu.pop();
            order.push_back(v);
            for (int w : adj[v])
                if (! seen[w]) {
                    seen[w] = 1;
                    qu.push(w);
                }
        }
    }
    SatResult res;
    HomSearch search(a, idx, order);
    search.set_node_limit(node_budget);
    try {
        search.run([&](const std::vector<int> & vals) {
            res.solution.assign(a.size(), -1);
            for (std::size_t i = 0; i < order.size(); ++i)
                res.solution[order[i]] = vals[i];
            return false;
        });
    }
    catch (const BudgetExceeded &) {
        res.nodes = search.nodes();
        res.verdict = Verdict::Unverified;
        return res;
    }
    res.nodes = search.nodes();
    res.verdict = res.solution.empty() ? Verdict::Fail : Verdict::Pass;
    return res;
}

}
