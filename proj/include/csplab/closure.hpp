#pragma once

#include "csplab/boundary.hpp"
#include "csplab/combinatorics.hpp"
#include "csplab/relational.hpp"
#include "csplab/verdict.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace csplab {

// Pass: the closure was computed. Unverified: it outgrew the size budget and
// the operator is undefined there.
struct ClosureResult
{
    Verdict verdict = Verdict::Pass;
    std::vector<int> set;    // sorted
    std::vector<int> seeds;  // graph closure: cl(U) = Desc(seeds)
};

inline auto membership(int n, const std::vector<int> & u) -> std::vector<char>
{
    std::vector<char> in(n, 0);
    for (int v : u)
        in.at(v) = 1;
    return in;
}

inline auto members(const std::vector<char> & in) -> std::vector<int>
{
    std::vector<int> out;
    for (std::size_t v = 0; v < in.size(); ++v)
        if (in[v])
            out.push_back(int(v));
    return out;
}

// ---------------------------------------------------------------------------
// Graph closure. rank[v] orders the vertices; a decreasing path visits
// strictly smaller ranks.

// Ranks vertices by colour class, then by index.
inline auto colour_class_order(const std::vector<int> & colour) -> std::vector<int>
{
    const int n = int(colour.size());
    std::vector<int> by(n);
    for (int v = 0; v < n; ++v)
        by[v] = v;
    std::stable_sort(by.begin(), by.end(), [&](int a, int b) { return colour[a] < colour[b]; });
    std::vector<int> rank(n);
    for (int i = 0; i < n; ++i)
        rank[by[i]] = i;
    return rank;
}

// Desc(U), which contains U.
inline auto descendants(const Adjacency & adj, const std::vector<int> & rank, const std::vector<int> & u)
    -> std::vector<int>
{
    std::vector<char> in = membership(int(adj.size()), u);
    std::vector<int> stack = u;
    while (! stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (rank[w] < rank[v] && ! in[w]) {
                in[w] = 1;
                stack.push_back(w);
            }
    }
    return members(in);
}

// A tau-hop: a simple path of length tau between two vertices of U, or a
// simple cycle of length tau through one vertex of U, with every other vertex
// outside U. Returned as its vertex sequence.
inline auto find_hop(const Adjacency & adj, const std::vector<char> & in_u, int tau) -> std::optional<std::vector<int>>
{
    if (tau < 2)
        throw std::invalid_argument("hops have length at least 2");
    std::vector<int> path;
    std::vector<char> used(adj.size(), 0);
    auto dfs = [&](auto && self, int len) -> bool {
        int v = path.back();
        for (int w : adj[v]) {
            if (len + 1 == tau) {
                if (! in_u[w])
                    continue;
                if (w == path.front() && tau < 3)
                    continue;
                path.push_back(w);
                return true;
            }
            if (in_u[w] || used[w])
                continue;
            used[w] = 1;
            path.push_back(w);
            if (self(self, len + 1))
                return true;
            path.pop_back();
            used[w] = 0;
        }
        return false;
    };
    for (std::size_t u = 0; u < adj.size(); ++u) {
        if (! in_u[u])
            continue;
        path.assign(1, int(u));
        if (dfs(dfs, 0))
            return path;
    }
    return std::nullopt;
}

// A lasso: a walk v1 v2 v3 v4 v5 with v2 = v5, v1 in U and the triangle
// v2 v3 v4 outside U.
inline auto find_lasso(const Adjacency & adj, const std::vector<char> & in_u) -> std::optional<std::vector<int>>
{
    for (std::size_t v1 = 0; v1 < adj.size(); ++v1) {
        if (! in_u[v1])
            continue;
        for (int v2 : adj[v1]) {
            if (in_u[v2])
                continue;
            for (int v3 : adj[v2]) {
                if (in_u[v3])
                    continue;
                for (int v4 : adj[v3])
                    if (! in_u[v4] && v4 != v2 && std::binary_search(adj[v4].begin(), adj[v4].end(), v2))
                        return std::vector<int>{int(v1), v2, v3, v4, v2};
            }
        }
    }
    return std::nullopt;
}

inline auto is_graph_closed(const Adjacency & adj, const std::vector<int> & rank, const std::vector<int> & set) -> bool
{
    if (descendants(adj, rank, set) != set)
        return false;
    auto in = membership(int(adj.size()), set);
    for (int tau = 2; tau <= 4; ++tau)
        if (find_hop(adj, in, tau))
            return false;
    return ! find_lasso(adj, in);
}

// The least closed superset of U: descendants, then hop and lasso interiors,
// until nothing changes. Every closed superset of U contains each vertex added,
// so the result is the unique minimal one.
inline auto graph_closure(const Adjacency & adj, const std::vector<int> & rank, const std::vector<int> & u,
    std::size_t max_size = std::numeric_limits<std::size_t>::max()) -> ClosureResult
{
    for (auto & row : adj)
        if (! std::is_sorted(row.begin(), row.end()))
            throw std::invalid_argument("adjacency lists must be sorted");
    ClosureResult res;
    res.seeds = u;
    std::sort(res.seeds.begin(), res.seeds.end());
    res.seeds.erase(std::unique(res.seeds.begin(), res.seeds.end()), res.seeds.end());
    auto current = descendants(adj, rank, res.seeds);
    for (;;) {
        if (current.size() > max_size) {
            res.verdict = Verdict::Unverified;
            res.set = std::move(current);
            return res;
        }
        auto in = membership(int(adj.size()), current);
        std::optional<std::vector<int>> found;
        for (int tau = 2; tau <= 4 && ! found; ++tau)
            found = find_hop(adj, in, tau);
        if (! found)
            found = find_lasso(adj, in);
        if (! found)
            break;
        for (int v : *found)
            if (! in[v]) {
                in[v] = 1;
                res.seeds.push_back(v);
            }
        current = descendants(adj, rank, members(in));
    }
    std::sort(res.seeds.begin(), res.seeds.end());
    res.seeds.erase(std::unique(res.seeds.begin(), res.seeds.end()), res.seeds.end());
    res.set = std::move(current);
    return res;
}

// ---------------------------------------------------------------------------
// Local closure of a hypergraph: U together with the vertices of every
// (U, ell)-bad edge set of at most s edges.
//
// The boundary of an edge set is the union of the boundaries of its connected
// components (edges sharing a vertex), so an edge set is bad iff each component
// is, and the union only needs connected bad sets. A connected set avoiding U
// is (U, ell)-bad iff it is (empty, ell)-bad; those are found once.

enum class BwMode
{
    Enumerate,  // exact: every connected candidate set
    Peel,       // strip boundary elements from E, then enumerate inside what is left
};

class BwClosure
{
public:
    BwClosure(const Hypergraph & h, int ell, int s, BwMode mode = BwMode::Enumerate, std::size_t budget = 50000000) :
        h_(h), ell_(ell), s_(s), mode_(mode), budget_(budget), bc_(h_)
    {
        if (ell < 1 || s < 1)
            throw std::invalid_argument("local closure needs ell >= 1 and s >= 1");
        line_ = line_graph(h);
        if (mode_ == BwMode::Enumerate) {
            std::vector<char> in(h.n, 0);
            std::size_t seen = 0;
            bool done = enumerate_connected(line_, s_, [&](const std::vector<int> & f) {
                if (++seen > budget_)
                    return false;
                if (bc_.is_bad({}, f, ell_))
                    for (int e : f)
                        for (int v : h_.edges[e])
                            in[v] = 1;
                return true;
            });
            if (! done)
                throw BudgetExceeded("local closure: too many candidate edge sets");
            base_ = members(in);
        }
    }

    BwClosure(const BwClosure &) = delete;
    auto operator=(const BwClosure &) -> BwClosure & = delete;

    auto ell() const -> int { return ell_; }
    auto s() const -> int { return s_; }

    auto closure(const std::vector<int> & u) -> ClosureResult
    {
        return mode_ == BwMode::Enumerate ? enumerate(u) : peel(u);
    }

private:
    auto enumerate(const std::vector<int> & u) -> ClosureResult
    {
        ClosureResult res;
        std::vector<char> in = membership(h_.n, u);
        std::vector<char> in_u = in;
        for (int v : base_)
            in[v] = 1;
        // Edges touching U get the smallest labels, so the rooted enumeration
        // (root = least label) visits exactly the connected sets meeting U.
        const int m = h_.m();
        std::vector<int> label(m), edge_of(m);
        int next = 0;
        for (int pass = 0; pass < 2; ++pass)
            for (int e = 0; e < m; ++e) {
                bool touch = false;
                for (int v : h_.edges[e])
                    touch = touch || in_u[v];
                if (touch == (pass == 0)) {
                    label[e] = next;
                    edge_of[next++] = e;
                }
            }
        int roots = 0;
        for (int e = 0; e < m; ++e)
            for (int v : h_.edges[e])
                if (in_u[v]) {
                    ++roots;
                    break;
                }
        Adjacency adj(m);
        for (int e = 0; e < m; ++e)
            for (int g : line_[e])
                adj[label[e]].push_back(label[g]);
        for (auto & row : adj)
            std::sort(row.begin(), row.end());
        std::vector<char> is_root(m, 0);
        for (int r = 0; r < roots; ++r)
            is_root[r] = 1;
        std::size_t seen = 0;
        std::vector<int> f;
        bool done = roots == 0 || enumerate_connected(adj, s_, is_root, [&](const std::vector<int> & sub) {
            if (++seen > budget_)
                return false;
            f.clear();
            for (int x : sub)
                f.push_back(edge_of[x]);
            if (bc_.is_bad(u, f, ell_))
                for (int e : f)
                    for (int v : h_.edges[e])
                        in[v] = 1;
            return true;
        });
        res.set = members(in);
        if (! done)
            res.verdict = Verdict::Unverified;
        return res;
    }

    // A boundary path is removable when its edges form a linear chain:
    // consecutive edges share one vertex, others are disjoint. Such a path (or
    // a B1 edge) meeting a bad set F would leave an edge of F with at most one
    // attached vertex, so every (U, ell)-bad set survives the peeling and
    // candidates are searched inside the residue. Paths with overlapping
    // edges are kept: removing them can cut a bad set.
    auto linear_chain(const std::vector<int> & p) const -> bool
    {
        if (p.size() < 2)
            return true;
        std::size_t links = 0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            int touching = 0;
            for (std::size_t j = 0; j < p.size(); ++j) {
                if (i == j)
                    continue;
                int shared = 0;
                for (int v : h_.edges[p[i]])
                    shared += int(std::count(h_.edges[p[j]].begin(), h_.edges[p[j]].end(), v));
                if (shared > 1)
                    return false;
                touching += shared;
            }
            if (touching > 2)
                return false;
            links += std::size_t(touching);
        }
        // A chain of r edges has r - 1 links, each seen from both ends.
        return links == 2 * (p.size() - 1);
    }

    auto peel(const std::vector<int> & u) -> ClosureResult
    {
        std::vector<char> alive(h_.m(), 1);
        std::vector<int> f;
        for (;;) {
            f.clear();
            for (int e = 0; e < h_.m(); ++e)
                if (alive[e])
                    f.push_back(e);
            bool removed = false;
            for (auto & elem : bc_.boundary(u, f, ell_))
                if (linear_chain(elem))
                    for (int e : elem) {
                        removed = removed || alive[e];
                        alive[e] = 0;
                    }
            if (! removed)
                break;
        }
        ClosureResult res;
        std::vector<char> in = membership(h_.n, u);
        std::vector<int> local(h_.m(), -1);
        for (std::size_t i = 0; i < f.size(); ++i)
            local[f[i]] = int(i);
        Adjacency adj(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) {
            for (int g : line_[f[i]])
                if (local[g] >= 0)
                    adj[i].push_back(local[g]);
            std::sort(adj[i].begin(), adj[i].end());
        }
        std::size_t seen = 0;
        std::vector<int> cand;
        bool done = enumerate_connected(adj, s_, [&](const std::vector<int> & sub) {
            if (++seen > budget_)
                return false;
            cand.clear();
            for (int x : sub)
                cand.push_back(f[x]);
            if (bc_.is_bad(u, cand, ell_))
                for (int e : cand)
                    for (int v : h_.edges[e])
                        in[v] = 1;
            return true;
        });
        res.set = members(in);
        if (! done)
            res.verdict = Verdict::Unverified;
        return res;
    }

    Hypergraph h_;
    int ell_, s_;
    BwMode mode_;
    std::size_t budget_;
    BoundaryComputer bc_;
    Adjacency line_;
    std::vector<int> base_;
};

// ---------------------------------------------------------------------------
// Insularity and extension.

struct InsularResult
{
    Verdict verdict = Verdict::Pass;  // Pass: insular
    std::vector<int> witness;         // a bad edge set leaving E[U]
};

// U is insular in F when every (U, ell)-bad subset of F lies inside E[U]. A
// bad set leaving E[U] has a connected bad component leaving E[U], so
// connected subsets of F suffice.
inline auto is_insular(const Hypergraph & h, const std::vector<int> & u, const std::vector<int> & f, int ell,
    std::size_t budget = 50000000) -> InsularResult
{
    auto in_u = membership(h.n, u);
    Adjacency adj(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < f.size(); ++j) {
            if (i == j)
                continue;
            auto & a = h.edges[f[i]];
            auto & b = h.edges[f[j]];
            bool meet = std::any_of(a.begin(), a.end(), [&](int v) { return std::find(b.begin(), b.end(), v) != b.end(); });
            if (meet)
                adj[i].push_back(int(j));
        }
    BoundaryComputer bc(h);
    InsularResult res;
    std::size_t seen = 0;
    std::vector<int> g;
    bool done = enumerate_connected(adj, int(f.size()), [&](const std::vector<int> & sub) {
        if (++seen > budget)
            return false;
        g.clear();
        bool outside = false;
        for (int i : sub) {
            g.push_back(f[i]);
            for (int v : h.edges[f[i]])
                outside = outside || ! in_u[v];
        }
        if (outside && bc.is_bad(u, g, ell)) {
            res.verdict = Verdict::Fail;
            res.witness = g;
            std::sort(res.witness.begin(), res.witness.end());
            return false;
        }
        return true;
    });
    if (! done && res.verdict == Verdict::Pass)
        res.verdict = Verdict::Unverified;
    return res;
}

// Extends a partial homomorphism rho on U to U and V(F), assuming U is
// ell-insular in F and T is ell-null-constraining. Boundary elements are
// peeled off F one at a time; they are then assigned in reverse peeling order
// by exhaustive search over their new vertices.
inline auto extend_over_insular(const RelStructure & a, const RelStructure & t, const Hypergraph & h,
    const PartialHom & rho, const std::vector<int> & f, int ell) -> PartialHom
{
    check_compatible(a, t);
    RelationIndex idx(t);
    auto u = rho.domain();
    if (! is_partial_homomorphism(a, idx, rho))
        throw std::invalid_argument("the map to extend is not a partial homomorphism");
    BoundaryComputer bc(h);
    std::vector<int> rest = f;
    std::vector<std::vector<int>> peeled;
    while (! rest.empty()) {
        auto b = bc.boundary(u, rest, ell);
        if (b.empty())
            throw std::runtime_error("no boundary element left: the set is not insular in the edge set");
        auto & h0 = b.front();
        peeled.push_back(h0);
        std::vector<int> next;
        for (int e : rest)
            if (std::find(h0.begin(), h0.end(), e) == h0.end())
                next.push_back(e);
        rest = std::move(next);
    }
    std::vector<int> value(a.size(), -1);
    for (auto & [e, v] : rho.entries)
        value[e] = v;
    for (auto it = peeled.rbegin(); it != peeled.rend(); ++it) {
        std::vector<int> x, pre;
        std::vector<char> seen(a.size(), 0);
        auto add = [&](int v) {
            if (! seen[v]) {
                seen[v] = 1;
                x.push_back(v);
                pre.push_back(value[v]);
            }
        };
        for (int e : *it)
            for (int v : h.edges[e])
                add(v);
        for (int v = 0; v < a.size(); ++v)
            if (value[v] >= 0)
                add(v);
        auto got = find_hom(a, idx, x, pre);
        if (! got) {
            std::string msg = "no extension over boundary element {";
            for (std::size_t i = 0; i < it->size(); ++i)
                msg += (i ? "," : "") + std::to_string((*it)[i]);
            throw std::runtime_error(msg + "}: the template does not permit this path instance");
        }
        for (std::size_t i = 0; i < x.size(); ++i)
            value[x[i]] = (*got)[i];
    }
    std::vector<std::pair<int, int>> out;
    for (int v = 0; v < a.size(); ++v)
        if (value[v] >= 0)
            out.emplace_back(v, value[v]);
    return PartialHom::from(std::move(out));
}

}
