#pragma once

#include "csplab/relational.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace csplab {

// Sorted, deduplicated adjacency lists.
using Adjacency = std::vector<std::vector<int>>;

inline auto normalize_adjacency(Adjacency & adj) -> void
{
    for (auto & a : adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
}

// Two edges are adjacent when they share a vertex.
inline auto line_graph(const Hypergraph & h) -> Adjacency
{
    Adjacency adj(h.m());
    for (int v = 0; v < h.n; ++v)
        for (int e : h.incident[v])
            for (int f : h.incident[v])
                if (e != f)
                    adj[e].push_back(f);
    normalize_adjacency(adj);
    return adj;
}

// Simple graph view of a structure: u ~ v when some tuple contains both.
inline auto gaifman_adjacency(const Hypergraph & h) -> Adjacency
{
    Adjacency adj(h.n);
    for (auto & e : h.edges)
        for (int u : e)
            for (int v : e)
                if (u != v)
                    adj[u].push_back(v);
    normalize_adjacency(adj);
    return adj;
}

// Enumerates every connected vertex subset of size 1..max_size exactly once
// (ESU scheme: the subset's minimum vertex is its root). Only roots with
// is_root[r] set are used when is_root is non-empty. visit(subset) returns
// false to stop; the return value is false when stopped.
template <typename Visit>
auto enumerate_connected(const Adjacency & adj, int max_size, const std::vector<char> & is_root, Visit && visit) -> bool
{
    const int n = int(adj.size());
    std::vector<int> cover(n, 0);
    std::vector<int> sub;
    bool stopped = false;

    auto mark = [&](int w, int d) {
        cover[w] += d;
        for (int u : adj[w])
            cover[u] += d;
    };

    auto extend = [&](auto && self, std::vector<int> ext, int root) -> void {
        if (! visit(static_cast<const std::vector<int> &>(sub))) {
            stopped = true;
            return;
        }
        if (int(sub.size()) == max_size)
            return;
        while (! ext.empty() && ! stopped) {
            int w = ext.back();
            ext.pop_back();
            auto next = ext;
            for (int u : adj[w])
                if (u > root && cover[u] == 0)
                    next.push_back(u);
            mark(w, 1);
            sub.push_back(w);
            self(self, std::move(next), root);
            sub.pop_back();
            mark(w, -1);
        }
    };

    for (int v = 0; v < n && ! stopped; ++v) {
        if (! is_root.empty() && ! is_root[v])
            continue;
        if (max_size < 1)
            break;
        std::vector<int> ext;
        for (int u : adj[v])
            if (u > v)
                ext.push_back(u);
        mark(v, 1);
        sub.push_back(v);
        extend(extend, std::move(ext), v);
        sub.pop_back();
        mark(v, -1);
    }
    return ! stopped;
}

template <typename Visit>
auto enumerate_connected(const Adjacency & adj, int max_size, Visit && visit) -> bool
{
    return enumerate_connected(adj, max_size, std::vector<char>{}, std::forward<Visit>(visit));
}

// Connected components of a vertex subset (given as a list) in adj.
inline auto components_of(const Adjacency & adj, const std::vector<int> & subset) -> std::vector<std::vector<int>>
{
    std::vector<std::vector<int>> out;
    std::vector<int> sorted = subset;
    std::sort(sorted.begin(), sorted.end());
    std::vector<char> seen(sorted.size(), 0);
    auto pos = [&](int v) {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
        return (it != sorted.end() && *it == v) ? int(it - sorted.begin()) : -1;
    };
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (seen[i])
            continue;
        std::vector<int> comp{sorted[i]};
        seen[i] = 1;
        for (std::size_t k = 0; k < comp.size(); ++k)
            for (int u : adj[comp[k]]) {
                int p = pos(u);
                if (p >= 0 && ! seen[p]) {
                    seen[p] = 1;
                    comp.push_back(u);
                }
            }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

}
