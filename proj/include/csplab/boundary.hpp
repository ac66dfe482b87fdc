#pragma once

#include "csplab/relational.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace csplab {

// Boundary of an edge set F relative to a vertex set U:
//   B1: edges of F with at most one vertex that lies in U or has F-degree > 1;
//   B2: pendant Berge paths of length l in F \ E[U] whose non-endpoints avoid U.
// A path v0 e0 v1 ... e_{l-1} v_l has distinct vertices v_i and distinct edges with
// v_i, v_{i+1} in e_i; its non-endpoints are V(e_0..e_{l-1}) \ {v0, v_l}; it is
// pendant in F' when no non-endpoint lies in an edge of F' outside the path.
// Boundary elements are edge sets; B1 elements are singletons.
class BoundaryComputer
{
public:
    explicit BoundaryComputer(const Hypergraph & h) :
        h_(h), deg_(h.n, 0), in_u_(h.n, 0), in_f_(h.m(), 0), on_path_(h.m(), 0), vmark_(h.n, 0)
    {
    }

    auto boundary(const std::vector<int> & u, const std::vector<int> & f, int ell) -> std::vector<std::vector<int>>
    {
        std::set<std::vector<int>> out;
        run(u, f, ell, [&](std::vector<int> elem) {
            out.insert(std::move(elem));
            return true;
        });
        return {out.begin(), out.end()};
    }

    auto is_bad(const std::vector<int> & u, const std::vector<int> & f, int ell) -> bool
    {
        bool any = false;
        run(u, f, ell, [&](std::vector<int>) {
            any = true;
            return false;
        });
        return ! any;
    }

    auto b1(const std::vector<int> & u, const std::vector<int> & f) -> std::vector<int>
    {
        std::vector<int> out;
        setup(u, f);
        for (int e : f)
            if (attached(e) <= 1)
                out.push_back(e);
        teardown(u, f);
        return out;
    }

    // Pendant paths of length ell as sorted edge lists (deduplicated).
    auto pendant_paths(const std::vector<int> & u, const std::vector<int> & f, int ell) -> std::vector<std::vector<int>>
    {
        std::set<std::vector<int>> out;
        setup(u, f);
        paths(f, ell, [&](std::vector<int> p) {
            out.insert(std::move(p));
            return true;
        });
        teardown(u, f);
        return {out.begin(), out.end()};
    }

private:
    auto setup(const std::vector<int> & u, const std::vector<int> & f) -> void
    {
        for (int v : u)
            in_u_[v] = 1;
        for (int e : f) {
            in_f_[e] = 1;
            for (int v : h_.edges[e])
                ++deg_[v];
        }
    }

    auto teardown(const std::vector<int> & u, const std::vector<int> & f) -> void
    {
        for (int v : u)
            in_u_[v] = 0;
        for (int e : f) {
            in_f_[e] = 0;
            for (int v : h_.edges[e])
                deg_[v] = 0;
        }
    }

    auto attached(int e) const -> int
    {
        int c = 0;
        for (int v : h_.edges[e])
            if (in_u_[v] || deg_[v] > 1)
                ++c;
        return c;
    }

    auto inside_u(int e) const -> bool
    {
        for (int v : h_.edges[e])
            if (! in_u_[v])
                return false;
        return true;
    }

    template <typename Emit>
    auto run(const std::vector<int> & u, const std::vector<int> & f, int ell, Emit && emit) -> void
    {
        setup(u, f);
        bool go = true;
        for (int e : f)
            if (attached(e) <= 1) {
                if (! emit(std::vector<int>{e})) {
                    go = false;
                    break;
                }
            }
        if (go)
            paths(f, ell, emit);
        teardown(u, f);
    }

    // Requires setup. Walks Berge paths inside F' = F \ E[U]; deg_ counts
    // F-degrees, and F-degree equals F'-degree for vertices outside U.
    template <typename Emit>
    auto paths(const std::vector<int> & f, int ell, Emit && emit) -> void
    {
        if (ell < 1)
            return;
        std::vector<int> fp;
        for (int e : f)
            if (! inside_u(e))
                fp.push_back(e);
        if (int(fp.size()) < ell)
            return;
        std::vector<int> in_fp_edges = fp;
        std::sort(in_fp_edges.begin(), in_fp_edges.end());
        auto in_fp = [&](int e) { return std::binary_search(in_fp_edges.begin(), in_fp_edges.end(), e); };

        std::vector<int> verts, edges;
        bool stop = false;

        auto check = [&]() -> bool {
            int v0 = verts.front(), vl = verts.back();
            // Every non-endpoint is outside U and only in path edges of F'.
            for (int e : edges)
                for (int v : h_.edges[e]) {
                    if (v == v0 || v == vl)
                        continue;
                    if (in_u_[v])
                        return false;
                    int on = 0;
                    for (int g : h_.incident[v])
                        if (on_path_[g])
                            ++on;
                    // deg_ counts all F edges at v; v is outside U so those are F' edges.
                    if (deg_[v] != on)
                        return false;
                }
            return true;
        };

        auto dfs = [&](auto && self, int len) -> void {
            if (stop)
                return;
            if (len == ell) {
                if (check()) {
                    auto sorted = edges;
                    std::sort(sorted.begin(), sorted.end());
                    if (! emit(std::move(sorted)))
                        stop = true;
                }
                return;
            }
            int v = verts.back();
            // Interior connecting vertices must avoid U.
            if (len > 0 && in_u_[v])
                return;
            for (int e : h_.incident[v]) {
                if (! in_f_[e] || on_path_[e] || ! in_fp(e))
                    continue;
                on_path_[e] = 1;
                edges.push_back(e);
                for (int w : h_.edges[e]) {
                    if (vmark_[w])
                        continue;
                    vmark_[w] = 1;
                    verts.push_back(w);
                    self(self, len + 1);
                    verts.pop_back();
                    vmark_[w] = 0;
                    if (stop)
                        break;
                }
                edges.pop_back();
                on_path_[e] = 0;
                if (stop)
                    return;
            }
        };

        std::vector<int> starts;
        for (int e : fp)
            for (int v : h_.edges[e])
                starts.push_back(v);
        std::sort(starts.begin(), starts.end());
        starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
        for (int v0 : starts) {
            vmark_[v0] = 1;
            verts.push_back(v0);
            dfs(dfs, 0);
            verts.pop_back();
            vmark_[v0] = 0;
            if (stop)
                break;
        }
    }

    const Hypergraph & h_;
    std::vector<int> deg_;
    std::vector<char> in_u_, in_f_, on_path_, vmark_;
};

}
