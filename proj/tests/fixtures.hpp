#pragma once

#include "csplab/instance_gen.hpp"
#include "csplab/relational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace fixture {

using namespace csplab;

// Symmetric binary relation E on n named vertices.
inline auto graph(int n, const std::vector<std::pair<int, int>> & edges) -> RelStructure
{
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

inline auto cycle(int n) -> RelStructure
{
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        e.emplace_back(i, (i + 1) % n);
    return graph(n, e);
}

inline auto path(int n) -> RelStructure
{
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i)
        e.emplace_back(i, i + 1);
    return graph(n, e);
}

inline auto complete(int n) -> RelStructure
{
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            e.emplace_back(i, j);
    return graph(n, e);
}

// Random instance over template t: each tuple of each symbol kept with probability p.
inline auto random_instance(int n, const RelStructure & t, double p, CounterRng & rng) -> RelStructure
{
    RelStructure a;
    for (auto & s : t.signature.symbols)
        a.add_symbol(s.name, s.arity);
    for (auto & name : padded_names(n))
        a.add_element(name);
    for (std::size_t s = 0; s < t.signature.symbols.size(); ++s) {
        int r = t.signature.symbols[s].arity;
        std::vector<int> tup(r, 0);
        for (;;) {
            bool distinct = true;
            for (int i = 0; i < r; ++i)
                for (int j = i + 1; j < r; ++j)
                    distinct = distinct && tup[i] != tup[j];
            if (distinct && rng.unit() < p)
                a.add_tuple(int(s), tup);
            int i = 0;
            while (i < r && ++tup[i] == n)
                tup[i++] = 0;
            if (i == r)
                break;
        }
    }
    a.normalize();
    return a;
}

// All maps x -> [q] passing the tuple test, by exhaustive enumeration.
inline auto brute_homs(const RelStructure & a, const RelStructure & t, const std::vector<int> & x)
    -> std::vector<std::vector<int>>
{
    RelationIndex idx(t);
    std::vector<std::vector<int>> out;
    std::vector<int> vals(x.size(), 0);
    const int q = t.size();
    for (;;) {
        std::vector<int> f(a.size(), -1);
        for (std::size_t i = 0; i < x.size(); ++i)
            f[x[i]] = vals[i];
        bool ok = true;
        for (std::size_t s = 0; s < a.relations.size() && ok; ++s)
            for (auto & tup : a.relations[s]) {
                Tuple img;
                bool inside = true;
                for (int e : tup) {
                    inside = inside && f[e] >= 0;
                    img.push_back(f[e]);
                }
                if (inside && ! idx.contains(int(s), img)) {
                    ok = false;
                    break;
                }
            }
        if (ok)
            out.push_back(vals);
        std::size_t i = x.size();
        // Lexicographic increment with the first position most significant.
        while (i > 0 && ++vals[i - 1] == q)
            vals[--i] = 0;
        if (i == 0)
            break;
    }
    return out;
}

}
