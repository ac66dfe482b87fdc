#pragma once

#include "csplab/verdict.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace csplab {

struct RelSymbol
{
    std::string name;
    int arity = 0;
};

struct Signature
{
    std::vector<RelSymbol> symbols;

    auto find(const std::string & name) const -> int
    {
        for (std::size_t i = 0; i < symbols.size(); ++i)
            if (symbols[i].name == name)
                return static_cast<int>(i);
        return -1;
    }

    auto operator==(const Signature & o) const -> bool
    {
        if (symbols.size() != o.symbols.size())
            return false;
        for (std::size_t i = 0; i < symbols.size(); ++i)
            if (symbols[i].name != o.symbols[i].name || symbols[i].arity != o.symbols[i].arity)
                return false;
        return true;
    }
};

using Tuple = std::vector<int>;

// Elements are dense ints in input order; names map back to the original strings.
struct RelStructure
{
    Signature signature;
    std::vector<std::string> names;
    std::unordered_map<std::string, int> index;
    std::vector<std::vector<Tuple>> relations;

    auto size() const -> int { return static_cast<int>(names.size()); }

    auto add_element(const std::string & name) -> int
    {
        auto [it, fresh] = index.emplace(name, static_cast<int>(names.size()));
        if (! fresh)
            throw std::invalid_argument("duplicate element: " + name);
        names.push_back(name);
        return it->second;
    }

    auto element(const std::string & name) const -> int
    {
        auto it = index.find(name);
        if (it == index.end())
            throw std::invalid_argument("unknown element: " + name);
        return it->second;
    }

    auto add_symbol(const std::string & name, int arity) -> int
    {
        if (signature.find(name) >= 0)
            throw std::invalid_argument("duplicate symbol: " + name);
        signature.symbols.push_back({name, arity});
        relations.emplace_back();
        return static_cast<int>(relations.size()) - 1;
    }

    auto add_tuple(int symbol, Tuple t) -> void
    {
        if (static_cast<int>(t.size()) != signature.symbols.at(symbol).arity)
            throw std::invalid_argument("arity mismatch in " + signature.symbols[symbol].name);
        for (int e : t)
            if (e < 0 || e >= size())
                throw std::invalid_argument("tuple element out of range");
        relations[symbol].push_back(std::move(t));
    }

    // Sorts and deduplicates every relation.
    auto normalize() -> void
    {
        for (auto & r : relations) {
            std::sort(r.begin(), r.end());
            r.erase(std::unique(r.begin(), r.end()), r.end());
        }
    }

    auto tuple_count() const -> std::size_t
    {
        std::size_t c = 0;
        for (auto & r : relations)
            c += r.size();
        return c;
    }
};

// Instances are structures whose tuples never repeat an element.
using Instance = RelStructure;

inline auto is_instance(const RelStructure & a) -> bool
{
    for (auto & r : a.relations)
        for (auto & t : r) {
            auto s = t;
            std::sort(s.begin(), s.end());
            if (std::adjacent_find(s.begin(), s.end()) != s.end())
                return false;
        }
    return true;
}

inline auto require_instance(const RelStructure & a) -> void
{
    if (! is_instance(a))
        throw std::invalid_argument("instance has a tuple with a repeated element");
}

struct HomOverflow : std::runtime_error
{
    std::size_t cap;
    explicit HomOverflow(std::size_t c) :
        std::runtime_error("homomorphism enumeration exceeded cap " + std::to_string(c)), cap(c)
    {
    }
};

// Membership oracle for the relations of a template.
class RelationIndex
{
public:
    explicit RelationIndex(const RelStructure & t) : q_(t.size())
    {
        if (q_ > 64)
            throw std::invalid_argument("templates are limited to 64 elements");
        for (std::size_t s = 0; s < t.relations.size(); ++s) {
            int arity = t.signature.symbols[s].arity;
            Rel rel;
            double cells = 1;
            for (int i = 0; i < arity; ++i)
                cells *= q_;
            rel.dense = cells <= double(1 << 24);
            if (rel.dense)
                rel.bits.assign(static_cast<std::size_t>(cells), 0);
            for (auto & tup : t.relations[s]) {
                if (rel.dense)
                    rel.bits[code(tup)] = 1;
                else
                    rel.sparse.insert(tup);
            }
            rels_.push_back(std::move(rel));
        }
    }

    auto contains(int symbol, const Tuple & values) const -> bool
    {
        auto & rel = rels_[symbol];
        if (rel.dense)
            return rel.bits[code(values)];
        return rel.sparse.count(values) != 0;
    }

    auto template_size() const -> int { return q_; }

private:
    struct Rel
    {
        bool dense = true;
        std::vector<char> bits;
        std::set<Tuple> sparse;
    };

    auto code(const Tuple & v) const -> std::size_t
    {
        std::size_t c = 0;
        for (std::size_t i = v.size(); i-- > 0;)
            c = c * static_cast<std::size_t>(q_) + static_cast<std::size_t>(v[i]);
        return c;
    }

    int q_;
    std::vector<Rel> rels_;
};

// Per-element incidence lists for an instance.
struct InstanceIndex
{
    struct Ref
    {
        int symbol;
        int tuple;
    };
    std::vector<std::vector<Ref>> incident;

    explicit InstanceIndex(const RelStructure & a) : incident(a.size())
    {
        for (std::size_t s = 0; s < a.relations.size(); ++s)
            for (std::size_t i = 0; i < a.relations[s].size(); ++i) {
                auto & t = a.relations[s][i];
                for (std::size_t j = 0; j < t.size(); ++j) {
                    bool first = std::find(t.begin(), t.begin() + j, t[j]) == t.begin() + j;
                    if (first)
                        incident[t[j]].push_back({int(s), int(i)});
                }
            }
    }
};

// A partial map from instance elements to template elements, sorted by domain element.
struct PartialHom
{
    std::vector<std::pair<int, int>> entries;

    static auto from(std::vector<std::pair<int, int>> e) -> PartialHom
    {
        std::sort(e.begin(), e.end());
        for (std::size_t i = 1; i < e.size(); ++i)
            if (e[i].first == e[i - 1].first)
                throw std::invalid_argument("partial map assigns an element twice");
        return PartialHom{std::move(e)};
    }

    static auto from(const std::vector<int> & dom, const std::vector<int> & vals) -> PartialHom
    {
        std::vector<std::pair<int, int>> e;
        for (std::size_t i = 0; i < dom.size(); ++i)
            e.emplace_back(dom[i], vals[i]);
        return from(std::move(e));
    }

    auto domain() const -> std::vector<int>
    {
        std::vector<int> d;
        for (auto & [a, v] : entries)
            d.push_back(a);
        return d;
    }

    auto value(int a) const -> int
    {
        auto it = std::lower_bound(entries.begin(), entries.end(), std::pair{a, -1});
        if (it == entries.end() || it->first != a)
            return -1;
        return it->second;
    }

    auto operator==(const PartialHom &) const -> bool = default;
    auto operator<(const PartialHom & o) const -> bool { return entries < o.entries; }
};

// True when psi agrees with phi on dom(phi).
inline auto extends(const PartialHom & psi, const PartialHom & phi) -> bool
{
    for (auto & [a, v] : phi.entries)
        if (psi.value(a) != v)
            return false;
    return true;
}

inline auto restrict(const PartialHom & phi, const std::vector<int> & y) -> PartialHom
{
    std::vector<int> ys = y;
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    PartialHom r;
    for (auto & e : phi.entries)
        if (std::binary_search(ys.begin(), ys.end(), e.first))
            r.entries.push_back(e);
    if (r.entries.size() != ys.size())
        throw std::invalid_argument("restriction set is not inside the domain");
    return r;
}

// Tuples of a lying entirely inside the set marked in `in`.
inline auto tuples_inside(const RelStructure & a, const std::vector<char> & in)
    -> std::vector<std::pair<int, const Tuple *>>
{
    std::vector<std::pair<int, const Tuple *>> out;
    for (std::size_t s = 0; s < a.relations.size(); ++s)
        for (auto & t : a.relations[s])
            if (std::all_of(t.begin(), t.end(), [&](int e) { return in[e] != 0; }))
                out.emplace_back(int(s), &t);
    return out;
}

struct Substructure
{
    RelStructure structure;
    std::vector<int> original;
};

// A[X]: the elements of X with exactly the tuples of A that lie inside X.
inline auto induced_substructure(const RelStructure & a, const std::vector<int> & x) -> Substructure
{
    Substructure out;
    out.structure.signature = a.signature;
    out.structure.relations.resize(a.relations.size());
    std::vector<int> local(a.size(), -1);
    for (int e : x) {
        if (local[e] >= 0)
            continue;
        local[e] = out.structure.add_element(a.names[e]);
        out.original.push_back(e);
    }
    for (std::size_t s = 0; s < a.relations.size(); ++s)
        for (auto & t : a.relations[s]) {
            Tuple lt;
            bool inside = true;
            for (int e : t) {
                if (local[e] < 0) {
                    inside = false;
                    break;
                }
                lt.push_back(local[e]);
            }
            if (inside)
                out.structure.relations[s].push_back(std::move(lt));
        }
    out.structure.normalize();
    return out;
}

inline auto check_compatible(const RelStructure & a, const RelStructure & t) -> void
{
    if (! (a.signature == t.signature))
        throw std::invalid_argument("instance and template signatures differ");
}

// f maps every element of a (f[e] = template element).
inline auto is_homomorphism(const RelStructure & a, const RelStructure & t, const std::vector<int> & f) -> bool
{
    check_compatible(a, t);
    RelationIndex idx(t);
    Tuple img;
    for (std::size_t s = 0; s < a.relations.size(); ++s)
        for (auto & tup : a.relations[s]) {
            img.clear();
            for (int e : tup)
                img.push_back(f.at(e));
            if (! idx.contains(int(s), img))
                return false;
        }
    return true;
}

// True when phi is a homomorphism from A[dom(phi)] to t.
inline auto is_partial_homomorphism(const RelStructure & a, const RelationIndex & idx, const PartialHom & phi) -> bool
{
    std::vector<int> f(a.size(), -1);
    for (auto & [e, v] : phi.entries)
        f[e] = v;
    Tuple img;
    for (std::size_t s = 0; s < a.relations.size(); ++s)
        for (auto & tup : a.relations[s]) {
            img.clear();
            bool inside = true;
            for (int e : tup) {
                if (f[e] < 0) {
                    inside = false;
                    break;
                }
                img.push_back(f[e]);
            }
            if (inside && ! idx.contains(int(s), img))
                return false;
        }
    return true;
}

inline constexpr std::size_t default_hom_cap = 1000000;

// Backtracking search with forward checking over the elements of x in the
// given order. Fixed values (pre[pos] >= 0) restrict positions to one value.
class HomSearch
{
public:
    HomSearch(const RelStructure & a, const RelationIndex & idx, const std::vector<int> & x) :
        idx_(idx), x_(x), q_(idx.template_size())
    {
        std::vector<int> pos(a.size(), -1);
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (pos[x[i]] >= 0)
                throw std::invalid_argument("repeated element in hom domain");
            pos[x[i]] = int(i);
        }
        by_pos_.resize(x.size());
        for (std::size_t s = 0; s < a.relations.size(); ++s)
            for (auto & t : a.relations[s]) {
                Con c;
                c.symbol = int(s);
                bool inside = true;
                for (int e : t) {
                    if (pos[e] < 0) {
                        inside = false;
                        break;
                    }
                    c.pos.push_back(pos[e]);
                }
                if (! inside)
                    continue;
                int id = int(cons_.size());
                cons_.push_back(std::move(c));
                for (int p : cons_.back().pos)
                    if (by_pos_[p].empty() || by_pos_[p].back() != id)
                        by_pos_[p].push_back(id);
            }
    }

    // Calls visit(values) for every homomorphism in lexicographic order; visit
    // returns false to stop. Returns false when stopped early.
    template <typename Visit>
    auto run(Visit && visit, std::vector<int> pre = {}) -> bool
    {
        const std::size_t n = x_.size();
        const std::uint64_t full = q_ == 64 ? ~0ULL : ((1ULL << q_) - 1);
        std::vector<std::uint64_t> dom(n, full);
        if (! pre.empty())
            for (std::size_t i = 0; i < n; ++i)
                if (pre[i] >= 0)
                    dom[i] = 1ULL << pre[i];
        vals_.assign(n, -1);
        if (n == 0)
            return visit(vals_);
        // Unary and fully-fixed constraints are enforced by the first propagation.
        for (std::size_t i = 0; i < n; ++i)
            if (! prune_from(int(i), dom, true))
                return true;
        bool stopped = false;
        recurse(0, dom, visit, stopped);
        return ! stopped;
    }

    auto domain() const -> const std::vector<int> & { return x_; }

    // Search nodes beyond the limit raise BudgetExceeded; 0 means unlimited.
    auto set_node_limit(std::size_t limit) -> void { node_limit_ = limit; }
    auto nodes() const -> std::size_t { return nodes_; }

private:
    struct Con
    {
        int symbol;
        std::vector<int> pos;
    };

    // Filters domains of positions that become the last unassigned one in a
    // constraint touching p. With initial set, only constraints whose
    // positions are all single-valued or have one free position are used.
    auto prune_from(int p, std::vector<std::uint64_t> & dom, bool initial) -> bool
    {
        Tuple img;
        for (int cid : by_pos_[p]) {
            auto & c = cons_[cid];
            int free_pos = -1;
            bool several = false;
            for (int r : c.pos) {
                bool fixed = initial ? (std::popcount(dom[r]) == 1) : (vals_[r] >= 0);
                if (fixed)
                    continue;
                if (free_pos < 0)
                    free_pos = r;
                else if (r != free_pos)
                    several = true;
            }
            if (several)
                continue;
            int free_count = free_pos < 0 ? 0 : 1;
            auto value_of = [&](int r) {
                return initial ? std::countr_zero(dom[r]) : vals_[r];
            };
            if (free_count == 0) {
                img.clear();
                for (int r : c.pos)
                    img.push_back(value_of(r));
                if (! idx_.contains(c.symbol, img))
                    return false;
                continue;
            }
            std::uint64_t keep = 0;
            for (std::uint64_t bits = dom[free_pos]; bits; bits &= bits - 1) {
                int v = std::countr_zero(bits);
                img.clear();
                for (int r : c.pos)
                    img.push_back(r == free_pos ? v : value_of(r));
                if (idx_.contains(c.symbol, img))
                    keep |= 1ULL << v;
            }
            dom[free_pos] = keep;
            if (! keep)
                return false;
        }
        return true;
    }

    template <typename Visit>
    auto recurse(std::size_t i, const std::vector<std::uint64_t> & dom, Visit & visit, bool & stopped) -> void
    {
        if (i == x_.size()) {
            if (! visit(vals_))
                stopped = true;
            return;
        }
        for (std::uint64_t bits = dom[i]; bits && ! stopped; bits &= bits - 1) {
            if (++nodes_ > node_limit_ && node_limit_ != 0)
                throw BudgetExceeded("hom search node limit");
            int v = std::countr_zero(bits);
            vals_[i] = v;
            auto next = dom;
            next[i] = 1ULL << v;
            if (prune_from(int(i), next, false))
                recurse(i + 1, next, visit, stopped);
        }
        vals_[i] = -1;
    }

    const RelationIndex & idx_;
    std::vector<int> x_;
    int q_;
    std::vector<Con> cons_;
    std::vector<std::vector<int>> by_pos_;
    std::vector<int> vals_;
    std::size_t node_limit_ = 0, nodes_ = 0;
};

// All homomorphisms A[X] -> T as value vectors aligned with x, in
// lexicographic order of (x order, template order).
inline auto enumerate_homs(const RelStructure & a, const RelationIndex & idx, const std::vector<int> & x,
    std::size_t cap = default_hom_cap) -> std::vector<std::vector<int>>
{
    std::vector<std::vector<int>> out;
    HomSearch search(a, idx, x);
    search.run([&](const std::vector<int> & v) {
        if (out.size() >= cap)
            throw HomOverflow(cap);
        out.push_back(v);
        return true;
    });
    return out;
}

inline auto enumerate_homs(const RelStructure & a, const RelStructure & t, const std::vector<int> & x,
    std::size_t cap = default_hom_cap) -> std::vector<std::vector<int>>
{
    check_compatible(a, t);
    RelationIndex idx(t);
    return enumerate_homs(a, idx, x, cap);
}

inline auto all_elements(const RelStructure & a) -> std::vector<int>
{
    std::vector<int> x(a.size());
    for (int i = 0; i < a.size(); ++i)
        x[i] = i;
    return x;
}

// First homomorphism extending the fixed values, if any.
inline auto find_hom(const RelStructure & a, const RelationIndex & idx, const std::vector<int> & x,
    const std::vector<int> & pre = {}) -> std::optional<std::vector<int>>
{
    std::optional<std::vector<int>> found;
    HomSearch search(a, idx, x);
    search.run([&](const std::vector<int> & v) {
        found = v;
        return false;
    }, pre);
    return found;
}

struct Hypergraph
{
    int n = 0;
    std::vector<std::vector<int>> edges;
    std::vector<std::vector<int>> incident;

    auto build_incidence() -> void
    {
        incident.assign(n, {});
        for (std::size_t e = 0; e < edges.size(); ++e)
            for (int v : edges[e])
                incident[v].push_back(int(e));
    }

    auto m() const -> int { return int(edges.size()); }

    // Common edge size, or 0 when the edges differ in size.
    auto uniformity() const -> int
    {
        if (edges.empty())
            return 0;
        auto t = edges[0].size();
        for (auto & e : edges)
            if (e.size() != t)
                return 0;
        return int(t);
    }

    auto degree(int v) const -> int { return int(incident[v].size()); }
};

inline auto make_hypergraph(int n, std::vector<std::vector<int>> edges) -> Hypergraph
{
    Hypergraph h;
    h.n = n;
    for (auto & e : edges) {
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    h.edges = std::move(edges);
    h.build_incidence();
    return h;
}

// One edge per distinct tuple vertex set, across all symbols.
inline auto hypergraph_of(const RelStructure & a) -> Hypergraph
{
    for (auto & sym : a.signature.symbols)
        if (sym.arity != a.signature.symbols.front().arity)
            throw std::invalid_argument("hypergraph needs a uniform signature");
    std::vector<std::vector<int>> edges;
    for (auto & r : a.relations)
        for (auto & t : r)
            edges.push_back(t);
    return make_hypergraph(a.size(), std::move(edges));
}

}
