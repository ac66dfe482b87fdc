#pragma once

#include "csplab/numeric.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace csplab {

// x_{a,i}: instance element a takes template value i.
struct VarId
{
    int elem = 0;
    int val = 0;
    auto operator<=>(const VarId &) const = default;
};

// A multilinear monomial: sorted set of distinct variables. Empty means 1.
using Monomial = std::vector<VarId>;

// Sorts and removes repeats, which applies x^2 = x.
inline auto make_monomial(std::vector<VarId> vars) -> Monomial
{
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

inline auto monomial_product(const Monomial & a, const Monomial & b) -> Monomial
{
    Monomial out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline auto times_var(const Monomial & m, VarId x) -> Monomial
{
    auto it = std::lower_bound(m.begin(), m.end(), x);
    if (it != m.end() && *it == x)
        return m;
    Monomial out;
    out.reserve(m.size() + 1);
    out.insert(out.end(), m.begin(), it);
    out.push_back(x);
    out.insert(out.end(), it, m.end());
    return out;
}

// Distinct instance elements mentioned by m, sorted.
inline auto vertices(const Monomial & m) -> std::vector<int>
{
    std::vector<int> v;
    for (auto & x : m)
        if (v.empty() || v.back() != x.elem)
            v.push_back(x.elem);
    return v;
}

struct MonomialHash
{
    auto operator()(const Monomial & m) const noexcept -> std::size_t
    {
        std::uint64_t h = 0x84222325cbf29ce4ULL;
        for (auto & x : m) {
            h ^= (std::uint64_t(std::uint32_t(x.elem)) << 20) ^ std::uint64_t(std::uint32_t(x.val));
            h *= 0x100000001b3ULL;
            h ^= h >> 29;
        }
        return std::size_t(h);
    }
};

// Zero coefficients are never stored.
using Polynomial = std::map<Monomial, Rat>;

inline auto add_term(Polynomial & p, const Monomial & m, const Rat & c) -> void
{
    if (c == 0)
        return;
    auto [it, fresh] = p.emplace(m, c);
    if (! fresh) {
        it->second += c;
        if (it->second == 0)
            p.erase(it);
    }
}

inline auto constant(const Rat & c) -> Polynomial
{
    Polynomial p;
    add_term(p, {}, c);
    return p;
}

inline auto monomial_poly(const Monomial & m, const Rat & c = 1) -> Polynomial
{
    Polynomial p;
    add_term(p, m, c);
    return p;
}

inline auto operator+(Polynomial a, const Polynomial & b) -> Polynomial
{
    for (auto & [m, c] : b)
        add_term(a, m, c);
    return a;
}

inline auto operator-(Polynomial a, const Polynomial & b) -> Polynomial
{
    for (auto & [m, c] : b)
        add_term(a, m, -c);
    return a;
}

inline auto scale(Polynomial p, const Rat & c) -> Polynomial
{
    if (c == 0)
        return {};
    for (auto & [m, v] : p)
        v *= c;
    return p;
}

// Product in the multilinear quotient (x^2 = x).
inline auto operator*(const Polynomial & a, const Polynomial & b) -> Polynomial
{
    Polynomial out;
    for (auto & [ma, ca] : a)
        for (auto & [mb, cb] : b)
            add_term(out, monomial_product(ma, mb), ca * cb);
    return out;
}

inline auto times_var(const Polynomial & p, VarId x) -> Polynomial
{
    Polynomial out;
    for (auto & [m, c] : p)
        add_term(out, times_var(m, x), c);
    return out;
}

inline auto degree(const Polynomial & p) -> int
{
    int d = -1;
    for (auto & [m, c] : p)
        d = std::max(d, int(m.size()));
    return d;
}

inline auto all_integral(const Polynomial & p) -> bool
{
    for (auto & [m, c] : p)
        if (! is_integral(c))
            return false;
    return true;
}

// Evaluates p at a 0/1 point given as a predicate on variables.
template <typename Point>
auto evaluate(const Polynomial & p, Point && point) -> Rat
{
    Rat s = 0;
    for (auto & [m, c] : p) {
        bool on = true;
        for (auto & x : m)
            if (! point(x)) {
                on = false;
                break;
            }
        if (on)
            s += c;
    }
    return s;
}

// A total order on the variables x_{a,i} of an (instance, template) pair.
// rank is larger for larger variables; monomials compare lexicographically.
class LexOrder
{
public:
    LexOrder() = default;

    LexOrder(int elems, int vals, std::vector<int> rank) : elems_(elems), vals_(vals), rank_(std::move(rank))
    {
        if (int(rank_.size()) != elems_ * vals_)
            throw std::invalid_argument("lex order rank table has the wrong size");
        auto sorted = rank_;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i)
            if (sorted[i] != int(i))
                throw std::invalid_argument("lex order rank table is not a permutation");
    }

    // vars listed from largest to smallest; must cover every variable once.
    static auto from_largest_first(int elems, int vals, const std::vector<VarId> & vars) -> LexOrder
    {
        std::vector<int> rank(std::size_t(elems) * vals, -1);
        int r = int(vars.size());
        for (auto & x : vars) {
            auto & slot = rank.at(std::size_t(x.elem) * vals + x.val);
            if (slot >= 0)
                throw std::invalid_argument("variable listed twice in lex order");
            slot = --r;
        }
        return LexOrder(elems, vals, std::move(rank));
    }

    // x_{e0,0} > x_{e0,1} > ... > x_{e1,0} > ... with elements listed largest first.
    static auto from_elements(int elems, int vals, const std::vector<int> & largest_first) -> LexOrder
    {
        std::vector<VarId> vars;
        for (int e : largest_first)
            for (int i = 0; i < vals; ++i)
                vars.push_back({e, i});
        return from_largest_first(elems, vals, vars);
    }

    static auto input_order(int elems, int vals) -> LexOrder
    {
        std::vector<int> els(elems);
        for (int i = 0; i < elems; ++i)
            els[i] = i;
        return from_elements(elems, vals, els);
    }

    auto rank(VarId x) const -> int { return rank_[std::size_t(x.elem) * vals_ + x.val]; }
    auto greater(VarId a, VarId b) const -> bool { return rank(a) > rank(b); }
    auto elems() const -> int { return elems_; }
    auto vals() const -> int { return vals_; }

    auto largest_first() const -> std::vector<VarId>
    {
        std::vector<VarId> v(rank_.size());
        for (int e = 0; e < elems_; ++e)
            for (int i = 0; i < vals_; ++i)
                v[rank_.size() - 1 - rank({e, i})] = {e, i};
        return v;
    }

    // Sorts variables from largest to smallest.
    auto sort_desc(std::vector<VarId> & v) const -> void
    {
        std::sort(v.begin(), v.end(), [&](VarId a, VarId b) { return greater(a, b); });
    }

    // <0, 0, >0 as a is smaller, equal, larger than b.
    auto compare(const Monomial & a, const Monomial & b) const -> int
    {
        auto da = a, db = b;
        sort_desc(da);
        sort_desc(db);
        for (std::size_t i = 0; i < da.size() && i < db.size(); ++i) {
            int ra = rank(da[i]), rb = rank(db[i]);
            if (ra != rb)
                return ra > rb ? 1 : -1;
        }
        if (da.size() == db.size())
            return 0;
        return da.size() > db.size() ? 1 : -1;
    }

    auto leading(const Polynomial & p) const -> Monomial
    {
        if (p.empty())
            throw std::invalid_argument("zero polynomial has no leading monomial");
        const Monomial * best = nullptr;
        for (auto & [m, c] : p)
            if (! best || compare(m, *best) > 0)
                best = &m;
        return *best;
    }

private:
    int elems_ = 0;
    int vals_ = 0;
    std::vector<int> rank_;
};

}
