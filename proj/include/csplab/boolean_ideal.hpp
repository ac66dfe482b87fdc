#pragma once

#include "csplab/numeric.hpp"
#include "csplab/polynomial.hpp"
#include "csplab/relational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace csplab {

// A set V of 0/1 points over a finite universe of variables; the ideal is I(V).
struct PointSetIdeal
{
    std::vector<VarId> universe;
    std::vector<std::vector<std::uint8_t>> points;
};

// V = {indicator of phi : phi in hom(A[X], T)} over {x_{a,i} : a in X, i in T}.
inline auto hom_point_set(const RelStructure & a, const RelationIndex & idx, const std::vector<int> & x,
    std::size_t cap = default_hom_cap) -> PointSetIdeal
{
    PointSetIdeal v;
    const int q = idx.template_size();
    for (int e : x)
        for (int i = 0; i < q; ++i)
            v.universe.push_back({e, i});
    for (auto & h : enumerate_homs(a, idx, x, cap)) {
        std::vector<std::uint8_t> p(v.universe.size(), 0);
        for (std::size_t j = 0; j < h.size(); ++j)
            p[j * q + h[j]] = 1;
        v.points.push_back(std::move(p));
    }
    return v;
}

inline auto hom_point_set(const RelStructure & a, const RelStructure & t, const std::vector<int> & x,
    std::size_t cap = default_hom_cap) -> PointSetIdeal
{
    check_compatible(a, t);
    RelationIndex idx(t);
    return hom_point_set(a, idx, x, cap);
}

// Points packed with coordinate 0 = largest variable, stored at the most
// significant bit, so word-wise comparison is lexicographic. Sorted, distinct.
class PackedPoints
{
public:
    PackedPoints(const PointSetIdeal & v, const LexOrder & ord)
    {
        coords_ = v.universe;
        ord.sort_desc(coords_);
        n_ = int(coords_.size());
        words_ = std::max(1, (n_ + 63) / 64);
        std::vector<int> where(v.universe.size());
        for (std::size_t j = 0; j < v.universe.size(); ++j)
            where[j] = int(std::find(coords_.begin(), coords_.end(), v.universe[j]) - coords_.begin());
        std::vector<std::vector<std::uint64_t>> rows;
        for (auto & p : v.points) {
            if (p.size() != v.universe.size())
                throw std::invalid_argument("point has the wrong dimension");
            std::vector<std::uint64_t> w(words_, 0);
            for (std::size_t j = 0; j < p.size(); ++j)
                if (p[j]) {
                    int c = where[j];
                    w[c / 64] |= 1ULL << (63 - c % 64);
                }
            rows.push_back(std::move(w));
        }
        std::sort(rows.begin(), rows.end());
        rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
        count_ = rows.size();
        data_.reserve(count_ * words_);
        for (auto & r : rows)
            data_.insert(data_.end(), r.begin(), r.end());
    }

    auto dimension() const -> int { return n_; }
    auto size() const -> std::size_t { return count_; }
    auto words() const -> int { return words_; }
    auto coords() const -> const std::vector<VarId> & { return coords_; }
    auto point(std::size_t i) const -> const std::uint64_t * { return data_.data() + i * words_; }

    static auto bit(const std::uint64_t * p, int c) -> bool { return (p[c / 64] >> (63 - c % 64)) & 1ULL; }

    // Compares coordinates [from, n).
    auto cmp_suffix(const std::uint64_t * a, const std::uint64_t * b, int from) const -> int
    {
        int w0 = from / 64;
        std::uint64_t mask = (from % 64 == 0) ? ~0ULL : (~0ULL >> (from % 64));
        for (int w = w0; w < words_; ++w) {
            std::uint64_t x = a[w], y = b[w];
            if (w == w0) {
                x &= mask;
                y &= mask;
            }
            if (x != y)
                return x < y ? -1 : 1;
        }
        return 0;
    }

    // Compares coordinates [0, len).
    auto cmp_prefix(const std::uint64_t * a, const std::uint64_t * b, int len) const -> int
    {
        for (int w = 0; w * 64 < len; ++w) {
            std::uint64_t x = a[w], y = b[w];
            int keep = std::min(64, len - w * 64);
            if (keep < 64) {
                std::uint64_t mask = ~0ULL << (64 - keep);
                x &= mask;
                y &= mask;
            }
            if (x != y)
                return x < y ? -1 : 1;
        }
        return 0;
    }

    // Coordinate index of a variable, or -1.
    auto coord_of(VarId x) const -> int
    {
        for (int c = 0; c < n_; ++c)
            if (coords_[c] == x)
                return c;
        return -1;
    }

    auto coords_of(const Monomial & m) const -> std::vector<int>
    {
        std::vector<int> cs;
        for (auto & x : m) {
            int c = coord_of(x);
            if (c < 0)
                throw std::invalid_argument("monomial mentions a variable outside the universe");
            cs.push_back(c);
        }
        std::sort(cs.begin(), cs.end());
        return cs;
    }

private:
    std::vector<VarId> coords_;
    int n_ = 0;
    int words_ = 1;
    std::size_t count_ = 0;
    std::vector<std::uint64_t> data_;
};

namespace detail {

    using Ptrs = std::vector<const std::uint64_t *>;

    // Splits a list sorted on [c, n) into bit c = 0 and bit c = 1 parts.
    inline auto split_at(const Ptrs & pts, int c) -> std::size_t
    {
        std::size_t s = 0;
        while (s < pts.size() && ! PackedPoints::bit(pts[s], c))
            ++s;
        return s;
    }

    // Splits a list sorted on [0, c) by coordinate c - 1 into two lists sorted on [0, c - 1).
    inline auto split_last(const Ptrs & pts, int c) -> std::pair<Ptrs, Ptrs>
    {
        std::pair<Ptrs, Ptrs> out;
        for (auto p : pts)
            (PackedPoints::bit(p, c - 1) ? out.second : out.first).push_back(p);
        return out;
    }

    struct Overflow
    {
    };

    inline auto checked_sub(std::int64_t a, std::int64_t b) -> std::int64_t
    {
        std::int64_t r;
        if (__builtin_sub_overflow(a, b, &r))
            throw Overflow{};
        return r;
    }

    inline auto checked_add(std::int64_t a, std::int64_t b) -> std::int64_t
    {
        std::int64_t r;
        if (__builtin_add_overflow(a, b, &r))
            throw Overflow{};
        return r;
    }

    inline auto checked_sub(const Int & a, const Int & b) -> Int { return a - b; }
    inline auto checked_add(const Int & a, const Int & b) -> Int { return a + b; }

    template <typename V>
    using Terms = std::vector<std::pair<std::vector<int>, V>>;

    template <typename V>
    auto eval_terms(const Terms<V> & terms, const std::uint64_t * p) -> V
    {
        V s = 0;
        for (auto & [cs, coef] : terms) {
            bool on = true;
            for (int c : cs)
                if (! PackedPoints::bit(p, c)) {
                    on = false;
                    break;
                }
            if (on)
                s = checked_add(s, coef);
        }
        return s;
    }

    // The unique combination of standard monomials of I(W) (coordinates >= c)
    // that agrees with g on W. Splitting on the largest remaining variable x_c:
    // r = a + x_c * b with b interpolating g1 - g0 on W0 ∩ W1 and a interpolating
    // g0 on W0 and g1 - b on W1 \ W0, over W0 ∪ W1.
    template <typename V>
    auto interpolate(const PackedPoints & P, int c, const Ptrs & pts, const std::vector<V> & g) -> Terms<V>
    {
        if (pts.empty())
            return {};
        if (c == P.dimension()) {
            if (g[0] == 0)
                return {};
            return {{{}, g[0]}};
        }
        const std::size_t s = split_at(pts, c);
        Ptrs inter;
        std::vector<V> diff;
        std::vector<int> match1(pts.size() - s, -1);
        {
            std::size_t i = 0, j = s;
            while (i < s && j < pts.size()) {
                int cmp = P.cmp_suffix(pts[i], pts[j], c + 1);
                if (cmp == 0) {
                    inter.push_back(pts[i]);
                    diff.push_back(checked_sub(g[j], g[i]));
                    match1[j - s] = int(i);
                    ++i;
                    ++j;
                }
                else if (cmp < 0)
                    ++i;
                else
                    ++j;
            }
        }
        auto b = interpolate<V>(P, c + 1, inter, diff);
        Ptrs uni;
        std::vector<V> h;
        {
            std::size_t i = 0, j = s;
            while (i < s || j < pts.size()) {
                int cmp;
                if (i == s)
                    cmp = 1;
                else if (j == pts.size())
                    cmp = -1;
                else
                    cmp = P.cmp_suffix(pts[i], pts[j], c + 1);
                if (cmp <= 0) {
                    uni.push_back(pts[i]);
                    h.push_back(g[i]);
                    ++i;
                    if (cmp == 0)
                        ++j;
                }
                else {
                    uni.push_back(pts[j]);
                    h.push_back(checked_sub(g[j], eval_terms(b, pts[j])));
                    ++j;
                }
            }
        }
        auto a = interpolate<V>(P, c + 1, uni, h);
        for (auto & [cs, coef] : b) {
            std::vector<int> with;
            with.reserve(cs.size() + 1);
            with.push_back(c);
            with.insert(with.end(), cs.begin(), cs.end());
            a.emplace_back(std::move(with), std::move(coef));
        }
        return a;
    }

    inline auto all_points(const PackedPoints & P) -> Ptrs
    {
        Ptrs pts;
        for (std::size_t i = 0; i < P.size(); ++i)
            pts.push_back(P.point(i));
        return pts;
    }

    inline auto to_monomial(const PackedPoints & P, const std::vector<int> & cs) -> Monomial
    {
        std::vector<VarId> vars;
        for (int c : cs)
            vars.push_back(P.coords()[c]);
        return make_monomial(std::move(vars));
    }

    template <typename V>
    auto interpolate_values(const PackedPoints & P, const std::vector<V> & g) -> Polynomial
    {
        auto terms = interpolate<V>(P, 0, all_points(P), g);
        Polynomial out;
        for (auto & [cs, coef] : terms) {
            Rat r;
            if constexpr (std::is_same_v<V, std::int64_t>)
                r = Rat(Int(static_cast<long>(coef)));
            else
                r = Rat(coef);
            add_term(out, to_monomial(P, cs), r);
        }
        return out;
    }

}

// Interpolates an integer-valued function on V (g[i] at P.point(i)) in the
// standard-monomial basis of I(V).
inline auto interpolate_function(const PackedPoints & P, const std::vector<Int> & g) -> Polynomial
{
    if (g.size() != P.size())
        throw std::invalid_argument("one value per point expected");
    std::vector<std::int64_t> small;
    bool fits = true;
    for (auto & v : g) {
        if (! v.fits_slong_p()) {
            fits = false;
            break;
        }
        small.push_back(v.get_si());
    }
    if (fits) {
        try {
            return detail::interpolate_values<std::int64_t>(P, small);
        }
        catch (const detail::Overflow &) {
        }
    }
    return detail::interpolate_values<Int>(P, g);
}

// R_{I(V)}(m): the standard-monomial combination agreeing with m on V.
inline auto reduce(const PackedPoints & P, const Monomial & m) -> Polynomial
{
    auto cs = P.coords_of(m);
    std::vector<std::int64_t> g(P.size(), 0);
    for (std::size_t i = 0; i < P.size(); ++i) {
        bool on = true;
        for (int c : cs)
            if (! PackedPoints::bit(P.point(i), c)) {
                on = false;
                break;
            }
        g[i] = on ? 1 : 0;
    }
    try {
        return detail::interpolate_values<std::int64_t>(P, g);
    }
    catch (const detail::Overflow &) {
        std::vector<Int> big(g.begin(), g.end());
        return detail::interpolate_values<Int>(P, big);
    }
}

inline auto reduce(const PointSetIdeal & v, const Monomial & m, const LexOrder & ord) -> Polynomial
{
    return reduce(PackedPoints(v, ord), m);
}

// Linear extension of reduction to polynomials.
inline auto reduce_poly(const PackedPoints & P, const Polynomial & p) -> Polynomial
{
    Polynomial out;
    for (auto & [m, c] : p)
        out = out + scale(reduce(P, m), c);
    return out;
}

namespace detail {

    using MonoSet = std::vector<std::vector<int>>;

    // Standard monomials by the game recursion on the smallest variable:
    // x_{c-1} may be absent if Stan survives one branch, present if he survives both.
    inline auto standard_rec(const PackedPoints & P, int c, const Ptrs & pts) -> MonoSet
    {
        if (pts.empty())
            return {};
        if (c == 0)
            return {{}};
        auto [v0, v1] = split_last(pts, c);
        auto s0 = standard_rec(P, c - 1, v0);
        auto s1 = standard_rec(P, c - 1, v1);
        MonoSet uni, inter;
        std::set_union(s0.begin(), s0.end(), s1.begin(), s1.end(), std::back_inserter(uni));
        std::set_intersection(s0.begin(), s0.end(), s1.begin(), s1.end(), std::back_inserter(inter));
        for (auto & m : inter) {
            m.push_back(c - 1);
            uni.push_back(std::move(m));
        }
        std::sort(uni.begin(), uni.end());
        return uni;
    }

    class LexGame
    {
    public:
        LexGame(const PackedPoints & P, const std::vector<int> & coords) : P_(P), in_m_(P.dimension(), 0)
        {
            for (int c : coords)
                in_m_[c] = 1;
        }

        // Residual: points consistent with Stan's answers on coordinates >= c,
        // compared on [0, c). Rounds run from the smallest variable upward.
        auto lea_wins(int c, const Ptrs & residual) -> bool
        {
            if (residual.empty())
                return true;
            if (c == 0)
                return false;
            auto key = make_key(c, residual);
            auto it = memo_.find(key);
            if (it != memo_.end())
                return it->second;
            auto [r0, r1] = split_last(residual, c);
            bool win;
            if (in_m_[c - 1])
                win = lea_wins(c - 1, r0) || lea_wins(c - 1, r1);
            else
                win = lea_wins(c - 1, r0) && lea_wins(c - 1, r1);
            memo_.emplace(std::move(key), win);
            return win;
        }

        // Lea's guess at coordinate c - 1 (exponent 1): she blocks the value whose
        // complement branch she wins; 0 blocks Stan from answering 0.
        auto guess(int c, const Ptrs & residual) -> int
        {
            auto [r0, r1] = split_last(residual, c);
            return lea_wins(c - 1, r1) ? 0 : 1;
        }

        auto in_m(int c) const -> bool { return in_m_[c] != 0; }

    private:
        auto make_key(int c, const Ptrs & residual) const -> std::vector<std::uint64_t>
        {
            std::vector<std::uint64_t> key;
            key.push_back(std::uint64_t(c));
            int w = (c + 63) / 64;
            for (auto p : residual)
                for (int i = 0; i < w; ++i) {
                    std::uint64_t x = p[i];
                    int keep = std::min(64, c - i * 64);
                    if (keep < 64)
                        x &= ~0ULL << (64 - keep);
                    key.push_back(x);
                }
            return key;
        }

        const PackedPoints & P_;
        std::vector<char> in_m_;
        std::map<std::vector<std::uint64_t>, bool> memo_;
    };

}

// Decides reducibility of m modulo I(V) by solving the lex game.
inline auto lex_reducible(const PackedPoints & P, const Monomial & m) -> bool
{
    detail::LexGame game(P, P.coords_of(m));
    return game.lea_wins(P.dimension(), detail::all_points(P));
}

inline auto lex_reducible(const PointSetIdeal & v, const Monomial & m, const LexOrder & ord) -> bool
{
    return lex_reducible(PackedPoints(v, ord), m);
}

// All multilinear monomials irreducible modulo I(V) of degree <= max_degree.
inline auto standard_monomials(const PackedPoints & P, int max_degree = -1) -> std::vector<Monomial>
{
    auto sets = detail::standard_rec(P, P.dimension(), detail::all_points(P));
    std::vector<Monomial> out;
    for (auto & cs : sets)
        if (max_degree < 0 || int(cs.size()) <= max_degree)
            out.push_back(detail::to_monomial(P, cs));
    std::sort(out.begin(), out.end());
    return out;
}

inline auto standard_monomials(const PointSetIdeal & v, const LexOrder & ord, int max_degree = -1)
    -> std::vector<Monomial>
{
    return standard_monomials(PackedPoints(v, ord), max_degree);
}

// The polynomial prod_{x_i in m} (x_i - f_i) built from Lea's winning strategy,
// where f_i is the indicator sum of her 0/1 guesses over Stan's earlier answers.
// It lies in I(V), has leading monomial m and integer coefficients. Empty when
// Lea has no winning strategy. Expands indicator products, so meant for small n.
inline auto strategy_polynomial(const PackedPoints & P, const Monomial & m) -> std::optional<Polynomial>
{
    const int n = P.dimension();
    auto cs = P.coords_of(m);
    detail::LexGame game(P, cs);
    auto all = detail::all_points(P);
    if (! game.lea_wins(n, all))
        return std::nullopt;
    // guesses[c]: suffix answers (coordinates c+1..n-1) on which Lea guesses 1.
    std::vector<std::vector<std::vector<int>>> ones(n);
    std::vector<int> answers(n, -1);
    auto walk = [&](auto && self, int c, const detail::Ptrs & residual) -> void {
        if (residual.empty() || c == 0)
            return;
        auto [r0, r1] = detail::split_last(residual, c);
        if (game.in_m(c - 1)) {
            int g = game.guess(c, residual);
            if (g == 1) {
                std::vector<int> suffix(answers.begin() + c, answers.end());
                ones[c - 1].push_back(std::move(suffix));
            }
            answers[c - 1] = 1 - g;
            self(self, c - 1, g == 1 ? r0 : r1);
        }
        else {
            answers[c - 1] = 0;
            self(self, c - 1, r0);
            answers[c - 1] = 1;
            self(self, c - 1, r1);
        }
        answers[c - 1] = -1;
    };
    walk(walk, n, all);
    const auto & coords = P.coords();
    Polynomial p = constant(1);
    for (int c : cs) {
        Polynomial f;
        for (auto & suffix : ones[c]) {
            Polynomial ind = constant(1);
            for (std::size_t j = 0; j < suffix.size(); ++j) {
                VarId x = coords[c + 1 + j];
                if (suffix[j] == 1)
                    ind = times_var(ind, x);
                else
                    ind = ind - times_var(ind, x);
            }
            f = f + ind;
        }
        p = p * (monomial_poly({coords[c]}) - f);
    }
    return p;
}

inline auto strategy_polynomial(const PointSetIdeal & v, const Monomial & m, const LexOrder & ord)
    -> std::optional<Polynomial>
{
    return strategy_polynomial(PackedPoints(v, ord), m);
}

}
