#pragma once

// Independent reference computations used only by the tests.

#include "csplab/boolean_ideal.hpp"
#include "csplab/numeric.hpp"
#include "csplab/polynomial.hpp"
#include "csplab/rng.hpp"

#include <map>
#include <optional>
#include <vector>

namespace oracle {

using namespace csplab;

// Point set with universe x_{0,0} .. x_{n-1,0} (one value per element) so that
// the input order ranks coordinate 0 largest.
inline auto random_point_set(int n, CounterRng & rng) -> PointSetIdeal
{
    PointSetIdeal v;
    for (int i = 0; i < n; ++i)
        v.universe.push_back({i, 0});
    for (std::uint64_t bits = 0; bits < (1ULL << n); ++bits)
        if (rng.below(2)) {
            std::vector<std::uint8_t> p(n);
            for (int i = 0; i < n; ++i)
                p[i] = (bits >> i) & 1;
            v.points.push_back(std::move(p));
        }
    return v;
}

inline auto all_monomials(const std::vector<VarId> & universe) -> std::vector<Monomial>
{
    std::vector<Monomial> out;
    const std::size_t n = universe.size();
    for (std::uint64_t bits = 0; bits < (1ULL << n); ++bits) {
        std::vector<VarId> vars;
        for (std::size_t i = 0; i < n; ++i)
            if ((bits >> i) & 1)
                vars.push_back(universe[i]);
        out.push_back(make_monomial(std::move(vars)));
    }
    return out;
}

inline auto evaluation(const PointSetIdeal & v, const Monomial & m) -> std::vector<Rat>
{
    std::vector<Rat> col;
    for (auto & p : v.points) {
        bool on = true;
        for (auto & x : m) {
            auto pos = std::find(v.universe.begin(), v.universe.end(), x) - v.universe.begin();
            if (! p[pos])
                on = false;
        }
        col.push_back(on ? 1 : 0);
    }
    return col;
}

// Incremental echelon basis over Q.
class Span
{
public:
    // True when the vector was independent (and is now added).
    auto add(std::vector<Rat> v) -> bool
    {
        for (auto & [lead, row] : rows_) {
            if (v[lead] != 0) {
                Rat c = v[lead] / row[lead];
                for (std::size_t i = 0; i < v.size(); ++i)
                    v[i] -= c * row[i];
            }
        }
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) {
                rows_.emplace_back(i, std::move(v));
                return true;
            }
        return false;
    }

private:
    std::vector<std::pair<std::size_t, std::vector<Rat>>> rows_;
};

// Reducibility of every multilinear monomial by Gaussian elimination: m is
// reducible iff its evaluation vector lies in the span of those of the
// monomials below it.
inline auto elimination_reducible(const PointSetIdeal & v, const LexOrder & ord) -> std::map<Monomial, bool>
{
    auto monos = all_monomials(v.universe);
    std::sort(monos.begin(), monos.end(), [&](auto & a, auto & b) { return ord.compare(a, b) < 0; });
    std::map<Monomial, bool> out;
    Span span;
    for (auto & m : monos) {
        if (v.points.empty()) {
            out[m] = true;
            continue;
        }
        out[m] = ! span.add(evaluation(v, m));
    }
    return out;
}

// Solves a square nonsingular system over Q by Gauss-Jordan elimination.
inline auto solve_square(std::vector<std::vector<Rat>> a, std::vector<Rat> b) -> std::vector<Rat>
{
    const std::size_t n = a.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0)
            ++p;
        if (p == n)
            throw std::runtime_error("singular system");
        std::swap(a[p], a[c]);
        std::swap(b[p], b[c]);
        for (std::size_t r = 0; r < n; ++r)
            if (r != c && a[r][c] != 0) {
                Rat f = a[r][c] / a[c][c];
                for (std::size_t k = c; k < n; ++k)
                    a[r][k] -= f * a[c][k];
                b[r] -= f * b[c];
            }
    }
    std::vector<Rat> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = b[i] / a[i][i];
    return x;
}

// Reduction by solving the square evaluation system over the standard monomials.
inline auto interpolation_by_system(const PointSetIdeal & v, const Monomial & m, const LexOrder & ord) -> Polynomial
{
    if (v.points.empty())
        return {};
    auto red = elimination_reducible(v, ord);
    std::vector<Monomial> basis;
    for (auto & [mono, r] : red)
        if (! r)
            basis.push_back(mono);
    std::vector<std::vector<Rat>> a(v.points.size(), std::vector<Rat>(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j) {
        auto col = evaluation(v, basis[j]);
        for (std::size_t i = 0; i < col.size(); ++i)
            a[i][j] = col[i];
    }
    auto x = solve_square(a, evaluation(v, m));
    Polynomial out;
    for (std::size_t j = 0; j < basis.size(); ++j)
        add_term(out, basis[j], x[j]);
    return out;
}

// Normal form by repeatedly replacing the largest reducible monomial by the
// lower part of its strategy polynomial.
inline auto reduce_by_strategies(const PointSetIdeal & v, const Monomial & m, const LexOrder & ord) -> Polynomial
{
    PackedPoints P(v, ord);
    Polynomial cur = monomial_poly(m);
    for (int guard = 0; guard < 100000; ++guard) {
        const Monomial * target = nullptr;
        for (auto & [mono, c] : cur)
            if (lex_reducible(P, mono) && (! target || ord.compare(mono, *target) > 0))
                target = &mono;
        if (! target)
            return cur;
        Monomial t = *target;
        Rat c = cur.at(t);
        auto p = strategy_polynomial(P, t);
        if (! p)
            throw std::runtime_error("reducible monomial without strategy");
        Rat lc = p->at(t);
        cur = cur - scale(*p, c / lc);
    }
    throw std::runtime_error("strategy reduction did not terminate");
}

}
