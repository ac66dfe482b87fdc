#pragma once

#include "csplab/numeric.hpp"
#include "csplab/polynomial.hpp"
#include "csplab/verdict.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <optional>
#include <unordered_map>
#include <vector>

namespace csplab {

struct PcBudget
{
    std::size_t max_columns = 200000;
    std::size_t max_basis = 200000;
};

struct PcResult
{
    // Pass: 1 is derivable; Fail: it is not; Unverified: budget exhausted.
    Verdict derivable = Verdict::Unverified;
    std::size_t basis_size = 0;
    std::size_t columns = 0;
    std::size_t skipped_axioms = 0;
};

namespace detail {

    inline auto binomial_sum(std::size_t n, int d) -> double
    {
        double total = 0, c = 1;
        for (int k = 0; k <= d && std::size_t(k) <= n; ++k) {
            total += c;
            c = c * double(n - k) / double(k + 1);
        }
        return total;
    }

    using SparseRow = std::vector<std::pair<int, Rat>>;

    // a - c * b for rows sorted by column.
    inline auto axpy(const SparseRow & a, const Rat & c, const SparseRow & b) -> SparseRow
    {
        SparseRow out;
        out.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
                out.push_back(a[i++]);
            else if (i == a.size() || b[j].first < a[i].first) {
                out.emplace_back(b[j].first, -c * b[j].second);
                ++j;
            }
            else {
                Rat v = a[i].second - c * b[j].second;
                if (v != 0)
                    out.emplace_back(a[i].first, std::move(v));
                ++i;
                ++j;
            }
        }
        return out;
    }

}

// Decides whether 1 has a degree-D polynomial-calculus derivation from P with
// the Boolean axioms. Works in the multilinear quotient: W starts as the span
// of the axioms of degree <= D and is closed under multiplying elements of
// degree <= D - 1 by a variable. Columns are ordered by degree first so that
// basis rows of degree <= D - 1 span all of W in that degree range.
inline auto pc_derivable_in_degree(const std::vector<Polynomial> & axioms, int d, const PcBudget & budget = {})
    -> PcResult
{
    PcResult res;
    std::vector<VarId> vars;
    for (auto & p : axioms)
        for (auto & [m, c] : p)
            vars.insert(vars.end(), m.begin(), m.end());
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    const std::size_t n = vars.size();
    if (detail::binomial_sum(n, d) > double(budget.max_columns)) {
        res.derivable = Verdict::Unverified;
        return res;
    }
    // Columns: degree d first, constant monomial last.
    std::vector<Monomial> cols;
    std::unordered_map<Monomial, int, MonomialHash> col_of;
    for (int deg = d; deg >= 0; --deg) {
        if (std::size_t(deg) > n)
            continue;
        std::vector<int> pick(deg);
        for (int i = 0; i < deg; ++i)
            pick[i] = i;
        for (;;) {
            Monomial m;
            for (int i : pick)
                m.push_back(vars[i]);
            col_of.emplace(m, int(cols.size()));
            cols.push_back(std::move(m));
            int i = deg - 1;
            while (i >= 0 && pick[i] == int(n) - deg + i)
                --i;
            if (i < 0)
                break;
            ++pick[i];
            for (int j = i + 1; j < deg; ++j)
                pick[j] = pick[j - 1] + 1;
        }
    }
    res.columns = cols.size();
    const int one_col = int(cols.size()) - 1;

    std::vector<std::optional<detail::SparseRow>> pivot(cols.size());
    std::deque<int> queue;
    std::size_t basis = 0;
    bool found = false;

    auto insert = [&](detail::SparseRow row) {
        while (! row.empty()) {
            int lead = row.front().first;
            if (! pivot[lead])
                break;
            Rat c = row.front().second;
            row = detail::axpy(row, c, *pivot[lead]);
        }
        if (row.empty())
            return;
        Rat lc = row.front().second;
        for (auto & [col, v] : row)
            v /= lc;
        int lead = row.front().first;
        if (++basis > budget.max_basis)
            throw BudgetExceeded("polynomial calculus basis budget exhausted");
        pivot[lead] = std::move(row);
        if (lead == one_col)
            found = true;
        if (int(cols[lead].size()) <= d - 1)
            queue.push_back(lead);
    };

    auto to_row = [&](const Polynomial & p) {
        detail::SparseRow row;
        for (auto & [m, c] : p)
            row.emplace_back(col_of.at(m), c);
        std::sort(row.begin(), row.end(), [](auto & a, auto & b) { return a.first < b.first; });
        return row;
    };

    try {
        for (auto & p : axioms) {
            if (degree(p) > d) {
                ++res.skipped_axioms;
                continue;
            }
            insert(to_row(p));
            if (found)
                break;
        }
        while (! found && ! queue.empty()) {
            int lead = queue.front();
            queue.pop_front();
            auto base = *pivot[lead];
            for (auto & x : vars) {
                Polynomial prod;
                for (auto & [col, c] : base)
                    add_term(prod, times_var(cols[col], x), c);
                insert(to_row(prod));
                if (found)
                    break;
            }
        }
    }
    catch (const BudgetExceeded &) {
        res.derivable = Verdict::Unverified;
        res.basis_size = basis;
        return res;
    }
    res.basis_size = basis;
    res.derivable = found ? Verdict::Pass : Verdict::Fail;
    return res;
}

struct RefutationDegree
{
    // Pass: refuted at `degree`; Fail: no refutation up to `degree` (a lower
    // bound of degree + 1); Unverified: budget ran out at `degree`.
    Verdict verdict = Verdict::Unverified;
    int degree = 0;
    std::size_t basis_size = 0;
    double elapsed_ms = 0;
};

// Least D in [1, max_degree] with a degree-D refutation.
inline auto min_refutation_degree(const std::vector<Polynomial> & axioms, int max_degree, const PcBudget & budget = {})
    -> RefutationDegree
{
    auto start = std::chrono::steady_clock::now();
    RefutationDegree out;
    for (int d = 1; d <= max_degree; ++d) {
        auto r = pc_derivable_in_degree(axioms, d, budget);
        out.basis_size = r.basis_size;
        out.degree = d;
        if (r.derivable == Verdict::Pass) {
            out.verdict = Verdict::Pass;
            break;
        }
        if (r.derivable == Verdict::Unverified) {
            out.verdict = Verdict::Unverified;
            break;
        }
        out.verdict = Verdict::Fail;
    }
    out.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return out;
}

}
