#pragma once

#include "csplab/numeric.hpp"
#include "csplab/verdict.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace csplab {

using IntMatrix = std::vector<std::vector<Int>>;
using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

// A U = H with U unimodular and H in column echelon form: pivot column c has
// its first nonzero entry (positive) at row pivot_rows[c], entries to its left
// in that row are reduced into [0, pivot), and columns >= rank are zero.
struct HnfCertificate
{
    IntMatrix h;
    IntMatrix u;
    std::vector<int> pivot_rows;
    int rank = 0;
};

inline auto hermite_column_form(const IntMatrix & a, int cols) -> HnfCertificate
{
    const int m = int(a.size());
    const int n = cols;
    HnfCertificate out;
    out.h = a;
    for (auto & row : out.h)
        if (int(row.size()) != n)
            throw std::invalid_argument("ragged matrix");
    out.u.assign(n, IntVector(n, 0));
    for (int j = 0; j < n; ++j)
        out.u[j][j] = 1;
    auto & h = out.h;
    auto & u = out.u;
    // Column j <- column j + f * column c, in H and U.
    auto add_col = [&](int j, int c, const Int & f) {
        for (int i = 0; i < m; ++i)
            if (h[i][c] != 0)
                h[i][j] += f * h[i][c];
        for (int i = 0; i < n; ++i)
            if (u[i][c] != 0)
                u[i][j] += f * u[i][c];
    };
    // (col c, col j) <- (s c + t j, -b/g c + a/g j); determinant 1.
    auto combine = [&](int c, int j, const Int & s, const Int & t, const Int & bg, const Int & ag) {
        auto apply = [&](IntMatrix & mat, int rows) {
            for (int i = 0; i < rows; ++i) {
                Int x = mat[i][c], y = mat[i][j];
                if (x == 0 && y == 0)
                    continue;
                mat[i][c] = s * x + t * y;
                mat[i][j] = ag * y - bg * x;
            }
        };
        apply(h, m);
        apply(u, n);
    };
    int c = 0;
    for (int i = 0; i < m && c < n; ++i) {
        for (int j = c + 1; j < n; ++j) {
            if (h[i][j] == 0)
                continue;
            Int g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h[i][c].get_mpz_t(), h[i][j].get_mpz_t());
            Int ag = h[i][c] / g, bg = h[i][j] / g;
            combine(c, j, s, t, bg, ag);
        }
        if (h[i][c] == 0)
            continue;
        if (h[i][c] < 0) {
            for (int r = 0; r < m; ++r)
                h[r][c] = -h[r][c];
            for (int r = 0; r < n; ++r)
                u[r][c] = -u[r][c];
        }
        for (int j = 0; j < c; ++j) {
            Int q = floor_div(h[i][j], h[i][c]);
            if (q != 0)
                add_col(j, c, -q);
        }
        out.pivot_rows.push_back(i);
        ++c;
    }
    out.rank = c;
    return out;
}

struct DenseSolveResult
{
    bool feasible = false;
    IntVector x;              // particular solution
    IntMatrix kernel;         // lattice basis of {x : A x = 0}, one vector per entry
    RatVector certificate;    // y with yA integral and yb not integral
    int failing_row = -1;
    HnfCertificate hnf;
};

// Rational y with y A integral and y b non-integral: no integer solution.
inline auto verify_infeasibility_certificate(const IntMatrix & a, const IntVector & b, const RatVector & y, int cols)
    -> bool
{
    if (y.size() != a.size())
        return false;
    for (int j = 0; j < cols; ++j) {
        Rat s = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (y[i] != 0 && a[i][j] != 0)
                s += y[i] * Rat(a[i][j]);
        if (! is_integral(s))
            return false;
    }
    Rat yb = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        yb += y[i] * Rat(b[i]);
    return ! is_integral(yb);
}

// Integer solutions of A x = b via the column Hermite form.
inline auto solve_dense(const IntMatrix & a, const IntVector & b, int cols) -> DenseSolveResult
{
    const int m = int(a.size());
    DenseSolveResult out;
    out.hnf = hermite_column_form(a, cols);
    auto & h = out.hnf.h;
    auto & piv = out.hnf.pivot_rows;
    const int rank = out.hnf.rank;
    IntVector z(cols, 0);
    int c = 0;
    // Rows whose echelon entries are all left of column c are consistency rows.
    auto residual = [&](int i, int upto) {
        Int s = b[i];
        for (int j = 0; j < upto; ++j)
            if (h[i][j] != 0)
                s -= h[i][j] * z[j];
        return s;
    };
    for (int i = 0; i < m; ++i) {
        bool pivot = c < rank && piv[c] == i;
        Int s = residual(i, c);
        if (pivot) {
            if (s % h[i][c] != 0) {
                out.failing_row = i;
                // y L = e_c over pivot rows 0..c.
                RatVector yp(c + 1, 0);
                for (int cc = c; cc >= 0; --cc) {
                    Rat v = cc == c ? Rat(1) : Rat(0);
                    for (int k = cc + 1; k <= c; ++k)
                        v -= yp[k] * Rat(h[piv[k]][cc]);
                    yp[cc] = v / Rat(h[piv[cc]][cc]);
                }
                out.certificate.assign(m, 0);
                for (int k = 0; k <= c; ++k)
                    out.certificate[piv[k]] = yp[k];
                return out;
            }
            z[c] = s / h[i][c];
            ++c;
        }
        else if (s != 0) {
            out.failing_row = i;
            // y_i = 1 and y L = -H_i over pivot rows 0..c-1.
            RatVector yp(c, 0);
            for (int cc = c - 1; cc >= 0; --cc) {
                Rat v = -Rat(h[i][cc]);
                for (int k = cc + 1; k < c; ++k)
                    v -= yp[k] * Rat(h[piv[k]][cc]);
                yp[cc] = v / Rat(h[piv[cc]][cc]);
            }
            out.certificate.assign(m, 0);
            out.certificate[i] = 1;
            for (int k = 0; k < c; ++k)
                out.certificate[piv[k]] = yp[k];
            // y b equals the residual s; scale so that it is 1/2.
            Rat scale = Rat(1) / (Rat(2) * Rat(s));
            for (auto & v : out.certificate)
                v *= scale;
            return out;
        }
    }
    out.feasible = true;
    out.x.assign(cols, 0);
    for (int r = 0; r < cols; ++r)
        for (int j = 0; j < rank; ++j)
            if (out.hnf.u[r][j] != 0)
                out.x[r] += out.hnf.u[r][j] * z[j];
    for (int j = rank; j < cols; ++j) {
        IntVector col(cols);
        for (int r = 0; r < cols; ++r)
            col[r] = out.hnf.u[r][j];
        out.kernel.push_back(std::move(col));
    }
    return out;
}

// Exact determinant by fraction-free elimination.
inline auto bareiss_determinant(IntMatrix a) -> Int
{
    const int n = int(a.size());
    if (n == 0)
        return 1;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int p = k + 1;
            while (p < n && a[p][k] == 0)
                ++p;
            if (p == n)
                return 0;
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

// Re-checks a Hermite certificate: U unimodular and A U = H.
inline auto verify_hnf(const IntMatrix & a, const HnfCertificate & c, int cols) -> bool
{
    Int det = bareiss_determinant(c.u);
    if (det != 1 && det != -1)
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (int j = 0; j < cols; ++j) {
            Int s = 0;
            for (int k = 0; k < cols; ++k)
                if (a[i][k] != 0 && c.u[k][j] != 0)
                    s += a[i][k] * c.u[k][j];
            if (s != c.h[i][j])
                return false;
        }
    for (std::size_t i = 0; i < a.size(); ++i)
        for (int j = c.rank; j < cols; ++j)
            if (c.h[i][j] != 0)
                return false;
    return true;
}

using SparseIntRow = std::vector<std::pair<int, Int>>;

// Sparse integer system A x = b.
struct LinearSystemZ
{
    int vars = 0;
    std::vector<SparseIntRow> rows;
    IntVector rhs;

    auto add_row(SparseIntRow row, Int b) -> void
    {
        std::sort(row.begin(), row.end(), [](auto & x, auto & y) { return x.first < y.first; });
        SparseIntRow merged;
        for (auto & [v, c] : row) {
            if (! merged.empty() && merged.back().first == v)
                merged.back().second += c;
            else
                merged.emplace_back(v, c);
        }
        std::erase_if(merged, [](auto & e) { return e.second == 0; });
        rows.push_back(std::move(merged));
        rhs.push_back(std::move(b));
    }

    auto satisfied_by(const IntVector & x) const -> bool
    {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            Int s = 0;
            for (auto & [v, c] : rows[r])
                s += c * x[v];
            if (s != rhs[r])
                return false;
        }
        return true;
    }

    auto dense() const -> IntMatrix
    {
        IntMatrix a(rows.size(), IntVector(vars, 0));
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (auto & [v, c] : rows[r])
                a[r][v] = c;
        return a;
    }
};

struct SolverBudget
{
    std::size_t max_core_entries = 4000000;  // dense core rows * columns
};

struct IntegerSolution
{
    Verdict feasible = Verdict::Unverified;
    IntVector x;
    RatVector certificate;  // over the rows of the solved system, when requested
};

namespace detail {

    inline auto row_axpy(const SparseIntRow & a, const Int & f, const SparseIntRow & b) -> SparseIntRow
    {
        // a + f * b
        SparseIntRow out;
        out.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
                out.push_back(a[i++]);
            else if (i == a.size() || b[j].first < a[i].first) {
                out.emplace_back(b[j].first, f * b[j].second);
                ++j;
            }
            else {
                Int v = a[i].second + f * b[j].second;
                if (v != 0)
                    out.emplace_back(a[i].first, std::move(v));
                ++i;
                ++j;
            }
        }
        return out;
    }

    inline auto coef_of(const SparseIntRow & r, int v) -> const Int *
    {
        auto it = std::lower_bound(r.begin(), r.end(), v, [](auto & e, int x) { return e.first < x; });
        return (it != r.end() && it->first == v) ? &it->second : nullptr;
    }

    using Combination = std::map<int, Rat>;

    // Unit-pivot elimination: repeatedly pick the shortest active row that has
    // a +-1 coefficient and eliminate that variable from every other active
    // row. Pivot rows are kept unsubstituted and solved in reverse order.
    struct Presolve
    {
        int vars = 0;
        std::vector<SparseIntRow> rows;
        IntVector rhs;
        std::vector<char> active;
        std::vector<int> pivot_var;          // per row, or -1
        std::vector<int> order;              // pivot rows in elimination order
        std::vector<int> eliminated_by;      // per var: pivot row or -1
        std::vector<Combination> comb;       // when tracking
        bool tracking = false;
        int contradiction = -1;              // row reduced to 0 = c, c != 0

        Presolve(const LinearSystemZ & sys, bool track) :
            vars(sys.vars), rows(sys.rows), rhs(sys.rhs), active(sys.rows.size(), 1),
            pivot_var(sys.rows.size(), -1), eliminated_by(sys.vars, -1), tracking(track)
        {
            const int m = int(rows.size());
            if (tracking) {
                comb.resize(m);
                for (int r = 0; r < m; ++r)
                    comb[r][r] = 1;
            }
            std::vector<std::vector<int>> col(vars);
            for (int r = 0; r < m; ++r)
                for (auto & [v, c] : rows[r])
                    col[v].push_back(r);
            using Entry = std::pair<std::size_t, int>;
            std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
            for (int r = 0; r < m; ++r)
                pq.push({rows[r].size(), r});
            while (! pq.empty()) {
                auto [len, p] = pq.top();
                pq.pop();
                if (! active[p] || len != rows[p].size())
                    continue;
                if (rows[p].empty()) {
                    active[p] = 0;
                    if (rhs[p] != 0) {
                        contradiction = p;
                        return;
                    }
                    continue;
                }
                int v = -1;
                std::size_t best = SIZE_MAX;
                for (auto & [u, c] : rows[p])
                    if ((c == 1 || c == -1) && col[u].size() < best) {
                        best = col[u].size();
                        v = u;
                    }
                if (v < 0)
                    continue;  // stays in the core unless a later update changes it
                active[p] = 0;
                pivot_var[p] = v;
                eliminated_by[v] = p;
                order.push_back(p);
                const Int pv = *coef_of(rows[p], v);
                for (int r : col[v]) {
                    if (r == p || ! active[r])
                        continue;
                    const Int * rv = coef_of(rows[r], v);
                    if (! rv)
                        continue;
                    Int f = -(*rv) * pv;  // pv is its own inverse
                    std::vector<int> before;
                    for (auto & e : rows[r])
                        before.push_back(e.first);
                    rows[r] = row_axpy(rows[r], f, rows[p]);
                    rhs[r] += f * rhs[p];
                    if (tracking)
                        for (auto & [orig, c] : comb[p]) {
                            auto & slot = comb[r][orig];
                            slot += Rat(f) * c;
                            if (slot == 0)
                                comb[r].erase(orig);
                        }
                    for (auto & e : rows[r])
                        if (! std::binary_search(before.begin(), before.end(), e.first))
                            col[e.first].push_back(r);
                    pq.push({rows[r].size(), r});
                }
            }
        }

        auto core_rows() const -> std::vector<int>
        {
            std::vector<int> out;
            for (std::size_t r = 0; r < rows.size(); ++r)
                if (active[r] && ! rows[r].empty())
                    out.push_back(int(r));
            return out;
        }

        // Fills eliminated variables in x from the others, latest pivot first.
        auto back_substitute(IntVector & x) const -> void
        {
            for (auto it = order.rbegin(); it != order.rend(); ++it) {
                int p = *it, v = pivot_var[p];
                Int s = rhs[p], pv = 0;
                for (auto & [u, c] : rows[p]) {
                    if (u == v)
                        pv = c;
                    else
                        s -= c * x[u];
                }
                x[v] = s * pv;
            }
        }
    };

}

// Integer feasibility of a sparse system. With certify, an infeasible verdict
// carries a verified certificate over the rows of sys.
inline auto solve_integer(const LinearSystemZ & sys, bool certify = false, const SolverBudget & budget = {})
    -> IntegerSolution
{
    IntegerSolution out;
    detail::Presolve pre(sys, certify);
    auto lift = [&](const RatVector & y_rows) {
        RatVector y(sys.rows.size(), 0);
        for (std::size_t r = 0; r < y_rows.size(); ++r)
            if (y_rows[r] != 0)
                for (auto & [orig, c] : pre.comb[r])
                    y[orig] += y_rows[r] * c;
        return y;
    };
    if (pre.contradiction >= 0) {
        out.feasible = Verdict::Fail;
        if (certify) {
            RatVector yr(sys.rows.size(), 0);
            yr[pre.contradiction] = Rat(1) / (Rat(2) * Rat(pre.rhs[pre.contradiction]));
            out.certificate = lift(yr);
        }
        return out;
    }
    auto core = pre.core_rows();
    std::vector<int> core_vars;
    for (int r : core)
        for (auto & [v, c] : pre.rows[r])
            core_vars.push_back(v);
    std::sort(core_vars.begin(), core_vars.end());
    core_vars.erase(std::unique(core_vars.begin(), core_vars.end()), core_vars.end());
    if (double(core.size()) * double(core_vars.size()) > double(budget.max_core_entries))
        return out;
    IntMatrix a(core.size(), IntVector(core_vars.size(), 0));
    IntVector b(core.size());
    for (std::size_t i = 0; i < core.size(); ++i) {
        for (auto & [v, c] : pre.rows[core[i]])
            a[i][std::lower_bound(core_vars.begin(), core_vars.end(), v) - core_vars.begin()] = c;
        b[i] = pre.rhs[core[i]];
    }
    auto res = solve_dense(a, b, int(core_vars.size()));
    if (! res.feasible) {
        out.feasible = Verdict::Fail;
        if (certify) {
            RatVector yr(sys.rows.size(), 0);
            for (std::size_t i = 0; i < core.size(); ++i)
                yr[core[i]] = res.certificate[i];
            out.certificate = lift(yr);
            if (! verify_infeasibility_certificate(sys.dense(), sys.rhs, out.certificate, sys.vars))
                throw std::logic_error("integer solver produced an invalid certificate");
        }
        return out;
    }
    out.x.assign(sys.vars, 0);
    for (std::size_t j = 0; j < core_vars.size(); ++j)
        out.x[core_vars[j]] = res.x[j];
    pre.back_substitute(out.x);
    if (! sys.satisfied_by(out.x))
        throw std::logic_error("integer solver produced a non-solution");
    out.feasible = Verdict::Pass;
    return out;
}

// Substitutes the pinned values, moves them to the right-hand side and
// solves the rest; the returned x carries the pinned values.
inline auto solve_with_pins(const LinearSystemZ & sys, const std::vector<std::pair<int, Int>> & pins,
    bool certify = false, const SolverBudget & budget = {}) -> IntegerSolution
{
    std::map<int, Int> pinned;
    for (auto & [v, val] : pins) {
        auto [it, fresh] = pinned.emplace(v, val);
        if (! fresh && it->second != val) {
            IntegerSolution out;
            out.feasible = Verdict::Fail;
            return out;
        }
    }
    LinearSystemZ reduced;
    reduced.vars = sys.vars;
    for (std::size_t r = 0; r < sys.rows.size(); ++r) {
        SparseIntRow row;
        Int b = sys.rhs[r];
        for (auto & [v, c] : sys.rows[r]) {
            auto it = pinned.find(v);
            if (it == pinned.end())
                row.emplace_back(v, c);
            else
                b -= c * it->second;
        }
        reduced.add_row(std::move(row), std::move(b));
    }
    auto out = solve_integer(reduced, certify, budget);
    if (out.feasible == Verdict::Pass)
        for (auto & [v, val] : pinned)
            out.x[v] = val;
    return out;
}

// Integer solutions of one system under many sets of pinned values. The
// unpinned system is parametrized once: x = x0 + G w over an integer lattice
// parameter w; a pin query is then a small system in w.
class PinnedSolver
{
public:
    explicit PinnedSolver(const LinearSystemZ & sys, const SolverBudget & budget = {}) : sys_(sys), pre_(sys, false)
    {
        if (pre_.contradiction >= 0) {
            status_ = Verdict::Fail;
            return;
        }
        auto core = pre_.core_rows();
        for (int r : core)
            for (auto & [v, c] : pre_.rows[r])
                core_vars_.push_back(v);
        std::sort(core_vars_.begin(), core_vars_.end());
        core_vars_.erase(std::unique(core_vars_.begin(), core_vars_.end()), core_vars_.end());
        if (double(core.size()) * double(core_vars_.size()) > double(budget.max_core_entries)) {
            status_ = Verdict::Unverified;
            return;
        }
        IntMatrix a(core.size(), IntVector(core_vars_.size(), 0));
        IntVector b(core.size());
        for (std::size_t i = 0; i < core.size(); ++i) {
            for (auto & [v, c] : pre_.rows[core[i]])
                a[i][core_pos(v)] = c;
            b[i] = pre_.rhs[core[i]];
        }
        auto res = solve_dense(a, b, int(core_vars_.size()));
        if (! res.feasible) {
            status_ = Verdict::Fail;
            return;
        }
        t0_ = std::move(res.x);
        kernel_ = std::move(res.kernel);
        status_ = Verdict::Pass;
    }

    // Feasibility of the unpinned system.
    auto status() const -> Verdict { return status_; }

    auto solve(const std::vector<std::pair<int, Int>> & pins) -> IntegerSolution
    {
        IntegerSolution out;
        out.feasible = status_;
        if (status_ != Verdict::Pass)
            return out;
        // Parameters: kernel coordinates, then free variables met in the pins.
        std::vector<int> free_vars;
        std::vector<std::pair<const Affine *, Int>> rows;
        for (auto & [v, val] : pins) {
            auto & e = expand(v);
            rows.emplace_back(&e, val);
            for (auto & [u, c] : e.terms)
                if (! is_core(u))
                    free_vars.push_back(u);
        }
        std::sort(free_vars.begin(), free_vars.end());
        free_vars.erase(std::unique(free_vars.begin(), free_vars.end()), free_vars.end());
        const int kd = int(kernel_.size());
        const int cols = kd + int(free_vars.size());
        IntMatrix a(rows.size(), IntVector(cols, 0));
        IntVector b(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            auto & [e, val] = rows[i];
            Int rhs = val - e->constant;
            for (auto & [u, c] : e->terms) {
                if (is_core(u)) {
                    int cu = core_pos(u);
                    rhs -= c * t0_[cu];
                    for (int j = 0; j < kd; ++j)
                        if (kernel_[j][cu] != 0)
                            a[i][j] += c * kernel_[j][cu];
                }
                else {
                    int fu = int(std::lower_bound(free_vars.begin(), free_vars.end(), u) - free_vars.begin());
                    a[i][kd + fu] += c;
                }
            }
            b[i] = rhs;
        }
        auto res = solve_dense(a, b, cols);
        if (! res.feasible) {
            out.feasible = Verdict::Fail;
            return out;
        }
        out.x.assign(sys_.vars, 0);
        for (std::size_t cu = 0; cu < core_vars_.size(); ++cu) {
            Int t = t0_[cu];
            for (int j = 0; j < kd; ++j)
                if (kernel_[j][cu] != 0)
                    t += kernel_[j][cu] * res.x[j];
            out.x[core_vars_[cu]] = t;
        }
        for (std::size_t f = 0; f < free_vars.size(); ++f)
            out.x[free_vars[f]] = res.x[kd + f];
        pre_.back_substitute(out.x);
        for (auto & [v, val] : pins)
            if (out.x[v] != val)
                throw std::logic_error("pinned solve violated a pin");
        if (! sys_.satisfied_by(out.x))
            throw std::logic_error("pinned solve produced a non-solution");
        out.feasible = Verdict::Pass;
        return out;
    }

    auto core_size() const -> std::pair<std::size_t, std::size_t>
    {
        return {pre_.core_rows().size(), core_vars_.size()};
    }

private:
    // x_v = constant + sum c_u x_u over variables that are not eliminated.
    struct Affine
    {
        Int constant = 0;
        std::map<int, Int> terms;
    };

    auto is_core(int v) const -> bool { return std::binary_search(core_vars_.begin(), core_vars_.end(), v); }

    auto core_pos(int v) const -> int
    {
        return int(std::lower_bound(core_vars_.begin(), core_vars_.end(), v) - core_vars_.begin());
    }

    auto expand(int v) -> const Affine &
    {
        if (auto it = memo_.find(v); it != memo_.end())
            return it->second;
        Affine e;
        int p = pre_.eliminated_by[v];
        if (p < 0)
            e.terms[v] = 1;
        else {
            // Later pivots never refer back, so the recursion terminates.
            Int pv = *detail::coef_of(pre_.rows[p], v);
            e.constant = pre_.rhs[p] * pv;
            for (auto & [u, c] : pre_.rows[p]) {
                if (u == v)
                    continue;
                Affine sub = expand(u);
                Int f = -c * pv;
                e.constant += f * sub.constant;
                for (auto & [w, cw] : sub.terms) {
                    auto & slot = e.terms[w];
                    slot += f * cw;
                    if (slot == 0)
                        e.terms.erase(w);
                }
            }
        }
        return memo_.emplace(v, std::move(e)).first->second;
    }

    const LinearSystemZ & sys_;
    detail::Presolve pre_;
    Verdict status_ = Verdict::Unverified;
    std::vector<int> core_vars_;
    IntVector t0_;
    IntMatrix kernel_;
    std::unordered_map<int, Affine> memo_;
};

}
