#include "csplab/integer_solver.hpp"
#include "csplab/rng.hpp"

#include <gtest/gtest.h>

using namespace csplab;

namespace {

auto random_matrix(int m, int n, int lo, int hi, CounterRng & rng) -> IntMatrix
{
    IntMatrix a(m, IntVector(n));
    for (auto & row : a)
        for (auto & v : row)
            v = lo + int(rng.below(std::uint64_t(hi - lo + 1)));
    return a;
}

auto times(const IntMatrix & a, const IntVector & x) -> IntVector
{
    IntVector out(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            out[i] += a[i][j] * x[j];
    return out;
}

// Some x in [-5, 5]^n with A x = b.
auto brute_solution(const IntMatrix & a, const IntVector & b, int n) -> bool
{
    std::vector<int> x(n, -5);
    for (;;) {
        bool ok = true;
        for (std::size_t i = 0; i < a.size() && ok; ++i) {
            Int s = 0;
            for (int j = 0; j < n; ++j)
                s += a[i][j] * x[j];
            ok = s == b[i];
        }
        if (ok)
            return true;
        int j = 0;
        while (j < n && ++x[j] > 5)
            x[j++] = -5;
        if (j == n)
            return false;
    }
}

auto to_system(const IntMatrix & a, const IntVector & b, int n) -> LinearSystemZ
{
    LinearSystemZ sys;
    sys.vars = n;
    for (std::size_t i = 0; i < a.size(); ++i) {
        SparseIntRow row;
        for (int j = 0; j < n; ++j)
            if (a[i][j] != 0)
                row.emplace_back(j, a[i][j]);
        sys.add_row(std::move(row), b[i]);
    }
    return sys;
}

}

TEST(IntegerSolver, SmallExamples)
{
    auto r1 = solve_dense({{2}}, {2}, 1);
    ASSERT_TRUE(r1.feasible);
    EXPECT_EQ(r1.x, (IntVector{1}));
    auto r2 = solve_dense({{2}}, {1}, 1);
    EXPECT_FALSE(r2.feasible);
    EXPECT_TRUE(verify_infeasibility_certificate({{2}}, {1}, r2.certificate, 1));
    auto r3 = solve_dense({{1, 1}, {1, -1}}, {1, 1}, 2);
    ASSERT_TRUE(r3.feasible);
    EXPECT_EQ(r3.x, (IntVector{1, 0}));
    EXPECT_TRUE(r3.kernel.empty());
}

TEST(IntegerSolver, InconsistentRowsGetCertificates)
{
    IntMatrix a{{1, 1}, {2, 2}};
    IntVector b{1, 3};
    auto r = solve_dense(a, b, 2);
    EXPECT_FALSE(r.feasible);
    EXPECT_TRUE(verify_infeasibility_certificate(a, b, r.certificate, 2));
}

TEST(IntegerSolver, RandomSystemsAgreeWithBruteForce)
{
    CounterRng rng(41, 0);
    int infeasible = 0;
    for (int trial = 0; trial < 200; ++trial) {
        int m = 1 + int(rng.below(6)), n = 1 + int(rng.below(6));
        auto a = random_matrix(m, n, -3, 3, rng);
        IntVector b(m);
        // Half the right-hand sides come from a small solution.
        if (trial % 2 == 0) {
            IntVector x0(n);
            for (auto & v : x0)
                v = int(rng.below(5)) - 2;
            b = times(a, x0);
        }
        else
            for (auto & v : b)
                v = int(rng.below(7)) - 3;
        auto r = solve_dense(a, b, n);
        ASSERT_TRUE(verify_hnf(a, r.hnf, n)) << trial;
        if (r.feasible) {
            EXPECT_EQ(times(a, r.x), b) << trial;
            for (auto & k : r.kernel)
                EXPECT_EQ(times(a, k), IntVector(m, 0));
            EXPECT_EQ(int(r.kernel.size()), n - r.hnf.rank);
        }
        else {
            ++infeasible;
            EXPECT_TRUE(verify_infeasibility_certificate(a, b, r.certificate, n)) << trial;
            if (n <= 5)
                EXPECT_FALSE(brute_solution(a, b, n)) << trial;
        }
        if (brute_solution(a, b, std::min(n, 5)) && n <= 5)
            EXPECT_TRUE(r.feasible) << trial;
    }
    EXPECT_GT(infeasible, 20);
}

TEST(IntegerSolver, DeterminantMatchesCofactorExpansion)
{
    CounterRng rng(42, 0);
    auto cofactor = [](auto && self, const IntMatrix & m) -> Int {
        const int n = int(m.size());
        if (n == 1)
            return m[0][0];
        Int d = 0;
        for (int c = 0; c < n; ++c) {
            IntMatrix minor;
            for (int r = 1; r < n; ++r) {
                IntVector row;
                for (int j = 0; j < n; ++j)
                    if (j != c)
                        row.push_back(m[r][j]);
                minor.push_back(row);
            }
            Int term = m[0][c] * self(self, minor);
            d += (c % 2 ? -term : term);
        }
        return d;
    };
    for (int trial = 0; trial < 40; ++trial) {
        int n = 1 + trial % 6;
        auto a = random_matrix(n, n, -3, 3, rng);
        EXPECT_EQ(bareiss_determinant(a), cofactor(cofactor, a));
    }
}

TEST(IntegerSolver, SparseSolverMatchesDense)
{
    CounterRng rng(43, 0);
    for (int trial = 0; trial < 150; ++trial) {
        int m = 2 + int(rng.below(10)), n = 2 + int(rng.below(10));
        IntMatrix a(m, IntVector(n, 0));
        for (auto & row : a)
            for (auto & v : row)
                if (rng.below(3) == 0)
                    v = int(rng.below(5)) - 2;
        IntVector b(m);
        for (auto & v : b)
            v = int(rng.below(5)) - 2;
        auto dense = solve_dense(a, b, n);
        auto sys = to_system(a, b, n);
        auto sparse = solve_integer(sys, true);
        ASSERT_EQ(sparse.feasible, verdict_of(dense.feasible)) << trial;
        if (sparse.feasible == Verdict::Pass)
            EXPECT_TRUE(sys.satisfied_by(sparse.x));
        else
            EXPECT_TRUE(verify_infeasibility_certificate(a, b, sparse.certificate, n));
    }
}

TEST(IntegerSolver, PinnedExamples)
{
    LinearSystemZ sys;
    sys.vars = 2;
    sys.add_row({{0, 1}}, 0);
    EXPECT_EQ(solve_with_pins(sys, {{0, 1}}).feasible, Verdict::Fail);
    sys.add_row({{0, 1}, {1, 1}}, 1);
    auto r = solve_with_pins(sys, {{0, 0}, {1, 1}});
    ASSERT_EQ(r.feasible, Verdict::Pass);
    EXPECT_EQ(r.x, (IntVector{0, 1}));
}

TEST(IntegerSolver, ParametrizedPinsMatchDirectSolves)
{
    CounterRng rng(44, 0);
    for (int trial = 0; trial < 60; ++trial) {
        int m = 2 + int(rng.below(8)), n = 4 + int(rng.below(8));
        IntMatrix a(m, IntVector(n, 0));
        for (auto & row : a)
            for (auto & v : row)
                if (rng.below(3) == 0)
                    v = int(rng.below(5)) - 2;
        IntVector x0(n);
        for (auto & v : x0)
            v = int(rng.below(3)) - 1;
        auto b = times(a, x0);
        auto sys = to_system(a, b, n);
        PinnedSolver ps(sys);
        ASSERT_EQ(ps.status(), Verdict::Pass);
        for (int q = 0; q < 6; ++q) {
            std::vector<std::pair<int, Int>> pins;
            for (int v = 0; v < n; ++v)
                if (rng.below(4) == 0)
                    pins.emplace_back(v, int(rng.below(3)) - 1);
            auto fast = ps.solve(pins);
            auto direct = solve_with_pins(sys, pins, true);
            ASSERT_EQ(fast.feasible, direct.feasible) << trial << " " << q;
            if (direct.feasible == Verdict::Fail) {
                // The certificate covers the system with its pins substituted.
                LinearSystemZ red;
                red.vars = n;
                for (std::size_t r = 0; r < sys.rows.size(); ++r) {
                    SparseIntRow row;
                    Int rhs = sys.rhs[r];
                    for (auto & [v, c] : sys.rows[r]) {
                        auto it = std::find_if(pins.begin(), pins.end(), [&](auto & p) { return p.first == v; });
                        if (it == pins.end())
                            row.emplace_back(v, c);
                        else
                            rhs -= c * it->second;
                    }
                    red.add_row(row, rhs);
                }
                EXPECT_TRUE(verify_infeasibility_certificate(red.dense(), red.rhs, direct.certificate, n));
            }
        }
    }
}
