#pragma once

#include "csplab/integer_solver.hpp"
#include "csplab/relational.hpp"
#include "csplab/rng.hpp"
#include "csplab/verdict.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace csplab {

// All subsets of {0..n-1} of size <= k, indexed by size and then colex rank.
class SubsetSpace
{
public:
    SubsetSpace(int n, int k, std::size_t max_subsets = 5000000) : n_(n), k_(std::min(k, n))
    {
        if (n < 0 || k < 0)
            throw std::invalid_argument("negative subset space parameters");
        binom_.assign(n + 1, std::vector<std::uint64_t>(k_ + 2, 0));
        for (int i = 0; i <= n; ++i) {
            binom_[i][0] = 1;
            for (int j = 1; j <= std::min(i, k_ + 1); ++j)
                binom_[i][j] = binom_[i - 1][j - 1] + (j <= i - 1 ? binom_[i - 1][j] : 0);
        }
        offset_.assign(k_ + 2, 0);
        for (int j = 0; j <= k_; ++j)
            offset_[j + 1] = offset_[j] + binom_[n][j];
        if (offset_[k_ + 1] > max_subsets)
            throw BudgetExceeded("too many subsets of size <= k");
        const std::size_t total = offset_[k_ + 1];
        elems_.assign(total * std::max(k_, 1), -1);
        size_.assign(total, 0);
        for (int j = 0; j <= k_; ++j) {
            std::vector<int> comb(j);
            for (int i = 0; i < j; ++i)
                comb[i] = i;
            for (;;) {
                std::size_t idx = index_of(comb);
                size_[idx] = std::uint8_t(j);
                std::copy(comb.begin(), comb.end(), elems_.begin() + std::ptrdiff_t(idx * std::max(k_, 1)));
                int i = j - 1;
                while (i >= 0 && comb[i] == n - j + i)
                    --i;
                if (i < 0)
                    break;
                ++comb[i];
                for (int t = i + 1; t < j; ++t)
                    comb[t] = comb[t - 1] + 1;
            }
        }
    }

    auto n() const -> int { return n_; }
    auto k() const -> int { return k_; }
    auto count() const -> std::size_t { return offset_[k_ + 1]; }
    auto size(std::size_t idx) const -> int { return size_[idx]; }
    auto begin_of_size(int j) const -> std::size_t { return offset_[j]; }
    auto end_of_size(int j) const -> std::size_t { return offset_[j + 1]; }

    auto elements(std::size_t idx) const -> std::vector<int>
    {
        auto b = elems_.begin() + std::ptrdiff_t(idx * std::max(k_, 1));
        return {b, b + size_[idx]};
    }

    auto element(std::size_t idx, int pos) const -> int { return elems_[idx * std::max(k_, 1) + pos]; }

    // Index of a sorted subset.
    auto index_of(const std::vector<int> & sorted) const -> std::size_t
    {
        std::size_t r = offset_[sorted.size()];
        for (std::size_t i = 0; i < sorted.size(); ++i)
            r += binom_[sorted[i]][i + 1];
        return r;
    }

    auto without(std::size_t idx, int pos) const -> std::size_t
    {
        const int j = size_[idx];
        std::size_t r = offset_[j - 1];
        for (int i = 0, t = 0; i < j; ++i) {
            if (i == pos)
                continue;
            r += binom_[element(idx, i)][t + 1];
            ++t;
        }
        return r;
    }

    // Subset of the positions in mask.
    auto sub(std::size_t idx, unsigned mask) const -> std::size_t
    {
        const int j = size_[idx];
        std::size_t r = offset_[std::popcount(mask)];
        for (int i = 0, t = 0; i < j; ++i)
            if (mask >> i & 1) {
                r += binom_[element(idx, i)][t + 1];
                ++t;
            }
        return r;
    }

    // Position at which a (not in the subset) would be inserted.
    auto insert_pos(std::size_t idx, int a) const -> int
    {
        int p = 0;
        while (p < size_[idx] && element(idx, p) < a)
            ++p;
        return p;
    }

    auto contains(std::size_t idx, int a) const -> bool
    {
        for (int i = 0; i < size_[idx]; ++i)
            if (element(idx, i) == a)
                return true;
        return false;
    }

private:
    int n_, k_;
    std::vector<std::vector<std::uint64_t>> binom_;
    std::vector<std::size_t> offset_;
    std::vector<int> elems_;
    std::vector<std::uint8_t> size_;
};

// Partial maps on a sorted subset are coded as sum value_i * q^i over the
// positions i of the subset.
struct HomCoder
{
    int q = 1;
    std::vector<std::uint32_t> pow;

    explicit HomCoder(int q_, int k) : q(q_)
    {
        pow.assign(k + 2, 1);
        for (int i = 1; i < k + 2; ++i) {
            if (double(pow[i - 1]) * q > 4294967295.0)
                throw BudgetExceeded("partial map codes exceed 32 bits");
            pow[i] = pow[i - 1] * std::uint32_t(q);
        }
    }

    auto digit(std::uint32_t code, int pos) const -> int { return int(code / pow[pos] % std::uint32_t(q)); }

    auto drop(std::uint32_t code, int pos) const -> std::uint32_t
    {
        return code % pow[pos] + code / pow[pos + 1] * pow[pos];
    }

    auto insert(std::uint32_t code, int pos, int val) const -> std::uint32_t
    {
        return code % pow[pos] + std::uint32_t(val) * pow[pos] + code / pow[pos] * pow[pos + 1];
    }

    // Restriction to the positions in mask.
    auto select(std::uint32_t code, int size, unsigned mask) const -> std::uint32_t
    {
        std::uint32_t out = 0;
        for (int i = 0, t = 0; i < size; ++i)
            if (mask >> i & 1)
                out += std::uint32_t(digit(code, i)) * pow[t++];
        return out;
    }

    auto decode(std::uint32_t code, int size) const -> std::vector<int>
    {
        std::vector<int> v(size);
        for (int i = 0; i < size; ++i)
            v[i] = digit(code, i);
        return v;
    }

    auto encode(const std::vector<int> & vals) const -> std::uint32_t
    {
        std::uint32_t c = 0;
        for (std::size_t i = 0; i < vals.size(); ++i)
            c += std::uint32_t(vals[i]) * pow[i];
        return c;
    }
};

// kappa(X) for every subset X of size <= k, as sorted codes.
struct Family
{
    std::shared_ptr<const SubsetSpace> space;
    HomCoder coder{1, 0};
    std::vector<std::vector<std::uint32_t>> homs;

    auto find(std::size_t x, std::uint32_t code) const -> int
    {
        auto & h = homs[x];
        auto it = std::lower_bound(h.begin(), h.end(), code);
        return (it != h.end() && *it == code) ? int(it - h.begin()) : -1;
    }

    auto total() const -> std::size_t
    {
        std::size_t t = 0;
        for (auto & h : homs)
            t += h.size();
        return t;
    }

    auto any_empty() const -> bool
    {
        return std::any_of(homs.begin(), homs.end(), [](auto & h) { return h.empty(); });
    }

    // Variable offsets for L_k.
    auto offsets() const -> std::vector<std::size_t>
    {
        std::vector<std::size_t> off(homs.size() + 1, 0);
        for (std::size_t x = 0; x < homs.size(); ++x)
            off[x + 1] = off[x] + homs[x].size();
        return off;
    }

    auto operator==(const Family & o) const -> bool { return homs == o.homs; }
};

// hom(A[X], T) for every X of size <= k.
inline auto initial_family(const RelStructure & a, const RelStructure & t, std::shared_ptr<const SubsetSpace> shared)
    -> Family
{
    const auto & space = *shared;
    check_compatible(a, t);
    if (space.n() != a.size())
        throw std::invalid_argument("subset space does not match the instance");
    RelationIndex idx(t);
    Family f;
    f.space = shared;
    f.coder = HomCoder(t.size(), space.k());
    f.homs.assign(space.count(), {});
    // Tuples by largest element.
    std::vector<std::vector<std::pair<int, const Tuple *>>> by_max(a.size());
    for (std::size_t s = 0; s < a.relations.size(); ++s)
        for (auto & tup : a.relations[s])
            by_max[*std::max_element(tup.begin(), tup.end())].emplace_back(int(s), &tup);
    f.homs[0] = {0};
    const int q = t.size();
    Tuple img;
    for (std::size_t x = 1; x < space.count(); ++x) {
        const int j = space.size(x);
        auto elems = space.elements(x);
        const int last = elems.back();
        std::vector<std::pair<int, std::vector<int>>> cons;
        for (auto & [s, tp] : by_max[last]) {
            std::vector<int> pos;
            bool inside = true;
            for (int e : *tp) {
                auto it = std::lower_bound(elems.begin(), elems.end(), e);
                if (it == elems.end() || *it != e) {
                    inside = false;
                    break;
                }
                pos.push_back(int(it - elems.begin()));
            }
            if (inside)
                cons.emplace_back(s, std::move(pos));
        }
        auto & out = f.homs[x];
        for (auto code : f.homs[space.without(x, j - 1)])
            for (int v = 0; v < q; ++v) {
                std::uint32_t c = code + std::uint32_t(v) * f.coder.pow[j - 1];
                bool ok = true;
                for (auto & [s, pos] : cons) {
                    img.clear();
                    for (int p : pos)
                        img.push_back(f.coder.digit(c, p));
                    if (! idx.contains(s, img)) {
                        ok = false;
                        break;
                    }
                }
                if (ok)
                    out.push_back(c);
            }
        std::sort(out.begin(), out.end());
    }
    return f;
}

// Deletes maps lacking a one-step restriction or a one-step extension until
// nothing changes; the result is the largest k-consistent subfamily. One-step
// checks suffice because both conditions compose along chains of subsets.
inline auto max_k_consistent(Family & f) -> std::size_t
{
    const auto & sp = *f.space;
    const int n = sp.n(), k = sp.k();
    std::size_t sweeps = 0;
    std::vector<std::vector<int>> ext(sp.count());
    std::vector<std::uint32_t> buf;
    for (;;) {
        ++sweeps;
        for (std::size_t x = 0; x < sp.count(); ++x)
            ext[x].assign(f.homs[x].size(), 0);
        std::vector<std::vector<char>> drop(sp.count());
        bool changed = false;
        for (std::size_t z = 1; z < sp.count(); ++z) {
            const int j = sp.size(z);
            drop[z].assign(f.homs[z].size(), 0);
            for (int pos = 0; pos < j; ++pos) {
                std::size_t y = sp.without(z, pos);
                buf.clear();
                for (std::size_t i = 0; i < f.homs[z].size(); ++i) {
                    auto r = f.coder.drop(f.homs[z][i], pos);
                    if (f.find(y, r) < 0) {
                        drop[z][i] = 1;
                        changed = true;
                    }
                    else
                        buf.push_back(r);
                }
                std::sort(buf.begin(), buf.end());
                buf.erase(std::unique(buf.begin(), buf.end()), buf.end());
                for (auto r : buf)
                    ++ext[y][f.find(y, r)];
            }
        }
        for (std::size_t y = 0; y < sp.count(); ++y) {
            const int j = sp.size(y);
            if (drop[y].empty())
                drop[y].assign(f.homs[y].size(), 0);
            if (j < k)
                for (std::size_t i = 0; i < f.homs[y].size(); ++i)
                    if (ext[y][i] < n - j) {
                        drop[y][i] = 1;
                        changed = true;
                    }
        }
        if (! changed)
            return sweeps;
        for (std::size_t x = 0; x < sp.count(); ++x) {
            std::vector<std::uint32_t> keep;
            for (std::size_t i = 0; i < f.homs[x].size(); ++i)
                if (! drop[x][i])
                    keep.push_back(f.homs[x][i]);
            f.homs[x] = std::move(keep);
        }
    }
}

// L_k(A, T, kappa). Full form: a base equation for every X and a consistency
// equation for every Y strictly inside X and psi in kappa(Y). One-step form:
// the base equation for the empty set and consistency for |X \ Y| = 1, which
// is equivalent when kappa is down-closed.
inline auto build_Lk(const Family & f, bool full) -> LinearSystemZ
{
    const auto & sp = *f.space;
    auto off = f.offsets();
    LinearSystemZ sys;
    sys.vars = int(off.back());
    for (std::size_t x = 0; x < sp.count(); ++x) {
        if (! full && x != 0)
            break;
        SparseIntRow row;
        for (std::size_t i = 0; i < f.homs[x].size(); ++i)
            row.emplace_back(int(off[x] + i), 1);
        sys.add_row(std::move(row), 1);
    }
    for (std::size_t x = 1; x < sp.count(); ++x) {
        const int j = sp.size(x);
        const unsigned all = (1u << j) - 1;
        for (unsigned mask = 0; mask < all; ++mask) {
            if (! full && std::popcount(mask) != j - 1)
                continue;
            std::size_t y = sp.sub(x, mask);
            for (std::size_t p = 0; p < f.homs[y].size(); ++p) {
                SparseIntRow row;
                for (std::size_t i = 0; i < f.homs[x].size(); ++i)
                    if (f.coder.select(f.homs[x][i], j, mask) == f.homs[y][p])
                        row.emplace_back(int(off[x] + i), 1);
                row.emplace_back(int(off[y] + p), -1);
                sys.add_row(std::move(row), 0);
            }
        }
    }
    return sys;
}

// Checks every equation of the full L_k for an assignment given per (X, i).
template <typename Value>
auto satisfies_Lk(const Family & f, Value && value) -> bool
{
    const auto & sp = *f.space;
    for (std::size_t x = 0; x < sp.count(); ++x) {
        Int s = 0;
        for (std::size_t i = 0; i < f.homs[x].size(); ++i)
            s += value(x, i);
        if (s != 1)
            return false;
    }
    std::vector<Int> sums;
    for (std::size_t x = 1; x < sp.count(); ++x) {
        const int j = sp.size(x);
        const unsigned all = (1u << j) - 1;
        for (unsigned mask = 0; mask < all; ++mask) {
            std::size_t y = sp.sub(x, mask);
            sums.assign(f.homs[y].size(), 0);
            for (std::size_t i = 0; i < f.homs[x].size(); ++i) {
                int p = f.find(y, f.coder.select(f.homs[x][i], j, mask));
                Int v = value(x, i);
                if (p < 0) {
                    if (v != 0)
                        return false;  // mass on a map whose restriction has no variable
                    continue;
                }
                sums[p] += v;
            }
            for (std::size_t p = 0; p < sums.size(); ++p)
                if (sums[p] != value(y, p))
                    return false;
        }
    }
    return true;
}

inline auto is_down_closed(const Family & f) -> bool
{
    const auto & sp = *f.space;
    for (std::size_t x = 1; x < sp.count(); ++x)
        for (int pos = 0; pos < sp.size(x); ++pos) {
            auto y = sp.without(x, pos);
            for (auto c : f.homs[x])
                if (f.find(y, f.coder.drop(c, pos)) < 0)
                    return false;
        }
    return true;
}

// A global assignment restricted to every X, when all restrictions lie in f.
inline auto indicator_codes(const Family & f, const std::vector<int> & global) -> std::optional<std::vector<int>>
{
    const auto & sp = *f.space;
    std::vector<int> idx(sp.count());
    for (std::size_t x = 0; x < sp.count(); ++x) {
        std::uint32_t c = 0;
        for (int i = 0; i < sp.size(x); ++i)
            c += std::uint32_t(global[sp.element(x, i)]) * f.coder.pow[i];
        idx[x] = f.find(x, c);
        if (idx[x] < 0)
            return std::nullopt;
    }
    return idx;
}

// Candidate solution vectors over the variables of L_k(f); every candidate is
// verified by substitution before use.
using WitnessProvider = std::function<std::optional<IntVector>(const Family & f, std::size_t x, int hom)>;

struct HierarchyOptions
{
    int k = 2;
    std::size_t max_subsets = 5000000;
    SolverBudget solver;
    std::size_t search_nodes = 5000000;   // per global-hom search
    std::size_t random_homs = 32;         // randomized global homs tried up front
    std::uint64_t seed = 0;
    std::vector<WitnessProvider> witnesses;
    bool keep_certificates = false;
};

enum class CertificateKind
{
    GlobalHom,
    Witness,
    Solver,
};

struct PinCertificate
{
    CertificateKind kind = CertificateKind::Solver;
    int index = -1;  // into global_homs or solutions
};

struct IterationTrace
{
    std::size_t family_size = 0;
    std::size_t consistency_sweeps = 0;
    std::vector<std::pair<std::size_t, std::uint32_t>> removed;  // (subset, code)
    std::size_t by_global_hom = 0, by_witness = 0, by_solver = 0, unresolved = 0;
};

struct HierarchyResult
{
    Verdict accepted = Verdict::Unverified;  // Pass: accept, Fail: reject
    int k = 0;
    std::vector<std::string> warnings;
    std::vector<IterationTrace> iterations;
    std::optional<Family> family;            // final family
    std::vector<std::vector<int>> global_homs;
    std::vector<IntVector> solutions;
    // Per subset and hom of the final family, when certificates are kept.
    std::vector<std::vector<PinCertificate>> certificates;
};

namespace detail {

    inline auto arity_warnings(const RelStructure & a, int k) -> std::vector<std::string>
    {
        std::vector<std::string> w;
        for (auto & s : a.signature.symbols)
            if (s.arity > k) {
                w.push_back("k is below the arity of " + s.name);
                break;
            }
        return w;
    }

    // Random value orders give varied global homomorphisms.
    inline auto random_global_homs(const RelStructure & a, const RelationIndex & idx, std::size_t count,
        std::uint64_t seed, std::size_t nodes) -> std::vector<std::vector<int>>
    {
        std::vector<std::vector<int>> out;
        if (a.size() == 0)
            return {std::vector<int>{}};
        const int q = idx.template_size();
        for (std::size_t r = 0; r < count; ++r) {
            CounterRng rng(seed, 0x9100 + r);
            std::vector<int> order = all_elements(a);
            rng.shuffle(order);
            std::vector<int> perm(q);
            for (int i = 0; i < q; ++i)
                perm[i] = i;
            rng.shuffle(perm);
            // The element order and the value tried first vary the homomorphism found.
            std::vector<int> pre(order.size(), -1);
            HomSearch search(a, idx, order);
            search.set_node_limit(nodes);
            std::optional<std::vector<int>> got;
            try {
                for (int v : perm) {
                    pre[0] = v;
                    search.run([&](const std::vector<int> & vals) {
                        got = vals;
                        return false;
                    }, pre);
                    if (got)
                        break;
                }
            }
            catch (const BudgetExceeded &) {
            }
            if (! got)
                continue;
            std::vector<int> global(a.size());
            for (std::size_t i = 0; i < order.size(); ++i)
                global[order[i]] = (*got)[i];
            if (std::find(out.begin(), out.end(), global) == out.end())
                out.push_back(std::move(global));
        }
        return out;
    }

}

// k-consistency: accept iff the largest k-consistent subfamily of all partial
// homomorphisms is nonempty.
inline auto run_kcons(const RelStructure & a, const RelStructure & t, const HierarchyOptions & opt) -> HierarchyResult
{
    HierarchyResult res;
    res.k = opt.k;
    res.warnings = detail::arity_warnings(a, opt.k);
    auto f = initial_family(a, t, std::make_shared<const SubsetSpace>(a.size(), opt.k, opt.max_subsets));
    IterationTrace it;
    it.consistency_sweeps = max_k_consistent(f);
    it.family_size = f.total();
    res.iterations.push_back(it);
    res.accepted = verdict_of(! f.any_empty());
    res.family = std::move(f);
    return res;
}

// Z-affine k-consistency: k-consistency, then integer feasibility of L_k.
inline auto run_z_affine(const RelStructure & a, const RelStructure & t, const HierarchyOptions & opt)
    -> HierarchyResult
{
    HierarchyResult res = run_kcons(a, t, opt);
    if (res.accepted != Verdict::Pass)
        return res;
    auto & f = *res.family;
    auto & it = res.iterations.back();
    RelationIndex idx(t);
    // A global homomorphism restricts to a 0/1 solution.
    try {
        HomSearch search(a, idx, all_elements(a));
        search.set_node_limit(opt.search_nodes);
        std::optional<std::vector<int>> g;
        search.run([&](const std::vector<int> & v) {
            g = v;
            return false;
        });
        if (g && indicator_codes(f, *g)) {
            res.global_homs.push_back(*g);
            it.by_global_hom = 1;
            return res;
        }
    }
    catch (const BudgetExceeded &) {
    }
    auto off = f.offsets();
    for (auto & w : opt.witnesses) {
        auto cand = w(f, 0, 0);
        if (cand && cand->size() == off.back()
            && satisfies_Lk(f, [&](std::size_t x, std::size_t i) -> const Int & { return (*cand)[off[x] + i]; })) {
            res.solutions.push_back(std::move(*cand));
            it.by_witness = 1;
            return res;
        }
    }
    auto sys = build_Lk(f, false);
    auto sol = solve_integer(sys, false, opt.solver);
    it.by_solver = sol.feasible == Verdict::Pass;
    if (sol.feasible == Verdict::Pass)
        res.solutions.push_back(std::move(sol.x));
    else if (sol.feasible == Verdict::Unverified)
        it.unresolved = 1;
    res.accepted = sol.feasible;
    return res;
}

// Cohomological k-consistency with batch removal: each round takes the
// largest k-consistent subfamily, then removes every phi in H(X) for which
// L_k(H) has no solution with x_{X,phi} = 1 and x_{X,psi} = 0 for the other
// psi in H(X).
inline auto run_cohomological(const RelStructure & a, const RelStructure & t, const HierarchyOptions & opt)
    -> HierarchyResult
{
    HierarchyResult res;
    res.k = opt.k;
    res.warnings = detail::arity_warnings(a, opt.k);
    auto shared = std::make_shared<const SubsetSpace>(a.size(), opt.k, opt.max_subsets);
    const auto & sp = *shared;
    auto f = initial_family(a, t, shared);
    RelationIndex idx(t);
    auto homs = detail::random_global_homs(a, idx, opt.random_homs, opt.seed, opt.search_nodes);
    for (;;) {
        IterationTrace it;
        it.consistency_sweeps = max_k_consistent(f);
        it.family_size = f.total();
        if (f.any_empty()) {
            res.iterations.push_back(it);
            res.accepted = Verdict::Fail;
            res.family = std::move(f);
            return res;
        }
        auto off = f.offsets();
        const std::size_t total = off.back();
        // Covering certificate per variable.
        std::vector<PinCertificate> cert(total);
        std::vector<char> covered(total, 0);
        std::vector<std::vector<int>> live_homs;
        std::vector<IntVector> solutions;
        auto cover_with_hom = [&](const std::vector<int> & g) {
            auto codes = indicator_codes(f, g);
            if (! codes)
                return false;
            int id = int(live_homs.size());
            live_homs.push_back(g);
            for (std::size_t x = 0; x < sp.count(); ++x) {
                auto v = off[x] + std::size_t((*codes)[x]);
                if (! covered[v]) {
                    covered[v] = 1;
                    cert[v] = {CertificateKind::GlobalHom, id};
                    ++it.by_global_hom;
                }
            }
            return true;
        };
        auto cover_with_solution = [&](IntVector x_sol, CertificateKind kind) {
            int id = int(solutions.size());
            bool any = false;
            for (std::size_t x = 0; x < sp.count(); ++x) {
                int one = -1;
                bool clean = true;
                for (std::size_t i = 0; i < f.homs[x].size() && clean; ++i) {
                    auto & v = x_sol[off[x] + i];
                    if (v == 1 && one < 0)
                        one = int(i);
                    else if (v != 0)
                        clean = false;
                }
                if (clean && one >= 0 && ! covered[off[x] + std::size_t(one)]) {
                    covered[off[x] + std::size_t(one)] = 1;
                    cert[off[x] + std::size_t(one)] = {kind, id};
                    any = true;
                    if (kind == CertificateKind::Witness)
                        ++it.by_witness;
                    else
                        ++it.by_solver;
                }
            }
            if (any)
                solutions.push_back(std::move(x_sol));
        };
        for (auto & g : homs)
            cover_with_hom(g);
        std::optional<PinnedSolver> solver;
        std::optional<LinearSystemZ> sys;
        std::vector<char> drop(total, 0);
        bool unresolved = false;
        for (std::size_t x = 0; x < sp.count(); ++x) {
            const int j = sp.size(x);
            for (std::size_t i = 0; i < f.homs[x].size(); ++i) {
                const std::size_t v = off[x] + i;
                if (covered[v])
                    continue;
                // A global homomorphism extending phi.
                std::vector<int> pre(a.size(), -1);
                for (int p = 0; p < j; ++p)
                    pre[sp.element(x, p)] = f.coder.digit(f.homs[x][i], p);
                std::optional<std::vector<int>> g;
                try {
                    HomSearch search(a, idx, all_elements(a));
                    search.set_node_limit(opt.search_nodes);
                    search.run([&](const std::vector<int> & vals) {
                        g = vals;
                        return false;
                    }, pre);
                }
                catch (const BudgetExceeded &) {
                }
                if (g && cover_with_hom(*g)) {
                    homs.push_back(*g);
                    if (covered[v])
                        continue;
                }
                for (auto & w : opt.witnesses) {
                    auto cand = w(f, x, int(i));
                    if (! cand || cand->size() != total)
                        continue;
                    if (! satisfies_Lk(f, [&](std::size_t xx, std::size_t ii) -> const Int & { return (*cand)[off[xx] + ii]; }))
                        continue;
                    cover_with_solution(std::move(*cand), CertificateKind::Witness);
                    if (covered[v])
                        break;
                }
                if (covered[v])
                    continue;
                if (! solver) {
                    sys.emplace(build_Lk(f, false));
                    solver.emplace(*sys, opt.solver);
                }
                std::vector<std::pair<int, Int>> pins;
                for (std::size_t s = 0; s < f.homs[x].size(); ++s)
                    pins.emplace_back(int(off[x] + s), s == i ? 1 : 0);
                auto sol = solver->solve(pins);
                if (sol.feasible == Verdict::Pass)
                    cover_with_solution(std::move(sol.x), CertificateKind::Solver);
                else if (sol.feasible == Verdict::Fail) {
                    drop[v] = 1;
                    it.removed.emplace_back(x, f.homs[x][i]);
                }
                else {
                    unresolved = true;
                    ++it.unresolved;
                }
            }
        }
        res.iterations.push_back(it);
        if (unresolved) {
            res.accepted = Verdict::Unverified;
            res.family = std::move(f);
            return res;
        }
        if (it.removed.empty()) {
            res.accepted = Verdict::Pass;
            if (opt.keep_certificates) {
                res.global_homs = std::move(live_homs);
                res.solutions = std::move(solutions);
                res.certificates.resize(sp.count());
                for (std::size_t x = 0; x < sp.count(); ++x)
                    for (std::size_t i = 0; i < f.homs[x].size(); ++i)
                        res.certificates[x].push_back(cert[off[x] + i]);
            }
            res.family = std::move(f);
            return res;
        }
        for (std::size_t x = 0; x < sp.count(); ++x) {
            std::vector<std::uint32_t> keep;
            for (std::size_t i = 0; i < f.homs[x].size(); ++i)
                if (! drop[off[x] + i])
                    keep.push_back(f.homs[x][i]);
            f.homs[x] = std::move(keep);
        }
    }
}

}
