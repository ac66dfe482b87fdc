#pragma once

#include "csplab/boolean_ideal.hpp"
#include "csplab/closure.hpp"
#include "csplab/consistency.hpp"
#include "csplab/encoding.hpp"
#include "csplab/json_io.hpp"
#include "csplab/rng.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace csplab {

// Maps a sorted vertex set to its closure.
using ClosureFn = std::function<ClosureResult(const std::vector<int> &)>;

struct ClosureOverflow : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

// R(m) = reduction of m modulo the ideal of hom(A[cl(m)], T) under a lex
// order, extended linearly. Outputs are memoized and asserted integral.
class RopHandle
{
public:
    RopHandle(const RelStructure & a, const RelStructure & t, ClosureFn cl, LexOrder ord,
        std::size_t hom_cap = default_hom_cap) :
        a_(a), t_(t), idx_(t), cl_(std::move(cl)), ord_(std::move(ord)), hom_cap_(hom_cap)
    {
        check_compatible(a, t);
        if (ord_.elems() != a.size() || ord_.vals() != t.size())
            throw std::invalid_argument("lex order does not match the instance and template");
    }

    auto instance() const -> const RelStructure & { return a_; }
    auto target() const -> const RelStructure & { return t_; }
    auto index() const -> const RelationIndex & { return idx_; }
    auto order() const -> const LexOrder & { return ord_; }
    auto memo_size() const -> std::size_t { return memo_.size(); }

    // cl of a vertex set; throws ClosureOverflow when the closure is undefined.
    auto closure(std::vector<int> verts) -> const std::vector<int> &
    {
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        auto it = closures_.find(verts);
        if (it == closures_.end()) {
            auto r = cl_(verts);
            if (r.verdict != Verdict::Pass)
                throw ClosureOverflow("closure outgrew its budget");
            std::sort(r.set.begin(), r.set.end());
            if (! std::includes(r.set.begin(), r.set.end(), verts.begin(), verts.end()))
                throw std::logic_error("closure does not contain its argument");
            it = closures_.emplace(std::move(verts), std::move(r.set)).first;
        }
        return it->second;
    }

    auto closure_of(const Monomial & m) -> const std::vector<int> & { return closure(vertices(m)); }

    // Homomorphism points of A[X] packed for reduction, cached per vertex set.
    auto points(const std::vector<int> & x) -> const PackedPoints &
    {
        auto it = points_.find(x);
        if (it == points_.end())
            it = points_.emplace(x, std::make_unique<PackedPoints>(hom_point_set(a_, idx_, x, hom_cap_), ord_)).first;
        return *it->second;
    }

    auto apply(const Monomial & m) -> const Polynomial &
    {
        auto it = memo_.find(m);
        if (it != memo_.end())
            return it->second;
        const auto & cl = closure_of(m);
        auto r = reduce(points(cl), m);
        if (! all_integral(r))
            throw std::logic_error("pseudo-reduction produced a non-integral coefficient");
        return memo_.emplace(m, std::move(r)).first->second;
    }

    auto apply(const Polynomial & p) -> Polynomial
    {
        Polynomial out;
        for (auto & [m, c] : p)
            for (auto & [mm, cc] : apply(m))
                add_term(out, mm, c * cc);
        return out;
    }

    template <typename Visit>
    auto for_each_output(Visit && visit) const -> void
    {
        for (auto & [m, r] : memo_)
            visit(m, r);
    }

private:
    RelStructure a_, t_;
    RelationIndex idx_;
    ClosureFn cl_;
    LexOrder ord_;
    std::size_t hom_cap_;
    std::map<std::vector<int>, std::vector<int>> closures_;
    std::map<std::vector<int>, std::unique_ptr<PackedPoints>> points_;
    std::unordered_map<Monomial, Polynomial, MonomialHash> memo_;
};

// ---------------------------------------------------------------------------
// Closures as operator inputs.

inline auto global_closure(int n) -> ClosureFn
{
    return [n](const std::vector<int> &) {
        ClosureResult r;
        for (int v = 0; v < n; ++v)
            r.set.push_back(v);
        return r;
    };
}

inline auto identity_closure() -> ClosureFn
{
    return [](const std::vector<int> & u) {
        ClosureResult r;
        r.set = u;
        return r;
    };
}

inline auto graph_closure_fn(Adjacency adj, std::vector<int> rank, std::size_t max_size) -> ClosureFn
{
    return [adj = std::move(adj), rank = std::move(rank), max_size](const std::vector<int> & u) {
        return graph_closure(adj, rank, u, max_size);
    };
}

inline auto bw_closure_fn(std::shared_ptr<BwClosure> bw, std::size_t max_size) -> ClosureFn
{
    return [bw = std::move(bw), max_size](const std::vector<int> & u) {
        auto r = bw->closure(u);
        if (r.set.size() > max_size)
            r.verdict = Verdict::Unverified;
        return r;
    };
}

// Lex order with x_{u,i} above x_{v,j} whenever u is ranked above v.
inline auto order_from_rank(const std::vector<int> & rank, int vals) -> LexOrder
{
    std::vector<int> els(rank.size());
    for (std::size_t v = 0; v < rank.size(); ++v)
        els[v] = int(v);
    std::sort(els.begin(), els.end(), [&](int a, int b) { return rank[a] > rank[b]; });
    return LexOrder::from_elements(int(rank.size()), vals, els);
}

// ---------------------------------------------------------------------------
// Verification.

struct RopCheck
{
    RopCheck() = default;
    explicit RopCheck(std::string n) : name(std::move(n)) {}

    std::string name;
    Verdict verdict = Verdict::Pass;
    std::size_t checked = 0;
    std::size_t skipped = 0;  // inputs outside the operator's domain (closure overflow)
    Json counterexample;
};

struct RopReport
{
    Verdict verdict = Verdict::Pass;
    std::vector<RopCheck> checks;

    auto add(RopCheck c) -> void
    {
        if (c.verdict == Verdict::Fail)
            verdict = Verdict::Fail;
        else if (c.verdict == Verdict::Unverified && verdict == Verdict::Pass)
            verdict = Verdict::Unverified;
        checks.push_back(std::move(c));
    }
};

inline auto check_to_json(const RopCheck & c) -> Json
{
    Json j{{"name", c.name}, {"verdict", to_string(c.verdict)}, {"checked", c.checked}, {"skipped", c.skipped}};
    if (! c.counterexample.is_null())
        j["counterexample"] = c.counterexample;
    return j;
}

inline auto report_to_json(const RopReport & r) -> Json
{
    Json checks = Json::array();
    for (auto & c : r.checks)
        checks.push_back(check_to_json(c));
    return Json{{"verdict", to_string(r.verdict)}, {"checks", checks}};
}

struct RopVerifyOptions
{
    int degree = 2;              // D
    int exhaustive_degree = -1;  // property 3 for deg m <= this is exhaustive; default D - 1
    std::size_t samples = 500;   // sampled pairs for deg m in (exhaustive_degree, D - 1]
    std::uint64_t seed = 0;
};

namespace detail {

    inline auto all_vars(const RelStructure & a, const RelStructure & t) -> std::vector<VarId>
    {
        std::vector<VarId> v;
        for (int e = 0; e < a.size(); ++e)
            for (int i = 0; i < t.size(); ++i)
                v.push_back({e, i});
        return v;
    }

    // Every multilinear monomial of exactly the given degree, in index order.
    template <typename Visit>
    auto for_each_monomial(const std::vector<VarId> & vars, int degree, Visit && visit) -> bool
    {
        std::vector<int> pick(degree);
        for (int i = 0; i < degree; ++i)
            pick[i] = i;
        const int n = int(vars.size());
        if (degree > n)
            return true;
        for (;;) {
            Monomial m;
            for (int i : pick)
                m.push_back(vars[i]);
            if (! visit(make_monomial(std::move(m))))
                return false;
            int i = degree - 1;
            while (i >= 0 && pick[i] == n - degree + i)
                --i;
            if (i < 0)
                return true;
            ++pick[i];
            for (int j = i + 1; j < degree; ++j)
                pick[j] = pick[j - 1] + 1;
        }
    }

    inline auto random_monomial(const std::vector<VarId> & vars, int degree, CounterRng & rng) -> Monomial
    {
        std::vector<VarId> m;
        while (int(m.size()) < degree) {
            auto x = vars[rng.below(vars.size())];
            if (std::find(m.begin(), m.end(), x) == m.end())
                m.push_back(x);
        }
        return make_monomial(std::move(m));
    }

    // Property 3 at one pair; nullopt when it holds.
    inline auto commutation_failure(RopHandle & r, VarId x, const Monomial & m) -> std::optional<Json>
    {
        auto lhs = r.apply(times_var(monomial_poly(m), x));
        auto rhs = r.apply(times_var(r.apply(monomial_poly(m)), x));
        if (lhs == rhs)
            return std::nullopt;
        return Json{{"variable", monomial_to_json({x})}, {"monomial", monomial_to_json(m)},
            {"R(x m)", polynomial_to_json(lhs)}, {"R(x R(m))", polynomial_to_json(rhs)}};
    }

}

// The three operator axioms, plus integrality and the containment of output
// closures in the input closure, on the outputs computed along the way.
inline auto verify_rop_properties(RopHandle & r, const EncodedCsp & enc, const RopVerifyOptions & opt) -> RopReport
{
    RopReport report;
    const int d = opt.degree;
    const int exhaustive = opt.exhaustive_degree < 0 ? d - 1 : opt.exhaustive_degree;
    auto vars = detail::all_vars(r.instance(), r.target());
    auto guard = [](RopCheck & c, auto && body) {
        try {
            body();
        }
        catch (const ClosureOverflow &) {
            ++c.skipped;
        }
    };

    RopCheck one{"R(1) = 1"};
    guard(one, [&] {
        ++one.checked;
        auto got = r.apply(constant(1));
        if (got != constant(1)) {
            one.verdict = Verdict::Fail;
            one.counterexample = Json{{"R(1)", polynomial_to_json(got)}};
        }
    });
    if (one.skipped)
        one.verdict = Verdict::Unverified;
    report.add(std::move(one));

    RopCheck axioms{"R(p) = 0 on axioms"};
    for (std::size_t i = 0; i < enc.axioms.size() && axioms.verdict != Verdict::Fail; ++i) {
        if (degree(enc.axioms[i]) > d + 1)
            continue;
        guard(axioms, [&] {
            ++axioms.checked;
            auto got = r.apply(enc.axioms[i]);
            if (! got.empty()) {
                axioms.verdict = Verdict::Fail;
                axioms.counterexample = Json{{"axiom", polynomial_to_json(enc.axioms[i])},
                    {"family", family_name(enc.family[i])}, {"R(p)", polynomial_to_json(got)}};
            }
        });
    }
    if (axioms.verdict == Verdict::Pass && axioms.skipped)
        axioms.verdict = Verdict::Unverified;
    report.add(std::move(axioms));

    RopCheck comm{"R(x m) = R(x R(m))"};
    for (int deg = 0; deg <= std::min(exhaustive, d - 1) && comm.verdict != Verdict::Fail; ++deg)
        detail::for_each_monomial(vars, deg, [&](const Monomial & m) {
            for (auto & x : vars) {
                guard(comm, [&] {
                    ++comm.checked;
                    if (auto bad = detail::commutation_failure(r, x, m)) {
                        comm.verdict = Verdict::Fail;
                        comm.counterexample = *bad;
                    }
                });
                if (comm.verdict == Verdict::Fail)
                    return false;
            }
            return true;
        });
    CounterRng rng(opt.seed, 0x5a3);
    for (int deg = exhaustive + 1; deg <= d - 1 && comm.verdict != Verdict::Fail; ++deg)
        for (std::size_t k = 0; k < opt.samples && comm.verdict != Verdict::Fail; ++k) {
            auto m = detail::random_monomial(vars, deg, rng);
            auto x = vars[rng.below(vars.size())];
            guard(comm, [&] {
                ++comm.checked;
                if (auto bad = detail::commutation_failure(r, x, m)) {
                    comm.verdict = Verdict::Fail;
                    comm.counterexample = *bad;
                }
            });
        }
    if (comm.verdict == Verdict::Pass && comm.skipped)
        comm.verdict = Verdict::Unverified;
    report.add(std::move(comm));

    RopCheck integral{"integral outputs"};
    RopCheck contained{"output closures inside input closure"};
    r.for_each_output([&](const Monomial & m, const Polynomial & p) {
        ++integral.checked;
        if (! all_integral(p) && integral.verdict == Verdict::Pass) {
            integral.verdict = Verdict::Fail;
            integral.counterexample = Json{{"monomial", monomial_to_json(m)}, {"R(m)", polynomial_to_json(p)}};
        }
    });
    std::vector<std::pair<Monomial, Polynomial>> outputs;
    r.for_each_output([&](const Monomial & m, const Polynomial & p) { outputs.emplace_back(m, p); });
    for (auto & [m, p] : outputs) {
        if (contained.verdict == Verdict::Fail)
            break;
        guard(contained, [&] {
            auto outer = r.closure_of(m);
            for (auto & [mm, c] : p) {
                ++contained.checked;
                const auto & inner = r.closure_of(mm);
                if (! std::includes(outer.begin(), outer.end(), inner.begin(), inner.end())) {
                    contained.verdict = Verdict::Fail;
                    contained.counterexample = Json{{"monomial", monomial_to_json(m)}, {"term", monomial_to_json(mm)}};
                    return;
                }
            }
        });
    }
    report.add(std::move(integral));
    report.add(std::move(contained));
    return report;
}

struct ConditionOptions
{
    int degree = 2;
    int exhaustive_degree = 1;   // vertex sets up to this size checked exhaustively
    std::size_t samples = 200;   // sampled monomials above it, up to degree
    std::size_t sub_samples = 8; // sampled m' per monomial for reducibility
    std::uint64_t seed = 0;
};

// Satisfiability: A[cl(m)] -> T. Reducibility: for m' with cl(m') inside
// cl(m), m' reducible modulo <cl(m')> iff modulo <cl(m)>.
inline auto verify_conditions(RopHandle & r, const ConditionOptions & opt) -> RopReport
{
    RopReport report;
    const int n = r.instance().size();
    const int q = r.target().size();
    RopCheck sat{"satisfiable closures"};
    RopCheck red{"reducibility agrees"};
    CounterRng rng(opt.seed, 0xc0d);

    auto check_set = [&](const std::vector<int> & verts) {
        try {
            const auto cl = r.closure(verts);
            ++sat.checked;
            if (r.points(cl).size() == 0 && sat.verdict == Verdict::Pass) {
                sat.verdict = Verdict::Fail;
                sat.counterexample = Json{{"vertices", verts}, {"closure", cl}};
            }
            // m' over cl(m): m itself plus random sub-monomials.
            Monomial m;
            for (int v : verts)
                m.push_back({v, int(rng.below(std::uint64_t(q)))});
            std::vector<Monomial> subs{m};
            for (std::size_t k = 0; k < opt.sub_samples && ! cl.empty(); ++k) {
                Monomial mm;
                int deg = 1 + int(rng.below(std::min<std::uint64_t>(cl.size(), std::uint64_t(opt.degree))));
                for (int j = 0; j < deg; ++j)
                    mm.push_back({cl[rng.below(cl.size())], int(rng.below(std::uint64_t(q)))});
                subs.push_back(make_monomial(std::move(mm)));
            }
            for (auto & mm : subs) {
                try {
                    const auto inner = r.closure_of(mm);
                    if (! std::includes(cl.begin(), cl.end(), inner.begin(), inner.end()))
                        continue;
                    ++red.checked;
                    bool a = lex_reducible(r.points(inner), mm);
                    bool b = lex_reducible(r.points(cl), mm);
                    if (a != b && red.verdict == Verdict::Pass) {
                        red.verdict = Verdict::Fail;
                        red.counterexample = Json{{"m", monomial_to_json(m)}, {"m'", monomial_to_json(mm)},
                            {"reducible modulo cl(m')", a}, {"reducible modulo cl(m)", b}};
                    }
                }
                catch (const ClosureOverflow &) {
                    ++red.skipped;
                }
            }
        }
        catch (const ClosureOverflow &) {
            ++sat.skipped;
        }
    };

    for (int size = 0; size <= std::min(opt.exhaustive_degree, opt.degree); ++size) {
        std::vector<int> pick(size);
        for (int i = 0; i < size; ++i)
            pick[i] = i;
        if (size > n)
            break;
        for (;;) {
            check_set(pick);
            int i = size - 1;
            while (i >= 0 && pick[i] == n - size + i)
                --i;
            if (i < 0)
                break;
            ++pick[i];
            for (int j = i + 1; j < size; ++j)
                pick[j] = pick[j - 1] + 1;
        }
    }
    for (int size = opt.exhaustive_degree + 1; size <= std::min(opt.degree, n); ++size)
        for (std::size_t k = 0; k < opt.samples; ++k) {
            std::vector<int> verts;
            while (int(verts.size()) < size) {
                int v = int(rng.below(std::uint64_t(n)));
                if (std::find(verts.begin(), verts.end(), v) == verts.end())
                    verts.push_back(v);
            }
            std::sort(verts.begin(), verts.end());
            check_set(verts);
        }
    if (sat.verdict == Verdict::Pass && sat.skipped)
        sat.verdict = Verdict::Unverified;
    if (red.verdict == Verdict::Pass && red.skipped)
        red.verdict = Verdict::Unverified;
    report.add(std::move(sat));
    report.add(std::move(red));
    return report;
}

// Integer coefficients on every listed monomial.
inline auto check_integrality(RopHandle & r, const std::vector<Monomial> & ms) -> RopCheck
{
    RopCheck c{"integral outputs"};
    for (auto & m : ms) {
        try {
            ++c.checked;
            r.apply(m);  // asserts integrality itself
        }
        catch (const ClosureOverflow &) {
            ++c.skipped;
        }
        catch (const std::logic_error & e) {
            c.verdict = Verdict::Fail;
            c.counterexample = Json{{"monomial", monomial_to_json(m)}, {"error", e.what()}};
            return c;
        }
    }
    if (c.skipped)
        c.verdict = Verdict::Unverified;
    return c;
}

// ---------------------------------------------------------------------------
// Hierarchy certificates from the operator.

inline auto hom_monomial(const Family & f, std::size_t x, std::uint32_t code) -> Monomial
{
    Monomial m;
    for (int p = 0; p < f.space->size(x); ++p)
        m.push_back({f.space->element(x, p), f.coder.digit(code, p)});
    return make_monomial(std::move(m));
}

// kappa_R(X): the homomorphisms phi on X with R(m_phi) != 0. Throws
// ClosureOverflow when some closure is undefined.
inline auto support_family(RopHandle & r, int k, std::size_t max_subsets = 5000000) -> Family
{
    auto f = initial_family(r.instance(), r.target(),
        std::make_shared<const SubsetSpace>(r.instance().size(), k, max_subsets));
    for (std::size_t x = 0; x < f.space->count(); ++x) {
        std::vector<std::uint32_t> keep;
        for (auto c : f.homs[x])
            if (! r.apply(hom_monomial(f, x, c)).empty())
                keep.push_back(c);
        f.homs[x] = std::move(keep);
    }
    return f;
}

// The L_k identities as polynomial identities on the outputs of R, and
// k-consistency of the support.
inline auto verify_Lk_polynomial(RopHandle & r, const Family & support) -> RopReport
{
    RopReport report;
    const auto & sp = *support.space;
    RopCheck base{"R(sum of kappa_R(X)) = 1"};
    RopCheck cons{"R-image consistency rows"};
    RopCheck kcons{"kappa_R is k-consistent"};
    auto out = [&](std::size_t x, std::size_t i) { return r.apply(hom_monomial(support, x, support.homs[x][i])); };
    for (std::size_t x = 0; x < sp.count() && base.verdict == Verdict::Pass; ++x) {
        Polynomial s;
        for (std::size_t i = 0; i < support.homs[x].size(); ++i)
            s = s + out(x, i);
        ++base.checked;
        if (s != constant(1)) {
            base.verdict = Verdict::Fail;
            base.counterexample = Json{{"X", sp.elements(x)}, {"sum", polynomial_to_json(s)}};
        }
    }
    for (std::size_t x = 1; x < sp.count() && cons.verdict == Verdict::Pass; ++x) {
        const int j = sp.size(x);
        for (unsigned mask = 0; mask + 1 < (1u << j) && cons.verdict == Verdict::Pass; ++mask) {
            std::size_t y = sp.sub(x, mask);
            std::vector<Polynomial> sums(support.homs[y].size());
            bool orphan = false;
            for (std::size_t i = 0; i < support.homs[x].size(); ++i) {
                int p = support.find(y, support.coder.select(support.homs[x][i], j, mask));
                if (p < 0)
                    orphan = true;
                else
                    sums[p] = sums[p] + out(x, i);
            }
            for (std::size_t p = 0; p < sums.size() && ! orphan; ++p) {
                ++cons.checked;
                if (sums[p] != out(y, p)) {
                    cons.verdict = Verdict::Fail;
                    cons.counterexample = Json{{"X", sp.elements(x)}, {"Y", sp.elements(y)},
                        {"psi", support.coder.decode(support.homs[y][p], sp.size(y))}};
                    break;
                }
            }
            if (orphan) {
                cons.verdict = Verdict::Fail;
                cons.counterexample = Json{{"X", sp.elements(x)}, {"Y", sp.elements(y)}, {"reason", "restriction outside the support"}};
            }
        }
    }
    auto copy = support;
    max_k_consistent(copy);
    kcons.checked = 1;
    if (copy != support || support.any_empty()) {
        kcons.verdict = Verdict::Fail;
        kcons.counterexample = Json{{"reason", support.any_empty() ? "empty hom set" : "not a fixpoint"}};
    }
    report.add(std::move(base));
    report.add(std::move(cons));
    report.add(std::move(kcons));
    return report;
}

// The vector x_{Y,psi} = R(m_psi) evaluated at mu, where mu is a homomorphism
// on A[cl(X)] extending phi (zero on all other variables). It solves L_k(f)
// with x_{X,phi} = 1 whenever R is a pseudo-reduction operator and f contains
// the support of R; callers verify it by substitution.
inline auto fooling_solution(RopHandle & r, const Family & f, std::size_t x, int hom) -> std::optional<IntVector>
{
    const auto & sp = *f.space;
    std::vector<int> xs = sp.elements(x);
    const auto cl = r.closure(xs);
    std::vector<int> pre(cl.size(), -1);
    for (std::size_t i = 0; i < cl.size(); ++i) {
        auto it = std::find(xs.begin(), xs.end(), cl[i]);
        if (it != xs.end())
            pre[i] = f.coder.digit(f.homs[x][std::size_t(hom)], int(it - xs.begin()));
    }
    auto mu = find_hom(r.instance(), r.index(), cl, pre);
    if (! mu)
        return std::nullopt;
    std::vector<int> value(r.instance().size(), -1);
    for (std::size_t i = 0; i < cl.size(); ++i)
        value[cl[i]] = (*mu)[i];
    auto point = [&](VarId v) { return value[v.elem] == v.val; };
    auto off = f.offsets();
    IntVector out(off.back());
    for (std::size_t y = 0; y < sp.count(); ++y)
        for (std::size_t i = 0; i < f.homs[y].size(); ++i) {
            Rat v = evaluate(r.apply(hom_monomial(f, y, f.homs[y][i])), point);
            if (! is_integral(v))
                throw std::logic_error("evaluation of an integral polynomial is not an integer");
            out[off[y] + i] = v.get_num();
        }
    return out;
}

// fooling_solution as a witness source for the hierarchy runs.
inline auto rop_witness(RopHandle & r) -> WitnessProvider
{
    return [&r](const Family & f, std::size_t x, int hom) -> std::optional<IntVector> {
        try {
            return fooling_solution(r, f, x, hom);
        }
        catch (const ClosureOverflow &) {
            return std::nullopt;
        }
    };
}

}
