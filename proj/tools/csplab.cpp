#include "csplab/experiment.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace csplab;

namespace {

// Every command writes one JSON document to --out or stdout.
auto emit(const Json & j, const std::string & out) -> void
{
    if (out.empty())
        std::cout << j.dump(2) << "\n";
    else
        write_json_file(out, j);
}

auto split(const std::string & s, char sep) -> std::vector<std::string>
{
    std::vector<std::string> parts;
    std::stringstream in(s);
    for (std::string p; std::getline(in, p, sep);)
        if (! p.empty())
            parts.push_back(p);
    return parts;
}

auto parse_doubles(const std::string & s, std::size_t count, const std::string & what) -> std::vector<double>
{
    auto parts = split(s, ',');
    if (parts.size() != count)
        throw std::invalid_argument(what + " expects " + std::to_string(count) + " comma-separated values");
    std::vector<double> out;
    for (auto & p : parts)
        out.push_back(std::stod(p));
    return out;
}

// "builtin:nae3", "builtin:kc", "builtin:k4", or a path to a structure file.
auto load_template(const std::string & ref) -> RelStructure
{
    const std::string prefix = "builtin:";
    if (ref.rfind(prefix, 0) == 0)
        return builtin_template(ref.substr(prefix.size()));
    return structure_from_json(read_json_file(ref));
}

auto load_structure(const std::string & path) -> RelStructure { return structure_from_json(read_json_file(path)); }

auto property_json(const PropertyCheck & c, const RelStructure * names = nullptr) -> Json
{
    Json j{{"verdict", to_string(c.verdict)}, {"examined", c.examined}};
    if (! c.witness.empty()) {
        if (names) {
            std::vector<std::string> w;
            for (int v : c.witness)
                w.push_back(names->names[v]);
            j["witness"] = w;
        }
        else
            j["witness"] = c.witness;
    }
    return j;
}

// ---------------------------------------------------------------------------
// Operator description files.

inline constexpr const char * rop_format = "csplab-rop-1";

struct BuiltOperator
{
    RelStructure a, t;
    std::shared_ptr<BwClosure> bw;
    std::unique_ptr<RopHandle> rop;
    int degree = 2;
};

auto order_json(const RelStructure & a, const std::vector<int> & largest_first) -> Json
{
    std::vector<std::string> names;
    for (int e : largest_first)
        names.push_back(a.names[e]);
    return names;
}

auto build_operator(const Json & desc) -> BuiltOperator
{
    if (desc.value("format", "") != rop_format)
        throw std::invalid_argument("not an operator description");
    BuiltOperator b;
    b.a = structure_from_json(desc.at("instance"));
    b.t = structure_from_json(desc.at("template"));
    b.degree = desc.at("degree").get<int>();
    auto h = hypergraph_of(b.a);
    auto & cl = desc.at("closure");
    const auto kind = cl.at("kind").get<std::string>();
    const auto max_size = cl.at("max_size").get<std::size_t>();
    std::vector<int> order;
    for (auto & name : desc.at("order"))
        order.push_back(b.a.element(name.get<std::string>()));
    auto lex = LexOrder::from_elements(b.a.size(), b.t.size(), order);
    ClosureFn fn;
    if (kind == "graph") {
        std::vector<int> rank(std::size_t(b.a.size()), 0);
        for (auto & [name, r] : cl.at("rank").items())
            rank[std::size_t(b.a.element(name))] = r.get<int>();
        fn = graph_closure_fn(gaifman_adjacency(h), rank, max_size);
    }
    else if (kind == "bw") {
        auto mode = cl.value("mode", "enumerate") == "peel" ? BwMode::Peel : BwMode::Enumerate;
        b.bw = std::make_shared<BwClosure>(h, cl.at("ell").get<int>(), cl.at("s").get<int>(), mode);
        fn = bw_closure_fn(b.bw, max_size);
    }
    else
        throw std::invalid_argument("closure kind must be graph or bw");
    b.rop = std::make_unique<RopHandle>(b.a, b.t, std::move(fn), std::move(lex));
    return b;
}

// Closure sizes of single elements; a quick sanity view of the operator.
auto singleton_summary(RopHandle & r) -> Json
{
    std::size_t largest = 0, overflow = 0, total = 0;
    const int n = r.instance().size();
    for (int v = 0; v < n; ++v) {
        try {
            auto sz = r.closure({v}).size();
            largest = std::max(largest, sz);
            total += sz;
        }
        catch (const ClosureOverflow &) {
            ++overflow;
        }
    }
    const std::size_t defined = std::size_t(n) - overflow;
    return Json{{"elements", n}, {"largest", largest}, {"overflow", overflow},
        {"mean", defined ? double(total) / double(defined) : 0.0}};
}

auto all_variables(const RopHandle & r) -> std::vector<VarId>
{
    std::vector<VarId> vars;
    for (int e = 0; e < r.instance().size(); ++e)
        for (int i = 0; i < r.target().size(); ++i)
            vars.push_back({e, i});
    return vars;
}

// Degree-1 monomials plus `samples` seeded degree-2 monomials.
auto integrality_monomials(const RopHandle & r, std::size_t samples, std::uint64_t seed) -> std::vector<Monomial>
{
    auto vars = all_variables(r);
    std::vector<Monomial> ms;
    for (auto & x : vars)
        ms.push_back(make_monomial({x}));
    if (vars.size() < 2)
        return ms;
    CounterRng rng(seed, 0x1e7);
    for (std::size_t i = 0; i < samples; ++i) {
        auto x = vars[rng.below(vars.size())];
        auto y = vars[rng.below(vars.size())];
        if (x.elem != y.elem)
            ms.push_back(make_monomial({x, y}));
    }
    return ms;
}

// ---------------------------------------------------------------------------
// Commands.

auto cmd_gen_regular(int n, int d, std::uint64_t seed, const std::string & out) -> int
{
    emit(structure_to_json(sample_regular_graph(n, d, seed)), out);
    return 0;
}

auto cmd_gen_csp(int n, int t, int m, const std::string & templ, std::uint64_t seed, const std::string & out) -> int
{
    auto tt = load_template(templ);
    if (t > 0)
        for (auto & s : tt.signature.symbols)
            if (s.arity != t)
                throw std::invalid_argument("template symbol " + s.name + " has arity " + std::to_string(s.arity)
                    + ", not " + std::to_string(t));
    emit(structure_to_json(sample_csp_instance(n, m, tt, seed)), out);
    return 0;
}

struct CheckArgs
{
    std::string instance, templ, out, sparsity, expansion;
    bool girth = false, chromatic = false, sat = false, per_total = false;
};

auto cmd_check(const CheckArgs & c) -> int
{
    auto a = load_structure(c.instance);
    auto h = hypergraph_of(a);
    Json rep{{"elements", a.size()}, {"edges", h.m()}};
    bool graph = true;
    for (auto & e : h.edges)
        graph = graph && e.size() <= 2;
    if (! c.sparsity.empty()) {
        auto v = parse_doubles(c.sparsity, 2, "--sparsity");
        auto r = graph ? check_graph_sparsity(h, int(v[0]), v[1]) : check_hypergraph_sparsity(h, int(v[0]), v[1]);
        rep["sparsity"] = property_json(r, &a);
        rep["sparsity"]["s"] = int(v[0]);
        rep["sparsity"]["eps"] = v[1];
    }
    if (c.girth) {
        auto g = berge_girth(h);
        rep["girth"] = Json{{"verdict", "pass"}, {"value", g ? Json(*g) : Json("acyclic")}};
    }
    if (! c.expansion.empty()) {
        auto v = parse_doubles(c.expansion, 3, "--expansion");
        auto r = check_expansion(h, int(v[0]), int(v[1]), v[2], c.per_total);
        rep["expansion"] = property_json(r);
        rep["expansion"]["ell"] = int(v[0]);
        rep["expansion"]["s"] = int(v[1]);
        rep["expansion"]["gamma"] = v[2];
    }
    if (c.chromatic) {
        auto r = chromatic_number(gaifman_adjacency(h));
        rep["chromatic"] = Json{{"verdict", to_string(r.verdict)}, {"value", r.chromatic}, {"lower_bound", r.lower_bound}};
    }
    if (c.sat) {
        if (c.templ.empty())
            throw std::invalid_argument("--sat needs --template");
        auto t = load_template(c.templ);
        auto r = exact_satisfiable(a, t);
        Json s{{"verdict", to_string(r.verdict)}, {"nodes", r.nodes}};
        if (r.verdict == Verdict::Pass) {
            Json sol = Json::object();
            for (int e = 0; e < a.size(); ++e)
                sol[a.names[e]] = t.names[r.solution[e]];
            s["solution"] = sol;
        }
        rep["satisfiable"] = s;
    }
    emit(rep, c.out);
    return 0;
}

struct PcArgs
{
    std::string axioms, instance, templ, out;
    int max_degree = 3;
    std::size_t max_columns = 200000;
};

// Axioms come from a file ({"axioms":[poly,...]} or [poly,...]) or from an
// instance and template.
auto cmd_pc_degree(const PcArgs & p) -> int
{
    std::vector<Polynomial> axioms;
    if (! p.axioms.empty()) {
        auto j = read_json_file(p.axioms);
        auto & list = j.is_object() ? j.at("axioms") : j;
        VarNaming nm;
        for (auto & poly : list)
            axioms.push_back(polynomial_from_json(poly, nm));
    }
    else if (! p.instance.empty() && ! p.templ.empty())
        axioms = encode_csp(load_structure(p.instance), load_template(p.templ)).axioms;
    else
        throw std::invalid_argument("pc-degree needs --axioms or --instance with --template");
    PcBudget b;
    b.max_columns = p.max_columns;
    b.max_basis = p.max_columns;
    auto r = min_refutation_degree(axioms, p.max_degree, b);
    Json j{{"verdict", to_string(r.verdict)}, {"basis_size", r.basis_size}, {"elapsed_ms", r.elapsed_ms},
        {"axioms", axioms.size()}};
    if (r.verdict == Verdict::Pass)
        j["degree"] = r.degree;
    else if (r.verdict == Verdict::Fail)
        j["bound"] = r.degree + 1;  // no refutation below this degree
    else
        j["budget_exhausted_at"] = r.degree;
    emit(j, p.out);
    return 0;
}

struct RunArgs
{
    std::string algorithm, instance, templ, trace, out;
    int k = 2;
    std::uint64_t seed = 0;
};

auto trace_json(const HierarchyResult & r, const RelStructure & a, const RelStructure & t) -> Json
{
    Json iters = Json::array();
    const auto * f = r.family ? &*r.family : nullptr;
    auto partial = [&](std::size_t x, std::uint32_t code) {
        Json hom = Json::object();
        auto els = f->space->elements(x);
        auto vals = f->coder.decode(code, int(els.size()));
        for (std::size_t q = 0; q < els.size(); ++q)
            hom[a.names[els[q]]] = t.names[vals[q]];
        return hom;
    };
    for (auto & it : r.iterations) {
        Json removed = Json::array();
        for (auto & [x, code] : it.removed)
            removed.push_back(f ? partial(x, code) : Json{{"subset", x}, {"code", code}});
        iters.push_back(Json{{"family_size", it.family_size}, {"consistency_sweeps", it.consistency_sweeps},
            {"removed", removed}, {"by_global_hom", it.by_global_hom}, {"by_witness", it.by_witness},
            {"by_solver", it.by_solver}, {"unresolved", it.unresolved}});
    }
    // Certificates point into global_homs or solutions by index.
    Json certs = Json::array();
    for (std::size_t x = 0; x < r.certificates.size(); ++x)
        for (std::size_t h = 0; h < r.certificates[x].size(); ++h) {
            auto & c = r.certificates[x][h];
            const char * kind = c.kind == CertificateKind::GlobalHom ? "global_hom"
                : c.kind == CertificateKind::Witness                 ? "witness"
                                                                     : "solver";
            certs.push_back(Json{{"hom", partial(x, f->homs[x][h])}, {"kind", kind}, {"index", c.index}});
        }
    Json homs = Json::array();
    for (auto & g : r.global_homs) {
        Json m = Json::object();
        for (int e = 0; e < a.size(); ++e)
            m[a.names[e]] = t.names[g[e]];
        homs.push_back(m);
    }
    Json sols = Json::array();
    for (auto & v : r.solutions) {
        std::vector<std::string> vals;
        for (auto & c : v)
            vals.push_back(c.get_str());
        sols.push_back(vals);
    }
    return Json{{"iterations", iters}, {"certificates", certs}, {"global_homs", homs}, {"solutions", sols}};
}

auto cmd_run(const RunArgs & r) -> int
{
    auto a = load_structure(r.instance);
    auto t = load_template(r.templ);
    HierarchyOptions opt;
    opt.k = r.k;
    opt.seed = r.seed;
    opt.keep_certificates = ! r.trace.empty();
    HierarchyResult res;
    if (r.algorithm == "kcons")
        res = run_kcons(a, t, opt);
    else if (r.algorithm == "zaffine")
        res = run_z_affine(a, t, opt);
    else
        res = run_cohomological(a, t, opt);
    Json j{{"algorithm", r.algorithm}, {"k", r.k}, {"verdict", to_string(res.accepted)},
        {"iterations", res.iterations.size()}, {"warnings", res.warnings}};
    if (res.family)
        j["family_size"] = res.family->total();
    if (! r.trace.empty())
        write_json_file(r.trace, trace_json(res, a, t));
    emit(j, r.out);
    return 0;
}

struct RopBuildArgs
{
    std::string instance, templ, closure = "bw", order = "auto", mode = "enumerate", out;
    int degree = 2, ell = 5, s = 6;
    std::size_t max_size = 40;
};

auto cmd_rop_build(const RopBuildArgs & b) -> int
{
    auto a = load_structure(b.instance);
    auto t = load_template(b.templ);
    Json cl{{"kind", b.closure}, {"max_size", b.max_size}};
    std::vector<int> largest_first = all_elements(a);
    if (b.closure == "graph") {
        auto col = chromatic_number(gaifman_adjacency(hypergraph_of(a)));
        if (col.verdict != Verdict::Pass)
            throw std::runtime_error("chromatic number search ran out of budget");
        auto rank = colour_class_order(col.colouring);
        Json r = Json::object();
        for (int e = 0; e < a.size(); ++e)
            r[a.names[e]] = rank[e];
        cl["rank"] = r;
        std::sort(largest_first.begin(), largest_first.end(), [&](int x, int y) { return rank[x] > rank[y]; });
    }
    else {
        cl["ell"] = b.ell;
        cl["s"] = b.s;
        cl["mode"] = b.mode;
    }
    Json order;
    if (b.order == "auto")
        order = order_json(a, largest_first);
    else
        order = read_json_file(b.order);
    Json desc{{"format", rop_format}, {"instance", structure_to_json(a)}, {"template", structure_to_json(t)},
        {"degree", b.degree}, {"closure", cl}, {"order", order}};
    auto built = build_operator(desc);
    desc["summary"] = singleton_summary(*built.rop);
    emit(desc, b.out);
    return 0;
}

struct RopVerifyArgs
{
    std::string op, out;
    bool props = false, conditions = false, integrality = false, lk = false;
    int k = 2;
    std::size_t samples = 500;
    std::uint64_t seed = 1;
};

auto cmd_rop_verify(const RopVerifyArgs & v) -> int
{
    auto built = build_operator(read_json_file(v.op));
    auto & r = *built.rop;
    Json rep{{"degree", built.degree}};
    Verdict overall = Verdict::Pass;
    auto fold = [&](Verdict x) {
        if (x == Verdict::Fail || overall == Verdict::Fail)
            overall = Verdict::Fail;
        else if (x == Verdict::Unverified)
            overall = Verdict::Unverified;
    };
    const bool all = ! (v.props || v.conditions || v.integrality || v.lk);
    if (all || v.props) {
        RopVerifyOptions o;
        o.degree = built.degree;
        o.samples = v.samples;
        o.seed = v.seed;
        auto p = verify_rop_properties(r, encode_csp(built.a, built.t), o);
        rep["properties"] = report_to_json(p);
        fold(p.verdict);
    }
    if (all || v.conditions) {
        ConditionOptions o;
        o.degree = built.degree;
        o.samples = v.samples;
        o.seed = v.seed;
        auto c = verify_conditions(r, o);
        rep["conditions"] = report_to_json(c);
        fold(c.verdict);
    }
    if (all || v.integrality) {
        try {
            auto c = check_integrality(r, integrality_monomials(r, v.samples, v.seed));
            rep["integrality"] = check_to_json(c);
            fold(c.verdict);
        }
        catch (const ClosureOverflow & e) {
            rep["integrality"] = Json{{"verdict", "unverified"}, {"reason", e.what()}};
            fold(Verdict::Unverified);
        }
    }
    if (all || v.lk) {
        try {
            auto support = support_family(r, v.k);
            auto l = verify_Lk_polynomial(r, support);
            rep["lk"] = report_to_json(l);
            rep["lk"]["k"] = v.k;
            fold(l.verdict);
        }
        catch (const ClosureOverflow & e) {
            rep["lk"] = Json{{"verdict", "unverified"}, {"reason", e.what()}, {"k", v.k}};
            fold(Verdict::Unverified);
        }
    }
    rep["verdict"] = to_string(overall);
    emit(rep, v.out);
    return overall == Verdict::Fail ? 1 : 0;
}

struct FoolArgs
{
    std::string op, subset, hom, out;
    int k = 2;
};

// The fooling solution pinned at (X, phi), re-verified against L_k.
auto cmd_rop_foolsolve(const FoolArgs & f) -> int
{
    auto built = build_operator(read_json_file(f.op));
    auto & r = *built.rop;
    auto support = support_family(r, f.k);
    std::vector<int> subset;
    for (auto & name : split(f.subset, ','))
        subset.push_back(built.a.element(name));
    std::sort(subset.begin(), subset.end());
    if (std::adjacent_find(subset.begin(), subset.end()) != subset.end() || int(subset.size()) > support.space->k())
        throw std::invalid_argument("--subset needs at most k distinct elements");
    auto hom = read_json_file(f.hom);
    std::vector<int> vals;
    for (int e : subset)
        vals.push_back(built.t.element(hom.at(built.a.names[e]).get<std::string>()));
    const auto x = support.space->index_of(subset);
    const int h = support.find(x, support.coder.encode(vals));
    Json rep{{"k", f.k}, {"subset", split(f.subset, ',')}};
    if (h < 0) {
        rep["verdict"] = "fail";
        rep["reason"] = "the partial homomorphism is not in the support of the operator";
        emit(rep, f.out);
        return 1;
    }
    auto sol = fooling_solution(r, support, x, h);
    if (! sol) {
        rep["verdict"] = "fail";
        rep["reason"] = "no fooling solution";
        emit(rep, f.out);
        return 1;
    }
    const auto off = support.offsets();
    bool ok = satisfies_Lk(support, [&](std::size_t y, std::size_t i) { return (*sol)[off[y] + i]; })
        && (*sol)[off[x] + std::size_t(h)] == 1;
    Json entries = Json::array();
    for (std::size_t y = 0; y < support.homs.size(); ++y)
        for (std::size_t i = 0; i < support.homs[y].size(); ++i) {
            const auto & val = (*sol)[off[y] + i];
            if (val == 0)
                continue;
            auto els = support.space->elements(y);
            auto hv = support.coder.decode(support.homs[y][i], int(els.size()));
            Json phi = Json::object();
            for (std::size_t q = 0; q < els.size(); ++q)
                phi[built.a.names[els[q]]] = built.t.names[hv[q]];
            entries.push_back(Json{{"hom", phi}, {"value", val.get_str()}});
        }
    rep["verdict"] = to_string(verdict_of(ok));
    rep["nonzero"] = entries;
    emit(rep, f.out);
    return ok ? 0 : 1;
}

auto cmd_experiment_run(const std::string & spec_path, const std::string & out) -> int
{
    auto spec = spec_from_json(read_json_file(spec_path));
    std::ofstream file;
    if (! out.empty()) {
        // Append-only: an interrupted run keeps its finished trials.
        file.open(out, std::ios::app);
        if (! file)
            throw std::runtime_error("cannot write " + out);
    }
    std::ostream & sink = out.empty() ? std::cout : file;
    run_experiment(spec, [&](const Json & r) {
        sink << r.dump() << "\n";
        sink.flush();
    });
    return 0;
}

auto cmd_experiment_summarize(const std::string & report, const std::string & out) -> int
{
    emit(summarize(read_jsonl(report)), out);
    return 0;
}

auto cmd_experiment_replay(const std::string & report, int trial, const std::string & out) -> int
{
    auto recs = read_jsonl(report);
    const Json * stored = nullptr;
    for (auto & r : recs)
        if (r.value("trial", -1) == trial)
            stored = &r;
    if (! stored)
        throw std::invalid_argument("trial " + std::to_string(trial) + " is not in " + report);
    auto rr = replay_trial(*stored);
    Json j{{"trial", trial}, {"replay", rr.replay}, {"identical", rr.identical}};
    if (rr.replay)
        j["record"] = rr.fresh;
    emit(j, out);
    return rr.replay && rr.identical ? 0 : 1;
}

}

int main(int argc, char ** argv)
{
    CLI::App app{"Local consistency, polynomial calculus and pseudo-reduction experiments"};
    app.require_subcommand(1);
    std::string out;
    std::uint64_t seed = 1;

    auto * gen = app.add_subcommand("gen", "Sample instances")->require_subcommand(1);
    int n = 0, d = 0, t = 0, m = 0;
    std::string templ = "builtin:nae3";
    auto * gen_reg = gen->add_subcommand("regular", "Random d-regular simple graph");
    gen_reg->add_option("--n", n, "Vertices")->required();
    gen_reg->add_option("--d", d, "Degree")->required();
    gen_reg->add_option("--seed", seed);
    gen_reg->add_option("--out", out);
    auto * gen_csp = gen->add_subcommand("csp", "Random instance with m constraint tuples");
    gen_csp->add_option("--n", n, "Elements")->required();
    gen_csp->add_option("--t", t, "Expected arity of every template symbol");
    gen_csp->add_option("--m", m, "Constraint tuples")->required();
    gen_csp->add_option("--template", templ, "builtin:nae3, builtin:kc, builtin:k<c> or a file");
    gen_csp->add_option("--seed", seed);
    gen_csp->add_option("--out", out);

    CheckArgs ca;
    auto * check = app.add_subcommand("check", "Structural property checks");
    check->add_option("--instance", ca.instance)->required();
    check->add_option("--template", ca.templ);
    check->add_option("--sparsity", ca.sparsity, "s,eps");
    check->add_flag("--girth", ca.girth);
    check->add_option("--expansion", ca.expansion, "ell,s,gamma");
    check->add_flag("--expansion-total", ca.per_total, "Compare boundaries against gamma |E|");
    check->add_flag("--chromatic", ca.chromatic);
    check->add_flag("--sat", ca.sat);
    check->add_option("--out", ca.out);

    PcArgs pa;
    auto * pc = app.add_subcommand("pc-degree", "Least polynomial calculus refutation degree");
    pc->add_option("--axioms", pa.axioms);
    pc->add_option("--instance", pa.instance);
    pc->add_option("--template", pa.templ);
    pc->add_option("--max-degree", pa.max_degree)->check(CLI::PositiveNumber);
    pc->add_option("--max-columns", pa.max_columns);
    pc->add_option("--out", pa.out);

    RunArgs ra;
    auto * run = app.add_subcommand("run", "Run a consistency algorithm");
    run->add_option("algorithm", ra.algorithm)->required()->check(CLI::IsMember({"kcons", "zaffine", "cohomological"}));
    run->add_option("--instance", ra.instance)->required();
    run->add_option("--template", ra.templ)->required();
    run->add_option("--k", ra.k)->check(CLI::PositiveNumber);
    run->add_option("--seed", ra.seed);
    run->add_option("--trace", ra.trace);
    run->add_option("--out", ra.out);

    auto * rop = app.add_subcommand("rop", "Pseudo-reduction operators")->require_subcommand(1);
    RopBuildArgs rb;
    auto * rop_build = rop->add_subcommand("build", "Write an operator description");
    rop_build->add_option("--instance", rb.instance)->required();
    rop_build->add_option("--template", rb.templ)->required();
    rop_build->add_option("--closure", rb.closure)->check(CLI::IsMember({"graph", "bw"}));
    rop_build->add_option("--degree", rb.degree)->check(CLI::PositiveNumber);
    rop_build->add_option("--order", rb.order, "auto or a file listing elements, largest first");
    rop_build->add_option("--ell", rb.ell, "Boundary length for bw closures");
    rop_build->add_option("--s", rb.s, "Edge budget for bw closures");
    rop_build->add_option("--mode", rb.mode)->check(CLI::IsMember({"enumerate", "peel"}));
    rop_build->add_option("--max-size", rb.max_size, "Closures above this size are undefined");
    rop_build->add_option("--out", rb.out);
    RopVerifyArgs rv;
    auto * rop_verify = rop->add_subcommand("verify", "Verify an operator; no check flag runs them all");
    rop_verify->add_option("--op", rv.op)->required();
    rop_verify->add_flag("--props", rv.props);
    rop_verify->add_flag("--conditions", rv.conditions);
    rop_verify->add_flag("--integrality", rv.integrality);
    rop_verify->add_flag("--lk", rv.lk);
    rop_verify->add_option("--k", rv.k)->check(CLI::PositiveNumber);
    rop_verify->add_option("--sample", rv.samples);
    rop_verify->add_option("--seed", rv.seed);
    rop_verify->add_option("--out", rv.out);
    FoolArgs fa;
    auto * rop_fool = rop->add_subcommand("foolsolve", "Fooling solution of L_k pinned at a partial homomorphism");
    rop_fool->add_option("--op", fa.op)->required();
    rop_fool->add_option("--k", fa.k)->check(CLI::PositiveNumber);
    rop_fool->add_option("--subset", fa.subset, "v1,v2,...")->required();
    rop_fool->add_option("--hom", fa.hom, "JSON object from element to value")->required();
    rop_fool->add_option("--out", fa.out);

    auto * exp = app.add_subcommand("experiment", "Experiment runs and reports")->require_subcommand(1);
    std::string spec_path, report;
    int trial = 0;
    auto * exp_run = exp->add_subcommand("run", "Append one record per trial");
    exp_run->add_option("--spec", spec_path)->required();
    exp_run->add_option("--out", out);
    auto * exp_sum = exp->add_subcommand("summarize", "Aggregate a report");
    exp_sum->add_option("report", report)->required();
    exp_sum->add_option("--out", out);
    auto * exp_replay = exp->add_subcommand("replay", "Recompute one trial and compare");
    exp_replay->add_option("report", report)->required();
    exp_replay->add_option("--trial", trial)->required();
    exp_replay->add_option("--out", out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen_reg)
            return cmd_gen_regular(n, d, seed, out);
        if (*gen_csp)
            return cmd_gen_csp(n, t, m, templ, seed, out);
        if (*check)
            return cmd_check(ca);
        if (*pc)
            return cmd_pc_degree(pa);
        if (*run)
            return cmd_run(ra);
        if (*rop_build)
            return cmd_rop_build(rb);
        if (*rop_verify)
            return cmd_rop_verify(rv);
        if (*rop_fool)
            return cmd_rop_foolsolve(fa);
        if (*exp_run)
            return cmd_experiment_run(spec_path, out);
        if (*exp_sum)
            return cmd_experiment_summarize(report, out);
        if (*exp_replay)
            return cmd_experiment_replay(report, trial, out);
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
