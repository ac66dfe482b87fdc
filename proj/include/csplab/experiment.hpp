#pragma once

#include "csplab/closure.hpp"
#include "csplab/consistency.hpp"
#include "csplab/encoding.hpp"
#include "csplab/instance_gen.hpp"
#include "csplab/json_io.hpp"
#include "csplab/pc_oracle.hpp"
#include "csplab/rng.hpp"
#include "csplab/rop.hpp"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace csplab {

inline constexpr const char * experiment_format = "csplab-experiment-1";

// Everything a trial depends on. A trial is a pure function of (spec, index).
struct ExperimentSpec
{
    std::string scenario = "laxnull";  // "laxnull" or "agc"
    std::string templ = "nae3";        // laxnull template; agc always uses three colours
    int n = 60;
    int d = 4;                         // agc: regular degree
    double delta = 0.3;                // laxnull: edges per vertex
    int ell = 1;                       // laxnull: null-constraining length; closures use 3 ell + 2
    int s = 6;                         // laxnull: local closure size budget (edges)
    int degree = 3;                    // D
    std::vector<int> levels{2};
    int trials = 1;
    std::uint64_t seed = 1;

    double eps = -1;                   // sparsity slack; default 0.1 (laxnull) or 1/(3d) (agc)
    int sparsity_s = 6;
    int girth_attempts = 200;
    std::size_t closure_max = 40;
    std::size_t hom_cap = default_hom_cap;
    std::size_t samples = 500;
    int exhaustive_degree = 1;
    int pc_max_elements = 25;
    std::size_t pc_max_columns = 200000;
    std::size_t sat_nodes = 100000000;
    std::size_t search_nodes = 5000000;
    std::size_t fooling_samples = 50;
    std::size_t enumeration_budget = 20000000;

    auto ell_prime() const -> int { return 3 * ell + 2; }
    auto effective_eps() const -> double
    {
        if (eps >= 0)
            return eps;
        return scenario == "agc" ? 1.0 / (3.0 * d) : 0.1;
    }
    // The expansion constant for t-uniform hypergraphs at length ell'.
    auto gamma(int t) const -> double
    {
        double l = ell_prime();
        return double(t - 1) / (72.0 * l * l * t * t * t * (1.0 + effective_eps()));
    }
};

inline auto spec_to_json(const ExperimentSpec & s) -> Json
{
    return Json{{"format", experiment_format}, {"scenario", s.scenario}, {"template", s.templ}, {"n", s.n}, {"d", s.d},
        {"delta", s.delta}, {"ell", s.ell}, {"s", s.s}, {"degree", s.degree}, {"levels", s.levels},
        {"trials", s.trials}, {"seed", s.seed}, {"eps", s.eps}, {"sparsity_s", s.sparsity_s},
        {"girth_attempts", s.girth_attempts}, {"closure_max", s.closure_max}, {"hom_cap", s.hom_cap},
        {"samples", s.samples}, {"exhaustive_degree", s.exhaustive_degree}, {"pc_max_elements", s.pc_max_elements},
        {"pc_max_columns", s.pc_max_columns}, {"sat_nodes", s.sat_nodes}, {"search_nodes", s.search_nodes},
        {"fooling_samples", s.fooling_samples}, {"enumeration_budget", s.enumeration_budget}};
}

inline auto spec_from_json(const Json & j) -> ExperimentSpec
{
    ExperimentSpec s;
    if (j.contains("format") && j["format"] != experiment_format)
        throw std::invalid_argument("unsupported experiment format " + j["format"].dump());
    auto get = [&](const char * key, auto & field) {
        if (j.contains(key))
            j.at(key).get_to(field);
    };
    get("scenario", s.scenario);
    get("template", s.templ);
    get("n", s.n);
    get("d", s.d);
    get("delta", s.delta);
    get("ell", s.ell);
    get("s", s.s);
    get("degree", s.degree);
    get("levels", s.levels);
    get("trials", s.trials);
    get("seed", s.seed);
    get("eps", s.eps);
    get("sparsity_s", s.sparsity_s);
    get("girth_attempts", s.girth_attempts);
    get("closure_max", s.closure_max);
    get("hom_cap", s.hom_cap);
    get("samples", s.samples);
    get("exhaustive_degree", s.exhaustive_degree);
    get("pc_max_elements", s.pc_max_elements);
    get("pc_max_columns", s.pc_max_columns);
    get("sat_nodes", s.sat_nodes);
    get("search_nodes", s.search_nodes);
    get("fooling_samples", s.fooling_samples);
    get("enumeration_budget", s.enumeration_budget);
    if (s.scenario != "laxnull" && s.scenario != "agc")
        throw std::invalid_argument("scenario must be laxnull or agc");
    if (s.n < 1 || s.trials < 0 || s.degree < 1 || s.ell < 1 || s.s < 1)
        throw std::invalid_argument("experiment spec needs n >= 1, trials >= 0, degree >= 1, ell >= 1, s >= 1");
    if (s.scenario == "agc" && (s.d < 1 || (s.n * s.d) % 2 != 0))
        throw std::invalid_argument("agc needs d >= 1 and n d even");
    if (s.scenario == "laxnull" && s.delta < 0)
        throw std::invalid_argument("laxnull needs delta >= 0");
    for (int k : s.levels)
        if (k < 1)
            throw std::invalid_argument("levels must be positive");
    return s;
}

inline auto trial_seed(const ExperimentSpec & spec, int trial) -> std::uint64_t
{
    return derive_seed(spec.seed, std::uint64_t(trial));
}

namespace detail {

    inline auto check_json(const PropertyCheck & c) -> Json
    {
        Json j{{"verdict", to_string(c.verdict)}, {"examined", c.examined}};
        if (! c.witness.empty())
            j["witness"] = c.witness;
        return j;
    }

    inline auto ms_since(std::chrono::steady_clock::time_point t0) -> double
    {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }

    // Largest j such that every set of at most j elements has a defined
    // closure of size at most D (checked exhaustively up to max_j).
    inline auto closure_level(RopHandle & r, int d, int max_j) -> int
    {
        const int n = r.instance().size();
        int level = 0;
        for (int j = 1; j <= max_j && j <= n; ++j) {
            std::vector<int> pick(j);
            for (int i = 0; i < j; ++i)
                pick[i] = i;
            bool ok = true;
            while (ok) {
                try {
                    ok = int(r.closure(pick).size()) <= d;
                }
                catch (const ClosureOverflow &) {
                    ok = false;
                }
                int i = j - 1;
                while (i >= 0 && pick[i] == n - j + i)
                    --i;
                if (i < 0)
                    break;
                ++pick[i];
                for (int q = i + 1; q < j; ++q)
                    pick[q] = pick[q - 1] + 1;
            }
            if (! ok)
                break;
            level = j;
        }
        return level;
    }

    // Fooling certificates for a seeded sample of (X, phi) in the support.
    inline auto fooling_check(RopHandle & r, const Family & support, std::size_t samples, std::uint64_t seed) -> Json
    {
        const auto off = support.offsets();
        const std::size_t total = off.back();
        CounterRng rng(seed, 0xf001);
        std::size_t checked = 0, failed = 0;
        Json first_failure;
        for (std::size_t i = 0; i < std::min(samples, total); ++i) {
            std::size_t pos = samples >= total ? i : std::size_t(rng.below(total));
            std::size_t x = std::size_t(std::upper_bound(off.begin(), off.end(), pos) - off.begin()) - 1;
            int h = int(pos - off[x]);
            ++checked;
            bool ok = false;
            try {
                auto sol = fooling_solution(r, support, x, h);
                ok = sol && (*sol)[pos] == 1
                    && satisfies_Lk(support, [&](std::size_t y, std::size_t q) { return (*sol)[off[y] + q]; });
            }
            catch (const ClosureOverflow &) {
            }
            if (! ok && failed++ == 0)
                first_failure = Json{{"X", support.space->elements(x)},
                    {"phi", support.coder.decode(support.homs[x][std::size_t(h)], support.space->size(x))}};
        }
        Json j{{"checked", checked}, {"failed", failed}, {"verdict", to_string(verdict_of(failed == 0))}};
        if (failed)
            j["counterexample"] = first_failure;
        return j;
    }

}

// One trial: sample, certify structure, decide satisfiability, build and
// verify the operator, run the hierarchies, bound the PC degree, and check
// the chain of implications between them.
inline auto run_trial(const ExperimentSpec & spec, int trial) -> Json
{
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    const std::uint64_t seed = trial_seed(spec, trial);
    Json rec{{"format", experiment_format}, {"trial", trial}, {"seed", seed}, {"spec", spec_to_json(spec)}};
    Json timing;
    const bool agc = spec.scenario == "agc";
    RelStructure t = agc ? clique_template(3) : builtin_template(spec.templ);

    // Sample.
    auto t0 = clock::now();
    RelStructure a;
    Json structure;
    bool excluded = false;
    if (agc) {
        a = sample_regular_graph(spec.n, spec.d, seed);
    }
    else {
        const int tu = t.signature.symbols.at(0).arity;
        const int m = int(std::lround(spec.delta * spec.n));
        const int need = spec.ell_prime();
        int attempt = 0;
        std::optional<int> girth;
        for (; attempt < std::max(1, spec.girth_attempts); ++attempt) {
            a = sample_csp_instance(spec.n, m, t, derive_seed(seed, std::uint64_t(attempt)));
            girth = berge_girth(hypergraph_of(a));
            if (! girth || *girth > need)
                break;
        }
        bool ok = ! girth || *girth > need;
        structure["girth"] = Json{{"value", girth ? Json(*girth) : Json("acyclic")}, {"required_above", need},
            {"attempts", attempt + (ok ? 1 : 0)}, {"verdict", to_string(verdict_of(ok))}};
        structure["uniformity"] = tu;
        structure["edges"] = m;
        excluded = excluded || ! ok;
    }
    auto h = hypergraph_of(a);
    auto adj = gaifman_adjacency(h);
    timing["sample_ms"] = detail::ms_since(t0);

    // Structure.
    t0 = clock::now();
    std::vector<int> rank;
    const double eps = spec.effective_eps();
    if (agc) {
        auto sp = check_graph_sparsity(h, spec.sparsity_s, eps, spec.enumeration_budget);
        structure["sparsity"] = detail::check_json(sp);
        auto col = chromatic_number(adj);
        structure["chromatic"] = Json{{"verdict", to_string(col.verdict)}, {"value", col.chromatic}, {"lower_bound", col.lower_bound}};
        rank = colour_class_order(col.colouring);
        excluded = excluded || sp.verdict != Verdict::Pass || col.verdict != Verdict::Pass;
    }
    else {
        auto sp = check_hypergraph_sparsity(h, spec.sparsity_s, eps, spec.enumeration_budget);
        structure["sparsity"] = detail::check_json(sp);
        const double gamma = spec.gamma(h.uniformity() ? h.uniformity() : 3);
        auto ex = check_expansion(h, spec.ell_prime(), 2 * spec.s, gamma, false, spec.enumeration_budget);
        structure["expansion"] = detail::check_json(ex);
        structure["expansion"]["gamma"] = gamma;
        structure["expansion"]["ell"] = spec.ell_prime();
        structure["expansion"]["s"] = 2 * spec.s;
        excluded = excluded || sp.verdict != Verdict::Pass || ex.verdict != Verdict::Pass;
    }
    structure["eps"] = eps;
    rec["structure"] = structure;
    rec["excluded"] = excluded;
    timing["structure_ms"] = detail::ms_since(t0);

    // Satisfiability.
    t0 = clock::now();
    auto sat = exact_satisfiable(a, t, spec.sat_nodes);
    rec["satisfiable"] = to_string(sat.verdict);
    const bool unsat = sat.verdict == Verdict::Fail;
    timing["sat_ms"] = detail::ms_since(t0);

    // Operator.
    t0 = clock::now();
    std::unique_ptr<RopHandle> rop;
    std::shared_ptr<BwClosure> bw;
    Json op{{"degree", spec.degree}};
    try {
        if (agc)
            rop = std::make_unique<RopHandle>(a, t, graph_closure_fn(adj, rank, spec.closure_max),
                order_from_rank(rank, t.size()), spec.hom_cap);
        else {
            bw = std::make_shared<BwClosure>(h, spec.ell_prime(), spec.s, BwMode::Enumerate, spec.enumeration_budget);
            rop = std::make_unique<RopHandle>(a, t, bw_closure_fn(bw, spec.closure_max),
                LexOrder::input_order(a.size(), t.size()), spec.hom_cap);
        }
    }
    catch (const BudgetExceeded & e) {
        op["error"] = e.what();
    }
    bool verified = false;
    int coh_level = 0;
    std::vector<std::pair<int, Family>> supports;
    if (rop) {
        auto enc = encode_csp(a, t);
        RopVerifyOptions vo;
        vo.degree = spec.degree;
        vo.exhaustive_degree = spec.exhaustive_degree;
        vo.samples = spec.samples;
        vo.seed = seed;
        auto props = verify_rop_properties(*rop, enc, vo);
        op["properties"] = report_to_json(props);
        ConditionOptions co;
        co.degree = spec.degree;
        co.exhaustive_degree = std::min(spec.exhaustive_degree, spec.degree);
        co.seed = seed;
        auto cond = verify_conditions(*rop, co);
        op["conditions"] = report_to_json(cond);
        verified = props.verdict == Verdict::Pass && cond.verdict != Verdict::Fail;
        int max_level = 0;
        for (int k : spec.levels)
            max_level = std::max(max_level, k);
        coh_level = detail::closure_level(*rop, spec.degree, max_level);
        op["closure_level"] = coh_level;
        Json lk = Json::array();
        for (int k : spec.levels) {
            if (k > spec.degree)
                continue;
            try {
                auto support = support_family(*rop, k);
                auto rep = verify_Lk_polynomial(*rop, support);
                Json item{{"k", k}, {"identities", report_to_json(rep)},
                    {"fooling", detail::fooling_check(*rop, support, spec.fooling_samples, seed + std::uint64_t(k))}};
                lk.push_back(item);
                verified = verified && rep.verdict == Verdict::Pass && item["fooling"]["verdict"] == "pass";
                supports.emplace_back(k, std::move(support));
            }
            catch (const ClosureOverflow &) {
                lk.push_back(Json{{"k", k}, {"verdict", "unverified"}, {"reason", "closure overflow"}});
                verified = false;
            }
        }
        op["lk"] = lk;
        op["memo_size"] = rop->memo_size();
    }
    op["verified"] = verified;
    rec["operator"] = op;
    timing["operator_ms"] = detail::ms_since(t0);

    // Hierarchies.
    t0 = clock::now();
    Json hier = Json::object();
    std::map<int, std::array<Verdict, 3>> verdicts;
    for (int k : spec.levels) {
        HierarchyOptions ho;
        ho.k = k;
        ho.seed = seed;
        ho.search_nodes = spec.search_nodes;
        if (rop)
            ho.witnesses = {rop_witness(*rop)};
        auto kc = run_kcons(a, t, ho);
        auto za = run_z_affine(a, t, ho);
        auto co = run_cohomological(a, t, ho);
        verdicts[k] = {kc.accepted, za.accepted, co.accepted};
        hier[std::to_string(k)] = Json{{"kcons", to_string(kc.accepted)}, {"zaffine", to_string(za.accepted)},
            {"cohomological", to_string(co.accepted)}};
    }
    rec["hierarchies"] = hier;
    timing["hierarchy_ms"] = detail::ms_since(t0);

    // PC degree.
    t0 = clock::now();
    Json pc{{"verdict", "skipped"}};
    std::optional<RefutationDegree> pcr;
    if (a.size() <= spec.pc_max_elements) {
        PcBudget pb;
        pb.max_columns = spec.pc_max_columns;
        pb.max_basis = spec.pc_max_columns;
        pcr = min_refutation_degree(encode_csp(a, t).axioms, spec.degree + 1, pb);
        pc = Json{{"verdict", to_string(pcr->verdict)}, {"degree", pcr->degree}};
        if (pcr->verdict == Verdict::Fail)
            pc["lower_bound"] = pcr->degree + 1;
    }
    rec["pc"] = pc;
    timing["pc_ms"] = detail::ms_since(t0);

    // Chain: verified at D => no PC refutation up to D => Z-affine accepts at
    // k <= D => cohomological accepts at k <= closure level.
    Json chain{{"applies", verified}, {"ok", true}};
    if (verified) {
        auto broken = [&](const std::string & link, Json detail) {
            if (chain["ok"] == true) {
                chain["ok"] = false;
                chain["broken_link"] = link;
                chain["counterexample"] = std::move(detail);
            }
        };
        if (pcr && pcr->verdict == Verdict::Pass && pcr->degree <= spec.degree)
            broken("pc", Json{{"refutation_degree", pcr->degree}});
        for (auto & [k, v] : verdicts) {
            if (k <= spec.degree && v[1] != Verdict::Pass)
                broken("zaffine", Json{{"k", k}, {"verdict", to_string(v[1])}});
            if (k <= coh_level && v[2] != Verdict::Pass)
                broken("cohomological", Json{{"k", k}, {"verdict", to_string(v[2])}});
        }
    }
    rec["chain"] = chain;
    rec["unsatisfiable_certified"] = unsat;
    timing["total_ms"] = detail::ms_since(start);
    rec["timing"] = timing;
    return rec;
}

// The record without its wall-clock fields; replays compare these.
inline auto deterministic_part(Json rec) -> Json
{
    rec.erase("timing");
    return rec;
}

inline auto worker_count() -> int
{
    if (const char * w = std::getenv("CSPLAB_WORKERS")) {
        int v = std::atoi(w);
        if (v >= 1)
            return v;
    }
    return 1;
}

// Runs every trial, handing records to emit in trial order as soon as each
// prefix is complete.
inline auto run_experiment(const ExperimentSpec & spec, const std::function<void(const Json &)> & emit,
    int workers = worker_count()) -> void
{
    const int n = spec.trials;
    if (n <= 0)
        return;
    auto done = std::vector<std::optional<Json>>(std::size_t(n));
    std::mutex mu;
    std::condition_variable cv;
    std::atomic<int> next{0};
    auto work = [&] {
        for (int i; (i = next++) < n;) {
            Json rec;
            try {
                rec = run_trial(spec, i);
            }
            catch (const std::exception & e) {
                rec = Json{{"format", experiment_format}, {"trial", i}, {"seed", trial_seed(spec, i)},
                    {"spec", spec_to_json(spec)}, {"error", e.what()}};
            }
            std::lock_guard lk(mu);
            done[std::size_t(i)] = std::move(rec);
            cv.notify_all();
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < std::min(workers, n); ++w)
        pool.emplace_back(work);
    std::thread emitter([&] {
        for (int i = 0; i < n; ++i) {
            std::unique_lock lk(mu);
            cv.wait(lk, [&] { return done[std::size_t(i)].has_value(); });
            Json rec = std::move(*done[std::size_t(i)]);
            lk.unlock();
            emit(rec);
        }
    });
    work();
    for (auto & th : pool)
        th.join();
    emitter.join();
}

inline auto read_jsonl(const std::string & path) -> std::vector<Json>
{
    std::ifstream in(path);
    if (! in)
        throw std::runtime_error("cannot open " + path);
    std::vector<Json> out;
    std::string line;
    while (std::getline(in, line))
        if (! line.empty())
            out.push_back(Json::parse(line));
    return out;
}

// Aggregates over non-excluded trials; excluded and failed trials are counted.
inline auto summarize(const std::vector<Json> & records) -> Json
{
    std::size_t trials = 0, excluded = 0, errors = 0, unsat = 0, verified = 0, chain_applies = 0, chain_broken = 0;
    std::map<std::string, std::map<std::string, std::pair<std::size_t, std::size_t>>> accept;
    std::map<std::string, std::size_t> pc;
    for (auto & r : records) {
        ++trials;
        if (r.contains("error")) {
            ++errors;
            continue;
        }
        if (r.value("excluded", false)) {
            ++excluded;
            continue;
        }
        unsat += r.value("unsatisfiable_certified", false) ? 1 : 0;
        verified += r["operator"].value("verified", false) ? 1 : 0;
        if (r["chain"].value("applies", false)) {
            ++chain_applies;
            chain_broken += r["chain"].value("ok", true) ? 0 : 1;
        }
        for (auto & [k, v] : r["hierarchies"].items())
            for (auto & [alg, verdict] : v.items()) {
                auto & cell = accept[k][alg];
                ++cell.second;
                cell.first += verdict == "pass" ? 1 : 0;
            }
        pc[r["pc"].value("verdict", "skipped")] += 1;
    }
    Json acc = Json::object();
    for (auto & [k, algs] : accept)
        for (auto & [alg, cell] : algs)
            acc[k][alg] = Json{{"accepted", cell.first}, {"of", cell.second},
                {"rate", cell.second ? double(cell.first) / double(cell.second) : 0.0}};
    const std::size_t used = trials - excluded - errors;
    return Json{{"trials", trials}, {"excluded", excluded}, {"errors", errors}, {"used", used},
        {"unsatisfiable_certified", unsat}, {"operator_verified", verified},
        {"operator_verified_rate", used ? double(verified) / double(used) : 0.0}, {"chain_applies", chain_applies},
        {"chain_broken", chain_broken}, {"acceptance", acc}, {"pc", pc}};
}

struct ReplayResult
{
    bool replay = true;        // false when the stored seed does not derive from the spec
    bool identical = false;
    Json stored, fresh;
};

inline auto replay_trial(const Json & stored) -> ReplayResult
{
    ReplayResult r;
    r.stored = stored;
    if (! stored.contains("spec") || ! stored.contains("trial") || stored.value("format", "") != experiment_format)
        throw std::invalid_argument("record lacks spec, trial index or a known format");
    auto spec = spec_from_json(stored["spec"]);
    int trial = stored["trial"].get<int>();
    if (stored.value("seed", std::uint64_t(0)) != trial_seed(spec, trial)) {
        r.replay = false;
        return r;
    }
    r.fresh = run_trial(spec, trial);
    r.identical = deterministic_part(r.fresh) == deterministic_part(stored);
    return r;
}

}
