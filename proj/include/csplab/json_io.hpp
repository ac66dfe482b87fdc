#pragma once

#include "csplab/numeric.hpp"
#include "csplab/polynomial.hpp"
#include "csplab/relational.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace csplab {

using Json = nlohmann::json;

// {"signature":[{"name":"E","arity":2}], "domain":["v1",...], "relations":{"E":[["v1","v2"],...]}}
inline auto structure_from_json(const Json & j) -> RelStructure
{
    RelStructure s;
    for (auto & sym : j.at("signature"))
        s.add_symbol(sym.at("name").get<std::string>(), sym.at("arity").get<int>());
    for (auto & e : j.at("domain"))
        s.add_element(e.get<std::string>());
    auto & rels = j.at("relations");
    for (auto it = rels.begin(); it != rels.end(); ++it) {
        int sym = s.signature.find(it.key());
        if (sym < 0)
            throw std::invalid_argument("relation for unknown symbol " + it.key());
        for (auto & tup : it.value()) {
            Tuple t;
            for (auto & e : tup)
                t.push_back(s.element(e.get<std::string>()));
            s.add_tuple(sym, std::move(t));
        }
    }
    s.normalize();
    return s;
}

// Canonical form: domain and tuples sorted by element name.
inline auto structure_to_json(const RelStructure & s) -> Json
{
    Json j;
    j["signature"] = Json::array();
    for (auto & sym : s.signature.symbols)
        j["signature"].push_back({{"name", sym.name}, {"arity", sym.arity}});
    auto names = s.names;
    std::sort(names.begin(), names.end());
    j["domain"] = names;
    j["relations"] = Json::object();
    for (std::size_t k = 0; k < s.relations.size(); ++k) {
        std::vector<std::vector<std::string>> tuples;
        for (auto & t : s.relations[k]) {
            std::vector<std::string> row;
            for (int e : t)
                row.push_back(s.names[e]);
            tuples.push_back(std::move(row));
        }
        std::sort(tuples.begin(), tuples.end());
        j["relations"][s.signature.symbols[k].name] = tuples;
    }
    return j;
}

inline auto read_json_file(const std::string & path) -> Json
{
    std::ifstream in(path);
    if (! in)
        throw std::runtime_error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

inline auto write_json_file(const std::string & path, const Json & j) -> void
{
    std::ofstream out(path);
    if (! out)
        throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

// Names for x_{a,i}. With an instance and template the names are looked up;
// without them, names are interned in first-seen order.
struct VarNaming
{
    const RelStructure * instance = nullptr;
    const RelStructure * tmpl = nullptr;
    mutable std::map<std::string, int> elem_ids, val_ids;
    mutable std::vector<std::string> elem_names, val_names;

    auto name(VarId x) const -> std::pair<std::string, std::string>
    {
        std::string a = instance ? instance->names.at(x.elem)
            : (std::size_t(x.elem) < elem_names.size() ? elem_names[x.elem] : std::to_string(x.elem));
        std::string i = tmpl ? tmpl->names.at(x.val)
            : (std::size_t(x.val) < val_names.size() ? val_names[x.val] : std::to_string(x.val));
        return {a, i};
    }

    auto var(const std::string & a, const std::string & i) const -> VarId
    {
        auto intern = [](auto & ids, auto & names, const std::string & key) {
            auto [it, fresh] = ids.emplace(key, int(names.size()));
            if (fresh)
                names.push_back(key);
            return it->second;
        };
        int e = instance ? instance->element(a) : intern(elem_ids, elem_names, a);
        int v = tmpl ? tmpl->element(i) : intern(val_ids, val_names, i);
        return {e, v};
    }
};

// [{"coef":"-3/1","vars":[["a","0"],["b","1"]]}]; terms sorted by monomial.
inline auto polynomial_to_json(const Polynomial & p, const VarNaming & nm = {}) -> Json
{
    Json arr = Json::array();
    for (auto & [m, c] : p) {
        Json vars = Json::array();
        for (auto & x : m) {
            auto [a, i] = nm.name(x);
            vars.push_back({a, i});
        }
        arr.push_back({{"coef", rat_to_string(c)}, {"vars", vars}});
    }
    return arr;
}

// Repeated variables in a term are multilinearized.
inline auto polynomial_from_json(const Json & j, const VarNaming & nm = {}) -> Polynomial
{
    Polynomial p;
    for (auto & term : j) {
        std::vector<VarId> vars;
        for (auto & v : term.at("vars"))
            vars.push_back(nm.var(v.at(0).get<std::string>(), v.at(1).get<std::string>()));
        Rat c = term.at("coef").is_string() ? parse_rat(term.at("coef").get<std::string>())
                                              : Rat(term.at("coef").get<long>());
        add_term(p, make_monomial(std::move(vars)), c);
    }
    return p;
}

inline auto monomial_to_json(const Monomial & m, const VarNaming & nm = {}) -> Json
{
    Json vars = Json::array();
    for (auto & x : m) {
        auto [a, i] = nm.name(x);
        vars.push_back({a, i});
    }
    return vars;
}

}
