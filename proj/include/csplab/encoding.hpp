#pragma once

#include "csplab/polynomial.hpp"
#include "csplab/relational.hpp"

#include <string>
#include <vector>

namespace csplab {

enum class AxiomFamily
{
    OneValue,    // sum_i x_{a,i} - 1
    AtMostOne,   // x_{a,i} x_{a,i'} for i != i'
    Constraint,  // prod_j x_{a_j, f(a_j)} for a tuple whose image f misses the relation
};

inline auto family_name(AxiomFamily f) -> std::string
{
    switch (f) {
    case AxiomFamily::OneValue: return "one-value";
    case AxiomFamily::AtMostOne: return "at-most-one";
    case AxiomFamily::Constraint: return "constraint";
    }
    return "?";
}

// Polynomial system whose common 0/1 zeros are the homomorphisms A -> T.
// The Boolean axioms x^2 - x are implicit: all polynomials live in the
// multilinear quotient.
struct EncodedCsp
{
    int elems = 0;
    int vals = 0;
    std::vector<Polynomial> axioms;
    std::vector<AxiomFamily> family;
};

inline auto encode_csp(const RelStructure & a, const RelStructure & t) -> EncodedCsp
{
    check_compatible(a, t);
    require_instance(a);
    RelationIndex idx(t);
    EncodedCsp out;
    out.elems = a.size();
    out.vals = t.size();
    const int q = t.size();
    for (int e = 0; e < a.size(); ++e) {
        Polynomial p = constant(-1);
        for (int i = 0; i < q; ++i)
            add_term(p, {{e, i}}, 1);
        out.axioms.push_back(std::move(p));
        out.family.push_back(AxiomFamily::OneValue);
    }
    for (int e = 0; e < a.size(); ++e)
        for (int i = 0; i < q; ++i)
            for (int j = i + 1; j < q; ++j) {
                out.axioms.push_back(monomial_poly(make_monomial({{e, i}, {e, j}})));
                out.family.push_back(AxiomFamily::AtMostOne);
            }
    for (std::size_t s = 0; s < a.relations.size(); ++s)
        for (auto & tup : a.relations[s]) {
            const std::size_t r = tup.size();
            Tuple img(r, 0);
            for (;;) {
                if (! idx.contains(int(s), img)) {
                    std::vector<VarId> vars;
                    for (std::size_t j = 0; j < r; ++j)
                        vars.push_back({tup[j], img[j]});
                    out.axioms.push_back(monomial_poly(make_monomial(std::move(vars))));
                    out.family.push_back(AxiomFamily::Constraint);
                }
                std::size_t j = 0;
                while (j < r && ++img[j] == q)
                    img[j++] = 0;
                if (j == r)
                    break;
            }
        }
    return out;
}

}
