#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace csplab {

using Int = mpz_class;
using Rat = mpq_class;

// Always "p/q" with q > 0, so integers print as "n/1".
inline auto rat_to_string(const Rat & r) -> std::string
{
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline auto parse_rat(const std::string & s) -> Rat
{
    std::string t;
    for (char c : s)
        if (c != ' ')
            t += c;
    // Accept the unicode minus sign as well as '-'.
    const std::string umin = "\xE2\x88\x92";
    if (t.rfind(umin, 0) == 0)
        t = "-" + t.substr(umin.size());
    Rat r;
    if (r.set_str(t, 10) != 0)
        throw std::invalid_argument("bad rational: " + s);
    r.canonicalize();
    return r;
}

inline auto is_integral(const Rat & r) -> bool
{
    return r.get_den() == 1;
}

// Floor division for mpz with a positive or negative divisor.
inline auto floor_div(const Int & a, const Int & b) -> Int
{
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}
