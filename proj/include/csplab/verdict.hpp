#pragma once

#include <stdexcept>
#include <string>

namespace csplab {

// Unverified means a budget ran out before the question was settled.
enum class Verdict
{
    Pass,
    Fail,
    Unverified,
};

inline auto to_string(Verdict v) -> std::string
{
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Unverified: return "unverified";
    }
    return "?";
}

inline auto verdict_of(bool ok) -> Verdict { return ok ? Verdict::Pass : Verdict::Fail; }

struct BudgetExceeded : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

}
