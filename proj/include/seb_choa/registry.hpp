#pragma once

#include "seb_choa/benchmarks.hpp"
#include "seb_choa/constraints.hpp"
#include "seb_choa/problem.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace sebchoa {

/// The 23 standard functions (scalable ones at `dimension`) plus the three
/// constrained engineering problems.
inline Registry default_registry(std::size_t dimension = 30)
{
    Registry reg;
    for (auto& p : standard_suite(dimension))
        reg.add(std::move(p));
    for (const auto& c : engineering_suite())
        reg.add(c.as_problem());
    return reg;
}

/// Expands `standard-suite` and `engineering-suite`, then resolves names and
/// aliases. Throws std::invalid_argument listing every unknown name.
inline std::vector<Problem> resolve_problems(const Registry& reg, const std::vector<std::string>& names)
{
    std::vector<Problem> out;
    std::string unknown;
    for (const auto& n : names) {
        if (n == "standard-suite" || n == "engineering-suite") {
            const bool constrained = n == "engineering-suite";
            for (const auto& p : reg.problems())
                if ((p->category == Category::Constrained) == constrained)
                    out.push_back(*p);
            continue;
        }
        if (auto p = reg.find(n))
            out.push_back(*p);
        else
            unknown += (unknown.empty() ? "" : ", ") + n;
    }
    if (!unknown.empty())
        throw std::invalid_argument("unknown problem(s): " + unknown +
                                    " (see list-problems; suites: standard-suite, engineering-suite)");
    return out;
}

} // namespace sebchoa
