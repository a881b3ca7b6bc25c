#pragma once

#include "seb_choa/problem.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sebchoa {

/// Outcome of one seeded optimization run.
struct RunRecord
{
    std::string algorithm;
    std::string problem;
    std::uint64_t seed = 0;
    /// Best-so-far fitness after initialization and after every iteration.
    std::vector<double> trace;
    std::vector<double> best_position;
    double best_fitness = 0.0;
    std::size_t evaluations_used = 0;
    double wall_time_seconds = 0.0;

    // Filled for constrained problems only.
    std::optional<double> violation;
    std::optional<double> raw_objective;

    bool feasible() const noexcept { return !violation || *violation == 0.0; }
};

/// Records violation and raw objective of the final best for constrained problems.
inline void annotate_constraints(const Problem& problem, RunRecord& record)
{
    if (!problem.constrained() || record.best_position.empty())
        return;
    record.violation = problem.violation(record.best_position);
    record.raw_objective = problem.raw_objective(record.best_position);
}

} // namespace sebchoa
