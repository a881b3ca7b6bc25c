#pragma once

#include "seb_choa/problem.hpp"
#include "seb_choa/rng.hpp"
#include "seb_choa/run_record.hpp"

#include <chrono>
#include <limits>
#include <vector>

namespace sebchoa {

struct RandomSearchConfig
{
    std::size_t population_size = 30;
    std::size_t max_iterations = 500;
    std::uint64_t seed = 0;
};

/// Uniform sampling of the box with the same budget and trace layout as ChOA:
/// one batch of population_size samples per iteration, plus the initial batch.
inline RunRecord random_search(const Problem& problem, const RandomSearchConfig& config)
{
    const auto start = std::chrono::steady_clock::now();
    problem.validate();
    RngStream rng(config.seed);
    RngStream noise(derive_seed(config.seed, 0x4E4F495345ULL));

    RunRecord rec;
    rec.algorithm = "random-search";
    rec.problem = problem.name;
    rec.seed = config.seed;
    rec.best_fitness = std::numeric_limits<double>::infinity();
    rec.trace.reserve(config.max_iterations + 1);

    std::vector<double> x(problem.dimension);
    for (std::size_t batch = 0; batch <= config.max_iterations; ++batch) {
        for (std::size_t i = 0; i < config.population_size; ++i) {
            for (std::size_t d = 0; d < x.size(); ++d)
                x[d] = rng.uniform(problem.bounds.lower[d], problem.bounds.upper[d]);
            const double f = problem.evaluate(x, noise);
            ++rec.evaluations_used;
            if (f < rec.best_fitness || rec.best_position.empty()) {
                rec.best_fitness = f;
                rec.best_position = x;
            }
        }
        rec.trace.push_back(rec.best_fitness);
    }
    annotate_constraints(problem, rec);
    rec.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

} // namespace sebchoa
