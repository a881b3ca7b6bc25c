// Minimizes a user-defined constrained problem with SEB-ChOA.
#include "seb_choa/seb_choa.hpp"

#include <iostream>

int main()
{
    using namespace sebchoa;

    // min (x0 - 1)^2 + (x1 - 2)^2  subject to  x0 + x1 <= 2
    ConstrainedProblem cp;
    cp.base.name = "shifted-quadratic";
    cp.base.dimension = 2;
    cp.base.bounds = Bounds{{-5.0, -5.0}, {5.0, 5.0}};
    cp.base.objective = deterministic([](std::span<const double> x) {
        return (x[0] - 1.0) * (x[0] - 1.0) + (x[1] - 2.0) * (x[1] - 2.0);
    });
    cp.inequalities.push_back([](std::span<const double> x) { return x[0] + x[1] - 2.0; });

    ChoaConfig cfg;
    cfg.spiral = Spiral(SpiralKind::HSS1);
    cfg.max_iterations = 300;
    cfg.seed = 11;

    const Problem problem = cp.as_problem();
    RunRecord rec = optimize(problem, cfg);
    annotate_constraints(problem, rec);
    std::cout << "x = (" << rec.best_position[0] << ", " << rec.best_position[1] << ")  f = "
              << rec.raw_objective.value_or(rec.best_fitness) << "  feasible = " << std::boolalpha
              << rec.feasible() << '\n';
}
