// Runs baseline ChOA and SEB-ChOA (HSS1 spiral) once on the 30-dimensional sphere.
#include "seb_choa/seb_choa.hpp"

#include <iostream>

int main()
{
    using namespace sebchoa;

    const Registry reg = default_registry(30);
    const Problem& sphere = *reg.find("F1");

    ChoaConfig cfg;
    cfg.population_size = 30;
    cfg.max_iterations = 500;
    cfg.seed = 2024;

    for (const char* name : {"choa", "seb-hss1"}) {
        const Algorithm alg = make_variant(name, cfg);
        const RunRecord rec = alg.run(sphere, cfg.seed);
        std::cout << name << ": best " << rec.best_fitness << " after " << rec.evaluations_used
                  << " evaluations\n";
    }
}
