#pragma once

#include "seb_choa/problem.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace sebchoa {

/// A box-bounded problem with g_i(x) <= 0 and |h_j(x)| <= tolerance constraints,
/// handled by a static additive penalty.
struct ConstrainedProblem
{
    Problem base;
    std::vector<VectorFunction> inequalities;
    std::vector<VectorFunction> equalities;
    double equality_tolerance = 1e-4;
    double penalty_coefficient = 1e6;

    void validate() const
    {
        base.validate();
        if (!(penalty_coefficient > 0.0) || !std::isfinite(penalty_coefficient))
            throw std::invalid_argument("penalty coefficient must be positive");
        if (!(equality_tolerance >= 0.0))
            throw std::invalid_argument("equality tolerance must be nonnegative");
    }

    /// sum_i max(0, g_i(x)) + sum_j max(0, |h_j(x)| - tolerance)
    double violation(std::span<const double> x) const
    {
        double v = 0.0;
        for (const auto& g : inequalities)
            v += std::max(0.0, g(x));
        for (const auto& h : equalities)
            v += std::max(0.0, std::abs(h(x)) - equality_tolerance);
        return v;
    }

    bool feasible(std::span<const double> x) const { return violation(x) == 0.0; }

    double raw_objective(std::span<const double> x, RngStream& noise) const { return base.evaluate(x, noise); }

    double raw_objective(std::span<const double> x) const { return base.evaluate(x); }

    double penalized_fitness(std::span<const double> x, RngStream& noise) const
    {
        const double f = base.evaluate(x, noise);
        const double v = violation(x);
        return v == 0.0 ? f : f + penalty_coefficient * v;
    }

    double penalized_fitness(std::span<const double> x) const
    {
        RngStream noise(0);
        return penalized_fitness(x, noise);
    }

    /// Problem view whose objective is the penalized fitness; the violation and
    /// raw objective stay reachable for reporting.
    Problem as_problem() const
    {
        validate();
        auto self = std::make_shared<const ConstrainedProblem>(*this);
        Problem p = base;
        p.category = Category::Constrained;
        p.objective = [self](std::span<const double> x, RngStream& noise) { return self->penalized_fitness(x, noise); };
        p.violation = [self](std::span<const double> x) { return self->violation(x); };
        p.raw_objective = [self](std::span<const double> x) { return self->raw_objective(x); };
        return p;
    }
};

/// Tension/compression spring: x = (wire diameter d, coil diameter D, active coils N).
inline ConstrainedProblem spring_design()
{
    ConstrainedProblem c;
    c.base.name = "spring-design";
    c.base.dimension = 3;
    c.base.bounds = {{0.05, 0.25, 2.0}, {2.0, 1.3, 15.0}};
    c.base.category = Category::Constrained;
    c.base.objective = deterministic([](std::span<const double> x) { return (x[2] + 2.0) * x[1] * x[0] * x[0]; });
    c.inequalities = {
        [](std::span<const double> x) {
            const double d = x[0], D = x[1], N = x[2];
            return 1.0 - D * D * D * N / (71785.0 * std::pow(d, 4));
        },
        [](std::span<const double> x) {
            const double d = x[0], D = x[1];
            return (4.0 * D * D - d * D) / (12566.0 * (D * d * d * d - std::pow(d, 4))) + 1.0 / (5108.0 * d * d) - 1.0;
        },
        [](std::span<const double> x) {
            const double d = x[0], D = x[1], N = x[2];
            return 1.0 - 140.45 * d / (D * D * N);
        },
        [](std::span<const double> x) { return (x[0] + x[1]) / 1.5 - 1.0; },
    };
    return c;
}

/// Cylindrical pressure vessel: x = (shell thickness, head thickness, inner radius, length).
inline ConstrainedProblem pressure_vessel_design()
{
    ConstrainedProblem c;
    c.base.name = "pressure-vessel";
    c.base.dimension = 4;
    c.base.bounds = {{0.0, 0.0, 10.0, 10.0}, {99.0, 99.0, 200.0, 200.0}};
    c.base.category = Category::Constrained;
    c.base.objective = deterministic([](std::span<const double> x) {
        const double ts = x[0], th = x[1], r = x[2], l = x[3];
        return 0.6224 * ts * r * l + 1.7781 * th * r * r + 3.1661 * ts * ts * l + 19.84 * ts * ts * r;
    });
    c.inequalities = {
        [](std::span<const double> x) { return -x[0] + 0.0193 * x[2]; },
        [](std::span<const double> x) { return -x[1] + 0.00954 * x[2]; },
        [](std::span<const double> x) {
            const double r = x[2], l = x[3];
            return -std::numbers::pi * r * r * l - 4.0 / 3.0 * std::numbers::pi * r * r * r + 1296000.0;
        },
        [](std::span<const double> x) { return x[3] - 240.0; },
    };
    return c;
}

namespace detail {

struct WeldedBeamTerms
{
    double tau, sigma, delta, buckling;
};

inline WeldedBeamTerms welded_beam_terms(std::span<const double> x)
{
    constexpr double load = 6000.0, length = 14.0, young = 30e6, shear = 12e6;
    const double h = x[0], l = x[1], t = x[2], b = x[3];
    const double tau_p = load / (std::numbers::sqrt2 * h * l);
    const double moment = load * (length + l / 2.0);
    const double half = (h + t) / 2.0;
    const double radius = std::sqrt(l * l / 4.0 + half * half);
    const double polar = 2.0 * (std::numbers::sqrt2 * h * l * (l * l / 12.0 + half * half));
    const double tau_pp = moment * radius / polar;
    const double tau = std::sqrt(tau_p * tau_p + 2.0 * tau_p * tau_pp * l / (2.0 * radius) + tau_pp * tau_pp);
    const double sigma = 6.0 * load * length / (b * t * t);
    const double delta = 4.0 * load * std::pow(length, 3) / (young * t * t * t * b);
    const double pc = 4.013 * young * std::sqrt(t * t * std::pow(b, 6) / 36.0) / (length * length) *
                      (1.0 - t / (2.0 * length) * std::sqrt(young / (4.0 * shear)));
    return {tau, sigma, delta, pc};
}

} // namespace detail

/// Welded beam: x = (weld thickness h, weld length l, bar height t, bar thickness b).
inline ConstrainedProblem welded_beam_design()
{
    ConstrainedProblem c;
    c.base.name = "welded-beam";
    c.base.dimension = 4;
    c.base.bounds = {{0.1, 0.1, 0.1, 0.1}, {2.0, 10.0, 10.0, 2.0}};
    c.base.category = Category::Constrained;
    c.base.objective = deterministic([](std::span<const double> x) {
        return 1.10471 * x[0] * x[0] * x[1] + 0.04811 * x[2] * x[3] * (14.0 + x[1]);
    });
    using detail::welded_beam_terms;
    c.inequalities = {
        [](std::span<const double> x) { return welded_beam_terms(x).tau - 13600.0; },
        [](std::span<const double> x) { return welded_beam_terms(x).sigma - 30000.0; },
        [](std::span<const double> x) { return x[0] - x[3]; },
        [](std::span<const double> x) { return 0.10471 * x[0] * x[0] + 0.04811 * x[2] * x[3] * (14.0 + x[1]) - 5.0; },
        [](std::span<const double> x) { return 0.125 - x[0]; },
        [](std::span<const double> x) { return welded_beam_terms(x).delta - 0.25; },
        [](std::span<const double> x) { return 6000.0 - welded_beam_terms(x).buckling; },
    };
    return c;
}

inline std::vector<ConstrainedProblem> engineering_suite()
{
    return {spring_design(), pressure_vessel_design(), welded_beam_design()};
}

} // namespace sebchoa
