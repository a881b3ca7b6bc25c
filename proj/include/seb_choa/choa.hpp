#pragma once

#include "seb_choa/chaos.hpp"
#include "seb_choa/problem.hpp"
#include "seb_choa/rng.hpp"
#include "seb_choa/run_record.hpp"
#include "seb_choa/spiral.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sebchoa {

/// Start value of the control scalar f; it decays to 0 over the run.
inline constexpr double control_initial = 2.5;

struct ControlSchedule
{
    enum class Shape { Linear, Nonlinear };
    Shape shape = Shape::Linear;
    double exponent = 2.0;

    static ControlSchedule linear() { return {}; }
    static ControlSchedule nonlinear(double exponent) { return {Shape::Nonlinear, exponent}; }
};

/// f(t) = 2.5 (1 - t/T), or 2.5 (1 - (t/T)^p) for the nonlinear shape.
inline double compute_f(std::size_t t, std::size_t total, ControlSchedule schedule = {})
{
    if (total == 0 || t > total)
        throw std::domain_error("compute_f requires 0 <= t <= T and T >= 1");
    const double ratio = static_cast<double>(t) / static_cast<double>(total);
    if (schedule.shape == ControlSchedule::Shape::Linear)
        return control_initial * (1.0 - ratio);
    if (!(schedule.exponent > 0.0))
        throw std::domain_error("nonlinear control schedule needs a positive exponent");
    return control_initial * (1.0 - std::pow(ratio, schedule.exponent));
}

/// Per-dimension multipliers for one role update.
struct Coefficients
{
    std::vector<double> a; ///< in [-f, f]
    std::vector<double> c; ///< in [0, 2)
    std::vector<double> m; ///< chaotic, in (0, 1)
};

/// a = 2 f r1 - f, c = 2 r2, m = next chaotic value; one triple per dimension,
/// with one chaotic map per dimension.
inline void compute_coefficients(double f, RngStream& rng, std::span<ChaoticMap> chaos, Coefficients& out)
{
    const std::size_t dim = chaos.size();
    out.a.resize(dim);
    out.c.resize(dim);
    out.m.resize(dim);
    for (std::size_t d = 0; d < dim; ++d) {
        out.a[d] = 2.0 * f * rng.next_uniform() - f;
        out.c[d] = 2.0 * rng.next_uniform();
        out.m[d] = chaos[d].next();
    }
}

inline Coefficients compute_coefficients(double f, RngStream& rng, std::span<ChaoticMap> chaos)
{
    Coefficients out;
    compute_coefficients(f, rng, chaos, out);
    return out;
}

struct Member
{
    std::vector<double> position;
    double fitness = std::numeric_limits<double>::infinity();
};

/// The four best solutions seen so far, best first.
struct Roles
{
    std::array<Member, 4> ranked;

    const Member& attacker() const noexcept { return ranked[0]; }
    const Member& barrier() const noexcept { return ranked[1]; }
    const Member& chaser() const noexcept { return ranked[2]; }
    const Member& driver() const noexcept { return ranked[3]; }
    /// The prey is the attacker's position.
    std::span<const double> prey() const noexcept { return ranked[0].position; }
};

/// Average of the four role-guided moves:
/// d_k = |c_k x_k - m_k x|, x'_k = x_k - a_k d_k, result = mean_k x'_k.
inline void role_based_position(std::span<const double> x, const Roles& roles,
                                std::span<const Coefficients, 4> coefficients, std::span<double> out)
{
    for (std::size_t d = 0; d < x.size(); ++d) {
        double sum = 0.0;
        for (std::size_t k = 0; k < 4; ++k) {
            const double leader = roles.ranked[k].position[d];
            const auto& co = coefficients[k];
            const double dist = std::abs(co.c[d] * leader - co.m[d] * x[d]);
            sum += leader - co.a[d] * dist;
        }
        out[d] = sum / 4.0;
    }
}

inline std::vector<double> role_based_position(std::span<const double> x, const Roles& roles,
                                               std::span<const Coefficients, 4> coefficients)
{
    std::vector<double> out(x.size());
    role_based_position(x, roles, coefficients, out);
    return out;
}

/// Spiral move around the prey: (prey - x) M cos(2 pi l) + prey.
inline void spiral_step(std::span<const double> x, std::span<const double> prey, double modulus, double l,
                        std::span<double> out)
{
    const double amplitude = modulus * std::cos(2.0 * std::numbers::pi * l);
    for (std::size_t d = 0; d < x.size(); ++d)
        out[d] = (prey[d] - x[d]) * amplitude + prey[d];
}

/// Baseline exploitation: prey - m (prey - x) with a fresh chaotic vector m.
inline void chaotic_step(std::span<const double> x, std::span<const double> prey, std::span<ChaoticMap> chaos,
                         std::span<double> out)
{
    for (std::size_t d = 0; d < x.size(); ++d)
        out[d] = prey[d] - chaos[d].next() * (prey[d] - x[d]);
}

/// Piecewise update around the prey. Below the threshold: prey - a|c prey - m x|;
/// otherwise the spiral move with amplitude M cos(2 pi l).
inline std::vector<double> seb_update(std::span<const double> x, std::span<const double> prey,
                                      const Coefficients& co, double lambda, double modulus, double l,
                                      double threshold = 0.5)
{
    std::vector<double> out(x.size());
    if (lambda < threshold) {
        for (std::size_t d = 0; d < x.size(); ++d)
            out[d] = prey[d] - co.a[d] * std::abs(co.c[d] * prey[d] - co.m[d] * x[d]);
    } else {
        spiral_step(x, prey, modulus, l, out);
    }
    return out;
}

struct Population
{
    std::vector<std::vector<double>> positions;
    std::vector<double> fitness;
    std::size_t evaluations_used = 0;

    std::size_t size() const noexcept { return positions.size(); }
};

struct ChoaConfig
{
    std::size_t population_size = 30;
    /// Zero is allowed and yields only the initial population.
    std::size_t max_iterations = 500;
    /// Absent: baseline ChOA with chaotic exploitation.
    std::optional<Spiral> spiral;
    ModulusSchedule modulus{};
    ChaoticMapKind chaotic_map = ChaoticMapKind::Logistic;
    std::uint64_t seed = 0;
    double lambda_threshold = 0.5;
    ControlSchedule f_schedule{};

    void validate() const
    {
        if (population_size == 0)
            throw std::invalid_argument("population size must be positive");
        if (!(lambda_threshold >= 0.0 && lambda_threshold <= 1.0))
            throw std::invalid_argument("lambda threshold must lie in [0, 1]");
        if (f_schedule.shape == ControlSchedule::Shape::Nonlinear && !(f_schedule.exponent > 0.0))
            throw std::invalid_argument("nonlinear control schedule needs a positive exponent");
        if (spiral)
            modulus.validate();
    }
};

/// "choa" for the baseline, "seb-<spiral>" otherwise.
inline std::string variant_name(const std::optional<Spiral>& spiral)
{
    return spiral ? "seb-" + std::string(to_string(spiral->kind())) : "choa";
}

/// How many chimp updates took each branch.
struct UpdateCounts
{
    std::size_t role_based = 0;
    std::size_t spiral = 0;
    std::size_t chaotic = 0;

    std::size_t total() const noexcept { return role_based + spiral + chaotic; }
};

/// Stepwise ChOA / SEB-ChOA state. Copying an optimizer forks the run.
class ChoaOptimizer
{
public:
    ChoaOptimizer(const Problem& problem, ChoaConfig config)
        : problem_(&problem), config_(std::move(config)), rng_(config_.seed),
          noise_(derive_seed(config_.seed, noise_stream))
    {
        problem.validate();
        config_.validate();
        if (config_.spiral)
            modulus_.emplace(*config_.spiral, config_.modulus);

        const std::size_t n = config_.population_size;
        const std::size_t dim = problem.dimension;
        const auto& lo = problem.bounds.lower;
        const auto& hi = problem.bounds.upper;
        population_.positions.assign(n, std::vector<double>(dim));
        for (auto& x : population_.positions)
            for (std::size_t d = 0; d < dim; ++d)
                x[d] = rng_.uniform(lo[d], hi[d]);
        chaos_.reserve(dim);
        for (std::size_t d = 0; d < dim; ++d)
            chaos_.emplace_back(config_.chaotic_map, rng_);

        next_.assign(n, std::vector<double>(dim));
        evaluate_population();
        update_roles(/*keep_previous=*/false);
    }

    const Problem& problem() const noexcept { return *problem_; }
    const ChoaConfig& config() const noexcept { return config_; }
    const Population& population() const noexcept { return population_; }
    const Roles& roles() const noexcept { return roles_; }
    const UpdateCounts& update_counts() const noexcept { return counts_; }
    std::size_t iteration() const noexcept { return iteration_; }
    double best_fitness() const noexcept { return roles_.attacker().fitness; }
    std::span<const double> best_position() const noexcept { return roles_.attacker().position; }
    bool finished() const noexcept { return iteration_ >= config_.max_iterations; }

    /// One synchronous iteration: every chimp moves using the roles from the
    /// start of the iteration, is clamped to the box and re-evaluated.
    void step()
    {
        if (finished())
            throw std::logic_error("iteration budget exhausted");
        const double f = compute_f(iteration_, config_.max_iterations, config_.f_schedule);
        const double progress = static_cast<double>(iteration_) / static_cast<double>(config_.max_iterations);
        const auto prey = roles_.prey();

        for (std::size_t i = 0; i < population_.size(); ++i) {
            const auto& x = population_.positions[i];
            auto& out = next_[i];
            const double lambda = rng_.next_uniform();
            if (lambda < config_.lambda_threshold) {
                for (auto& co : coefficients_)
                    compute_coefficients(f, rng_, chaos_, co);
                role_based_position(x, roles_, coefficients_, out);
                ++counts_.role_based;
            } else if (modulus_) {
                const SpiralSample s = modulus_->sample(progress, rng_);
                spiral_step(x, prey, s.modulus, s.draw, out);
                ++counts_.spiral;
            } else {
                chaotic_step(x, prey, chaos_, out);
                ++counts_.chaotic;
            }
            clamp_to_bounds(out);
        }
        population_.positions.swap(next_);
        evaluate_population();
        update_roles(/*keep_previous=*/true);
        ++iteration_;
    }

private:
    static constexpr std::uint64_t noise_stream = 0x4E4F495345ULL;

    void clamp_to_bounds(std::vector<double>& x) const
    {
        const auto& lo = problem_->bounds.lower;
        const auto& hi = problem_->bounds.upper;
        for (std::size_t d = 0; d < x.size(); ++d)
            x[d] = std::isnan(x[d]) ? lo[d] : std::clamp(x[d], lo[d], hi[d]);
    }

    void evaluate_population()
    {
        population_.fitness.resize(population_.size());
        for (std::size_t i = 0; i < population_.size(); ++i)
            population_.fitness[i] = problem_->evaluate(population_.positions[i], noise_);
        population_.evaluations_used += population_.size();
    }

    // Stable selection of the four best among the previous roles (listed
    // first, so they win ties) and the current population.
    void update_roles(bool keep_previous)
    {
        struct Candidate
        {
            double key;
            const std::vector<double>* position;
            double fitness;
        };
        std::vector<Candidate> pool;
        pool.reserve(population_.size() + 4);
        auto key = [](double f) { return std::isnan(f) ? std::numeric_limits<double>::infinity() : f; };
        if (keep_previous)
            for (const auto& m : roles_.ranked)
                pool.push_back({key(m.fitness), &m.position, m.fitness});
        for (std::size_t i = 0; i < population_.size(); ++i)
            pool.push_back({key(population_.fitness[i]), &population_.positions[i], population_.fitness[i]});
        const std::size_t take = std::min<std::size_t>(4, pool.size());
        std::stable_sort(pool.begin(), pool.end(), [](const Candidate& a, const Candidate& b) { return a.key < b.key; });

        std::array<Member, 4> next;
        for (std::size_t k = 0; k < 4; ++k) {
            const auto& c = pool[std::min(k, take - 1)];
            next[k] = {*c.position, c.fitness};
        }
        roles_.ranked = std::move(next);
    }

    const Problem* problem_;
    ChoaConfig config_;
    RngStream rng_;
    RngStream noise_;
    std::vector<ChaoticMap> chaos_;
    std::optional<SpiralModulus> modulus_;
    Population population_;
    std::vector<std::vector<double>> next_;
    std::array<Coefficients, 4> coefficients_;
    Roles roles_;
    UpdateCounts counts_;
    std::size_t iteration_ = 0;
};

/// Full run: initialization plus max_iterations steps, with the best-so-far trace.
inline RunRecord optimize(const Problem& problem, const ChoaConfig& config)
{
    const auto start = std::chrono::steady_clock::now();
    ChoaOptimizer opt(problem, config);
    RunRecord rec;
    rec.algorithm = variant_name(config.spiral);
    rec.problem = problem.name;
    rec.seed = config.seed;
    rec.trace.reserve(config.max_iterations + 1);
    rec.trace.push_back(opt.best_fitness());
    while (!opt.finished()) {
        opt.step();
        rec.trace.push_back(opt.best_fitness());
    }
    rec.best_position.assign(opt.best_position().begin(), opt.best_position().end());
    rec.best_fitness = opt.best_fitness();
    rec.evaluations_used = opt.population().evaluations_used;
    annotate_constraints(problem, rec);
    rec.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

} // namespace sebchoa
