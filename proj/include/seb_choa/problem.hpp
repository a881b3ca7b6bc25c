#pragma once

#include "seb_choa/rng.hpp"

#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sebchoa {

enum class Category { Unimodal, Multimodal, FixedDimension, Constrained };

constexpr std::string_view to_string(Category c) noexcept
{
    switch (c) {
    case Category::Unimodal: return "unimodal";
    case Category::Multimodal: return "multimodal";
    case Category::FixedDimension: return "fixed-dimension";
    case Category::Constrained: return "constrained";
    }
    return "?";
}

inline std::optional<Category> parse_category(std::string_view name)
{
    for (auto c : {Category::Unimodal, Category::Multimodal, Category::FixedDimension, Category::Constrained})
        if (to_string(c) == name)
            return c;
    return std::nullopt;
}

/// Objective to minimize. The stream is only consumed by noisy objectives.
using Objective = std::function<double(std::span<const double>, RngStream&)>;
using VectorFunction = std::function<double(std::span<const double>)>;

struct Bounds
{
    std::vector<double> lower;
    std::vector<double> upper;

    static Bounds uniform(std::size_t dim, double lo, double hi)
    {
        return {std::vector<double>(dim, lo), std::vector<double>(dim, hi)};
    }

    bool contains(std::span<const double> x) const noexcept
    {
        if (x.size() != lower.size())
            return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!(x[i] >= lower[i] && x[i] <= upper[i]))
                return false;
        return true;
    }
};

struct Problem
{
    std::string name;
    /// Optional short label, e.g. "F9"; also resolvable through Registry::find.
    std::string alias;
    std::size_t dimension = 0;
    Bounds bounds;
    Objective objective;
    Category category = Category::Unimodal;
    std::optional<double> known_optimum;
    /// Documented location of known_optimum, when one is known.
    std::optional<std::vector<double>> optimum_location;
    bool noisy = false;

    /// Set only for constrained problems: total violation and unpenalized objective.
    VectorFunction violation;
    VectorFunction raw_objective;

    bool constrained() const noexcept { return static_cast<bool>(violation); }

    void validate() const
    {
        if (name.empty())
            throw std::invalid_argument("problem name must not be empty");
        if (dimension == 0)
            throw std::invalid_argument("problem '" + name + "' has zero dimension");
        if (bounds.lower.size() != dimension || bounds.upper.size() != dimension)
            throw std::invalid_argument("problem '" + name + "' bounds do not match its dimension");
        for (std::size_t i = 0; i < dimension; ++i) {
            if (!std::isfinite(bounds.lower[i]) || !std::isfinite(bounds.upper[i]))
                throw std::invalid_argument("problem '" + name + "' has non-finite bounds");
            if (!(bounds.lower[i] < bounds.upper[i]))
                throw std::invalid_argument("problem '" + name + "' has zero-volume bounds in dimension " +
                                            std::to_string(i));
        }
        if (!objective)
            throw std::invalid_argument("problem '" + name + "' has no objective");
        if (optimum_location && optimum_location->size() != dimension)
            throw std::invalid_argument("problem '" + name + "' optimum location has the wrong length");
    }

    double evaluate(std::span<const double> x, RngStream& noise) const
    {
        if (x.size() != dimension)
            throw std::invalid_argument("problem '" + name + "' expects " + std::to_string(dimension) +
                                        " variables, got " + std::to_string(x.size()));
        return objective(x, noise);
    }

    /// Evaluation with a fixed-seed noise stream; deterministic for every problem.
    double evaluate(std::span<const double> x) const
    {
        RngStream noise(0);
        return evaluate(x, noise);
    }
};

/// Wraps a noise-free function as an Objective.
inline Objective deterministic(VectorFunction f)
{
    return [f = std::move(f)](std::span<const double> x, RngStream&) { return f(x); };
}

/// Name-addressable collection of problems.
class Registry
{
public:
    using Handle = std::shared_ptr<const Problem>;

    Handle add(Problem problem)
    {
        problem.validate();
        if (find(problem.name) || (!problem.alias.empty() && find(problem.alias)))
            throw std::invalid_argument("a problem named '" + problem.name + "' is already registered");
        problems_.push_back(std::make_shared<const Problem>(std::move(problem)));
        return problems_.back();
    }

    Handle find(std::string_view name) const
    {
        for (const auto& p : problems_)
            if (p->name == name || (!p->alias.empty() && p->alias == name))
                return p;
        return nullptr;
    }

    const Problem& at(std::string_view name) const
    {
        if (auto p = find(name))
            return *p;
        throw std::out_of_range("unknown problem '" + std::string(name) + "'");
    }

    const std::vector<Handle>& problems() const noexcept { return problems_; }

    std::vector<std::string> names() const
    {
        std::vector<std::string> out;
        for (const auto& p : problems_)
            out.push_back(p->name);
        return out;
    }

    std::size_t size() const noexcept { return problems_.size(); }

private:
    std::vector<Handle> problems_;
};

} // namespace sebchoa
