#pragma once

#include "seb_choa/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sebchoa {

enum class SpiralKind { Archimedean, Logarithmic, Fermat, Lituus, Equiangular, Random, HSS1, HSS2 };

inline constexpr std::array<SpiralKind, 8> all_spiral_kinds{
    SpiralKind::Archimedean, SpiralKind::Logarithmic, SpiralKind::Fermat, SpiralKind::Lituus,
    SpiralKind::Equiangular, SpiralKind::Random,      SpiralKind::HSS1,   SpiralKind::HSS2};

constexpr std::string_view to_string(SpiralKind kind) noexcept
{
    switch (kind) {
    case SpiralKind::Archimedean: return "archimedean";
    case SpiralKind::Logarithmic: return "logarithmic";
    case SpiralKind::Fermat: return "fermat";
    case SpiralKind::Lituus: return "lituus";
    case SpiralKind::Equiangular: return "equiangular";
    case SpiralKind::Random: return "random";
    case SpiralKind::HSS1: return "hss1";
    case SpiralKind::HSS2: return "hss2";
    }
    return "?";
}

inline std::optional<SpiralKind> parse_spiral_kind(std::string_view name)
{
    for (auto kind : all_spiral_kinds)
        if (to_string(kind) == name)
            return kind;
    return std::nullopt;
}

/// Comma-separated list of every spiral name, for error messages.
inline std::string spiral_kind_names()
{
    std::string out;
    for (auto kind : all_spiral_kinds) {
        if (!out.empty())
            out += ", ";
        out += to_string(kind);
    }
    return out;
}

/// Laws whose radius shrinks as the angle grows.
constexpr bool radius_decreases_with_angle(SpiralKind kind) noexcept
{
    return kind == SpiralKind::Lituus;
}

constexpr bool is_implicit(SpiralKind kind) noexcept
{
    return kind == SpiralKind::HSS1 || kind == SpiralKind::HSS2;
}

/// A spiral law together with its slope a > 0.
class Spiral
{
public:
    explicit Spiral(SpiralKind kind, double slope = 1.0) : kind_(kind), slope_(slope)
    {
        if (!(slope > 0.0) || !std::isfinite(slope))
            throw std::invalid_argument("spiral slope must be a positive finite number");
    }

    SpiralKind kind() const noexcept { return kind_; }
    double slope() const noexcept { return slope_; }

    friend bool operator==(const Spiral&, const Spiral&) = default;

private:
    SpiralKind kind_;
    double slope_;
};

namespace detail {

// Left-hand side of the implicit laws and its derivative in r.
inline double implicit_law(SpiralKind kind, double r)
{
    return kind == SpiralKind::HSS1 ? r * std::log(r) : r * r * std::log(r);
}

inline double implicit_law_derivative(SpiralKind kind, double r)
{
    return kind == SpiralKind::HSS1 ? std::log(r) + 1.0 : r * (2.0 * std::log(r) + 1.0);
}

inline void check_theta(SpiralKind kind, double theta)
{
    if (!std::isfinite(theta))
        throw std::domain_error("spiral angle must be finite");
    const bool strictly_positive = kind == SpiralKind::Lituus || is_implicit(kind);
    if (strictly_positive ? !(theta > 0.0) : theta < 0.0)
        throw std::domain_error(std::string(to_string(kind)) + " spiral is undefined at theta = " +
                                std::to_string(theta) +
                                (strictly_positive ? " (requires theta > 0)" : " (requires theta >= 0)"));
}

} // namespace detail

/// Root r >= 1 of r*ln(r) = a*theta (HSS1) or r^2*ln(r) = a*theta (HSS2).
///
/// Both left-hand sides are zero at r = 1 and strictly increasing beyond it,
/// so the root is bracketed by [1, hi] with hi doubled until the law exceeds
/// the target. Bisection narrows the bracket, Newton polishes inside it.
/// Converges when |law(r) - a*theta| <= max(tol, 4 eps a*theta).
inline double solve_implicit_radius(SpiralKind kind, double slope, double theta, double tol = 1e-12)
{
    if (!is_implicit(kind))
        throw std::invalid_argument("solve_implicit_radius only applies to hss1 and hss2");
    if (!(slope > 0.0) || !(theta > 0.0) || !(tol > 0.0) || !std::isfinite(slope * theta))
        throw std::domain_error("solve_implicit_radius requires slope > 0, theta > 0 and tol > 0");

    const double target = slope * theta;
    const double accept = std::max(tol, 4.0 * std::numeric_limits<double>::epsilon() * target);
    auto residual = [&](double r) { return detail::implicit_law(kind, r) - target; };

    double lo = 1.0;
    double hi = 2.0;
    while (residual(hi) < 0.0)
        hi *= 2.0;

    constexpr int max_iterations = 200;
    int it = 0;
    for (; it < max_iterations && hi - lo > 1e-6 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (residual(mid) < 0.0 ? lo : hi) = mid;
    }

    double r = 0.5 * (lo + hi);
    for (; it < max_iterations; ++it) {
        const double g = residual(r);
        if (std::abs(g) <= accept)
            return r;
        (g < 0.0 ? lo : hi) = r;
        double next = r - g / detail::implicit_law_derivative(kind, r);
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        if (next == r)
            break;
        r = next;
    }
    if (std::abs(residual(r)) <= accept)
        return r;
    throw std::runtime_error("implicit spiral solve did not converge for a*theta = " +
                             std::to_string(target));
}

/// Radius from an already drawn random slope u in [0, 1).
inline double random_spiral_radius(double theta, double u)
{
    detail::check_theta(SpiralKind::Random, theta);
    return u * theta;
}

/// Radius of a deterministic law. The random spiral needs a stream; use the
/// overload taking RngStream.
inline double spiral_radius(const Spiral& spiral, double theta)
{
    detail::check_theta(spiral.kind(), theta);
    const double a = spiral.slope();
    double r = 0.0;
    switch (spiral.kind()) {
    case SpiralKind::Archimedean: r = a * theta; break;
    case SpiralKind::Logarithmic: r = std::pow(10.0, a * theta); break;
    case SpiralKind::Fermat: r = a * std::sqrt(theta); break;
    case SpiralKind::Lituus: r = a / std::sqrt(theta); break;
    case SpiralKind::Equiangular: r = std::exp(a * theta); break;
    case SpiralKind::HSS1:
    case SpiralKind::HSS2: r = solve_implicit_radius(spiral.kind(), a, theta); break;
    case SpiralKind::Random:
        throw std::invalid_argument("the random spiral needs a random stream");
    }
    if (!std::isfinite(r))
        throw std::domain_error(std::string(to_string(spiral.kind())) +
                                " spiral radius overflows at theta = " + std::to_string(theta));
    return r;
}

/// Radius of any law; the random spiral draws a fresh slope from `rng` per call.
inline double spiral_radius(const Spiral& spiral, double theta, RngStream& rng)
{
    if (spiral.kind() == SpiralKind::Random) {
        detail::check_theta(SpiralKind::Random, theta);
        return random_spiral_radius(theta, rng.next_uniform());
    }
    return spiral_radius(spiral, theta);
}

/// Angle range, gain and clamp used to turn radii into an exploitation modulus.
///
/// The default gain of 2 lets early spiral moves land up to one prey distance
/// beyond the prey; with gain 1 the move could only contract.
struct ModulusSchedule
{
    double theta_max = 4.0 * std::numbers::pi;
    double theta_min = 1e-3;
    double gain = 2.0;
    double modulus_max = 2.0;

    void validate() const
    {
        if (!(theta_min > 0.0) || !(theta_max > theta_min) || !std::isfinite(theta_max))
            throw std::invalid_argument("modulus schedule needs 0 < theta_min < theta_max");
        if (!(gain > 0.0) || !std::isfinite(gain))
            throw std::invalid_argument("modulus gain must be positive");
        if (!(modulus_max > 0.0) || !std::isfinite(modulus_max))
            throw std::invalid_argument("modulus clamp must be positive");
    }
};

struct SpiralSample
{
    double theta;   ///< angle at which the law was evaluated
    double radius;
    double modulus; ///< gain * radius / reference radius, clamped to [0, modulus_max]
    double draw;    ///< the uniform l behind theta; also drives cos(2 pi l)
};

/// Maps search progress to a spiral amplitude.
///
/// theta = theta_max (1 - progress) l + theta_min with l ~ U[0, 1), so the
/// angle shrinks on average as the run advances. The modulus is the gain times
/// the radius at that angle divided by the largest radius the schedule can
/// reach (the law at theta_max, or theta_max itself for the random spiral).
/// For the lituus, whose radius falls as the angle grows, the schedule is
/// mirrored (theta -> theta_max + theta_min - theta) and normalized at
/// theta_min so its amplitude also decays over the run.
class SpiralModulus
{
public:
    explicit SpiralModulus(Spiral spiral, ModulusSchedule schedule = {})
        : spiral_(spiral), schedule_(schedule)
    {
        schedule_.validate();
        if (spiral_.kind() == SpiralKind::Random)
            reference_ = schedule_.theta_max;
        else if (radius_decreases_with_angle(spiral_.kind()))
            reference_ = spiral_radius(spiral_, schedule_.theta_min);
        else
            reference_ = spiral_radius(spiral_, schedule_.theta_max);
    }

    const Spiral& spiral() const noexcept { return spiral_; }
    const ModulusSchedule& schedule() const noexcept { return schedule_; }
    double reference_radius() const noexcept { return reference_; }

    /// Evaluates the law for a given draw l (and random slope u, used only by the random spiral).
    SpiralSample at(double progress, double l, double u = 0.0) const
    {
        if (!(progress >= 0.0 && progress <= 1.0))
            throw std::domain_error("progress must lie in [0, 1]");
        double theta = schedule_.theta_max * (1.0 - progress) * l + schedule_.theta_min;
        if (radius_decreases_with_angle(spiral_.kind()))
            theta = schedule_.theta_max + schedule_.theta_min - theta;
        const double r = spiral_.kind() == SpiralKind::Random ? random_spiral_radius(theta, u)
                                                              : spiral_radius(spiral_, theta);
        const double m = std::clamp(schedule_.gain * r / reference_, 0.0, schedule_.modulus_max);
        return {theta, r, m, l};
    }

    SpiralSample sample(double progress, RngStream& rng) const
    {
        const double l = rng.next_uniform();
        const double u = spiral_.kind() == SpiralKind::Random ? rng.next_uniform() : 0.0;
        return at(progress, l, u);
    }

private:
    Spiral spiral_;
    ModulusSchedule schedule_;
    double reference_{1.0};
};

/// One-shot modulus draw with the default schedule.
inline SpiralSample spiral_modulus(const Spiral& spiral, double progress, RngStream& rng)
{
    return SpiralModulus(spiral).sample(progress, rng);
}

} // namespace sebchoa
