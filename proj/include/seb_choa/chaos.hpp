#pragma once

#include "seb_choa/rng.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sebchoa {

enum class ChaoticMapKind { Logistic, Tent, Sine };

inline constexpr std::array<ChaoticMapKind, 3> all_chaotic_maps{
    ChaoticMapKind::Logistic, ChaoticMapKind::Tent, ChaoticMapKind::Sine};

constexpr std::string_view to_string(ChaoticMapKind kind) noexcept
{
    switch (kind) {
    case ChaoticMapKind::Logistic: return "logistic";
    case ChaoticMapKind::Tent: return "tent";
    case ChaoticMapKind::Sine: return "sine";
    }
    return "?";
}

inline std::optional<ChaoticMapKind> parse_chaotic_map(std::string_view name)
{
    for (auto kind : all_chaotic_maps)
        if (to_string(kind) == name)
            return kind;
    return std::nullopt;
}

/// One application of the map's recurrence. Throws std::domain_error unless 0 < x < 1.
inline double chaotic_step(ChaoticMapKind kind, double x)
{
    if (!(x > 0.0 && x < 1.0))
        throw std::domain_error("chaotic map state must lie in (0, 1), got " + std::to_string(x));
    switch (kind) {
    case ChaoticMapKind::Logistic: return 4.0 * x * (1.0 - x);
    case ChaoticMapKind::Tent: return x < 0.5 ? 2.0 * x : 2.0 * (1.0 - x);
    case ChaoticMapKind::Sine: return std::sin(std::numbers::pi * x);
    }
    return x;
}

/// True for fixed points and values that reach 0 or 1 within a couple of steps.
inline bool is_degenerate_state(ChaoticMapKind kind, double x) noexcept
{
    constexpr double guard = 1e-6;
    auto near = [&](double p) { return std::abs(x - p) < guard; };
    switch (kind) {
    case ChaoticMapKind::Logistic: return near(0.25) || near(0.5) || near(0.75);
    case ChaoticMapKind::Tent: return near(0.5) || near(1.0 / 3.0) || near(2.0 / 3.0);
    // sin(pi x) = x has its nonzero root at 0.736484448...
    case ChaoticMapKind::Sine: return near(0.5) || near(0.7364844482);
    }
    return false;
}

/// Stateful chaotic sequence in (0, 1).
///
/// Floating-point orbits can collapse: the tent map shifts one mantissa bit
/// out per step and lands on 1 after at most ~53 iterations, and the logistic
/// map can round to exactly 1. Whenever the next state leaves (0, 1) or
/// repeats the current state, the sequence is re-seeded from an internal
/// splitmix64 counter, so it stays deterministic and inside the open interval.
class ChaoticMap
{
public:
    /// Initial state drawn from `rng`, rejected into (0.01, 0.99) minus degenerate points.
    ChaoticMap(ChaoticMapKind kind, RngStream& rng) : kind_(kind), reseed_(rng.next_u64())
    {
        state_ = admissible(rng);
    }

    /// Explicit start; throws std::domain_error unless 0 < state < 1.
    ChaoticMap(ChaoticMapKind kind, double state, std::uint64_t reseed = 0)
        : kind_(kind), state_(state), reseed_(reseed)
    {
        if (!(state > 0.0 && state < 1.0))
            throw std::domain_error("chaotic map state must lie in (0, 1)");
    }

    ChaoticMapKind kind() const noexcept { return kind_; }
    double state() const noexcept { return state_; }
    std::size_t reseeds() const noexcept { return reseeds_; }

    double next()
    {
        double s = chaotic_step(kind_, state_);
        if (!(s > 0.0 && s < 1.0) || s == state_) {
            s = reinject();
            ++reseeds_;
        }
        state_ = s;
        return s;
    }

private:
    template <class Source>
    double admissible(Source& src)
    {
        for (;;) {
            const double u = src.next_uniform();
            if (u > 0.01 && u < 0.99 && !is_degenerate_state(kind_, u))
                return u;
        }
    }

    double reinject()
    {
        struct Counter
        {
            std::uint64_t& s;
            double next_uniform() { return static_cast<double>(mix64(s++) >> 11) * 0x1.0p-53; }
        } counter{reseed_};
        return admissible(counter);
    }

    ChaoticMapKind kind_;
    double state_{0.5};
    std::uint64_t reseed_;
    std::size_t reseeds_{0};
};

} // namespace sebchoa
