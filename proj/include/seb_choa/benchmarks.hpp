#pragma once

// The classical 23-function benchmark set: F1-F7 unimodal, F8-F13
// multimodal (scalable dimension), F14-F23 fixed-dimension multimodal.

#include "seb_choa/problem.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace sebchoa::bench {

using std::numbers::pi;

inline double sphere(std::span<const double> x)
{
    double s = 0.0;
    for (double v : x)
        s += v * v;
    return s;
}

inline double schwefel_2_22(std::span<const double> x)
{
    double s = 0.0, p = 1.0;
    for (double v : x) {
        s += std::abs(v);
        p *= std::abs(v);
    }
    return s + p;
}

inline double schwefel_1_2(std::span<const double> x)
{
    double s = 0.0, prefix = 0.0;
    for (double v : x) {
        prefix += v;
        s += prefix * prefix;
    }
    return s;
}

inline double schwefel_2_21(std::span<const double> x)
{
    double m = 0.0;
    for (double v : x)
        m = std::max(m, std::abs(v));
    return m;
}

inline double rosenbrock(std::span<const double> x)
{
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double a = x[i + 1] - x[i] * x[i];
        const double b = x[i] - 1.0;
        s += 100.0 * a * a + b * b;
    }
    return s;
}

inline double step(std::span<const double> x)
{
    double s = 0.0;
    for (double v : x) {
        const double f = std::floor(v + 0.5);
        s += f * f;
    }
    return s;
}

/// Quartic term only; the noisy objective adds a U[0, 1) draw.
inline double quartic(std::span<const double> x)
{
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double v2 = x[i] * x[i];
        s += static_cast<double>(i + 1) * v2 * v2;
    }
    return s;
}

inline double schwefel_2_26(std::span<const double> x)
{
    double s = 0.0;
    for (double v : x)
        s -= v * std::sin(std::sqrt(std::abs(v)));
    return s;
}

inline double rastrigin(std::span<const double> x)
{
    double s = 0.0;
    for (double v : x)
        s += v * v - 10.0 * std::cos(2.0 * pi * v) + 10.0;
    return s;
}

inline double ackley(std::span<const double> x)
{
    double sq = 0.0, cs = 0.0;
    for (double v : x) {
        sq += v * v;
        cs += std::cos(2.0 * pi * v);
    }
    const double n = static_cast<double>(x.size());
    return -20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n) + 20.0 + std::numbers::e;
}

inline double griewank(std::span<const double> x)
{
    double s = 0.0, p = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += x[i] * x[i];
        p *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    return s / 4000.0 - p + 1.0;
}

/// Boundary penalty shared by the two penalized functions.
inline double boundary_penalty(double v, double a, double k, double m)
{
    if (v > a)
        return k * std::pow(v - a, m);
    if (v < -a)
        return k * std::pow(-v - a, m);
    return 0.0;
}

inline double penalized_1(std::span<const double> x)
{
    const std::size_t n = x.size();
    auto y = [&](std::size_t i) { return 1.0 + (x[i] + 1.0) / 4.0; };
    const double s0 = std::sin(pi * y(0));
    double s = 10.0 * s0 * s0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double si = std::sin(pi * y(i + 1));
        s += (y(i) - 1.0) * (y(i) - 1.0) * (1.0 + 10.0 * si * si);
    }
    s += (y(n - 1) - 1.0) * (y(n - 1) - 1.0);
    double pen = 0.0;
    for (double v : x)
        pen += boundary_penalty(v, 10.0, 100.0, 4.0);
    return pi / static_cast<double>(n) * s + pen;
}

inline double penalized_2(std::span<const double> x)
{
    const std::size_t n = x.size();
    const double s0 = std::sin(3.0 * pi * x[0]);
    double s = s0 * s0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double si = std::sin(3.0 * pi * x[i + 1]);
        s += (x[i] - 1.0) * (x[i] - 1.0) * (1.0 + si * si);
    }
    const double sn = std::sin(2.0 * pi * x[n - 1]);
    s += (x[n - 1] - 1.0) * (x[n - 1] - 1.0) * (1.0 + sn * sn);
    double pen = 0.0;
    for (double v : x)
        pen += boundary_penalty(v, 5.0, 100.0, 4.0);
    return 0.1 * s + pen;
}

inline double shekel_foxholes(std::span<const double> x)
{
    constexpr std::array<double, 5> grid{-32.0, -16.0, 0.0, 16.0, 32.0};
    double s = 0.0;
    for (std::size_t j = 0; j < 25; ++j) {
        const double d0 = x[0] - grid[j % 5];
        const double d1 = x[1] - grid[j / 5];
        s += 1.0 / (static_cast<double>(j + 1) + std::pow(d0, 6) + std::pow(d1, 6));
    }
    return 1.0 / (1.0 / 500.0 + s);
}

inline double kowalik(std::span<const double> x)
{
    constexpr std::array<double, 11> a{0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627,
                                       0.0456, 0.0342, 0.0323, 0.0235, 0.0246};
    constexpr std::array<double, 11> inv_b{0.25, 0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0};
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double b = 1.0 / inv_b[i];
        const double r = a[i] - x[0] * (b * b + b * x[1]) / (b * b + b * x[2] + x[3]);
        s += r * r;
    }
    return s;
}

inline double six_hump_camel(std::span<const double> x)
{
    const double a = x[0], b = x[1];
    return 4.0 * a * a - 2.1 * std::pow(a, 4) + std::pow(a, 6) / 3.0 + a * b - 4.0 * b * b + 4.0 * std::pow(b, 4);
}

inline double branin(std::span<const double> x)
{
    const double t = x[1] - 5.1 / (4.0 * pi * pi) * x[0] * x[0] + 5.0 / pi * x[0] - 6.0;
    return t * t + 10.0 * (1.0 - 1.0 / (8.0 * pi)) * std::cos(x[0]) + 10.0;
}

inline double goldstein_price(std::span<const double> x)
{
    const double a = x[0], b = x[1];
    const double s = a + b + 1.0;
    const double t = 2.0 * a - 3.0 * b;
    return (1.0 + s * s * (19.0 - 14.0 * a + 3.0 * a * a - 14.0 * b + 6.0 * a * b + 3.0 * b * b)) *
           (30.0 + t * t * (18.0 - 32.0 * a + 12.0 * a * a + 48.0 * b - 36.0 * a * b + 27.0 * b * b));
}

namespace detail {

inline constexpr std::array<double, 4> hartmann_weights{1.0, 1.2, 3.0, 3.2};

template <std::size_t D>
double hartmann(std::span<const double> x, const std::array<std::array<double, D>, 4>& a,
                const std::array<std::array<double, D>, 4>& p)
{
    double s = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        double e = 0.0;
        for (std::size_t j = 0; j < D; ++j)
            e += a[i][j] * (x[j] - p[i][j]) * (x[j] - p[i][j]);
        s -= hartmann_weights[i] * std::exp(-e);
    }
    return s;
}

inline double shekel(std::span<const double> x, std::size_t m)
{
    constexpr std::array<std::array<double, 4>, 10> a{{{4, 4, 4, 4},
                                                       {1, 1, 1, 1},
                                                       {8, 8, 8, 8},
                                                       {6, 6, 6, 6},
                                                       {3, 7, 3, 7},
                                                       {2, 9, 2, 9},
                                                       {5, 5, 3, 3},
                                                       {8, 1, 8, 1},
                                                       {6, 2, 6, 2},
                                                       {7, 3.6, 7, 3.6}}};
    constexpr std::array<double, 10> c{0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5};
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double d = c[i];
        for (std::size_t j = 0; j < 4; ++j)
            d += (x[j] - a[i][j]) * (x[j] - a[i][j]);
        s -= 1.0 / d;
    }
    return s;
}

} // namespace detail

inline double hartmann_3(std::span<const double> x)
{
    constexpr std::array<std::array<double, 3>, 4> a{{{3, 10, 30}, {0.1, 10, 35}, {3, 10, 30}, {0.1, 10, 35}}};
    constexpr std::array<std::array<double, 3>, 4> p{{{0.3689, 0.1170, 0.2673},
                                                      {0.4699, 0.4387, 0.7470},
                                                      {0.1091, 0.8732, 0.5547},
                                                      {0.03815, 0.5743, 0.8828}}};
    return detail::hartmann<3>(x, a, p);
}

inline double hartmann_6(std::span<const double> x)
{
    constexpr std::array<std::array<double, 6>, 4> a{{{10, 3, 17, 3.5, 1.7, 8},
                                                      {0.05, 10, 17, 0.1, 8, 14},
                                                      {3, 3.5, 1.7, 10, 17, 8},
                                                      {17, 8, 0.05, 10, 0.1, 14}}};
    constexpr std::array<std::array<double, 6>, 4> p{{{0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
                                                      {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
                                                      {0.2348, 0.1452, 0.3522, 0.2883, 0.3047, 0.6650},
                                                      {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381}}};
    return detail::hartmann<6>(x, a, p);
}

inline double shekel_5(std::span<const double> x) { return detail::shekel(x, 5); }
inline double shekel_7(std::span<const double> x) { return detail::shekel(x, 7); }
inline double shekel_10(std::span<const double> x) { return detail::shekel(x, 10); }

/// Second root of d/dx[x sin(sqrt x)] = 0, where the Schwefel 2.26 term bottoms out.
inline constexpr double schwefel_2_26_argmin = 420.9687463599821;

} // namespace sebchoa::bench

namespace sebchoa {

namespace detail {

inline Problem make_problem(std::string alias, std::string name, Category category, std::size_t dim,
                            double lo, double hi, VectorFunction f, std::optional<double> optimum,
                            std::optional<std::vector<double>> location)
{
    Problem p;
    p.name = std::move(name);
    p.alias = std::move(alias);
    p.dimension = dim;
    p.bounds = Bounds::uniform(dim, lo, hi);
    p.objective = deterministic(std::move(f));
    p.category = category;
    p.known_optimum = optimum;
    p.optimum_location = std::move(location);
    return p;
}

} // namespace detail

/// F1-F23 in canonical order. F1-F13 use `dimension` variables (default 30).
inline std::vector<Problem> standard_suite(std::size_t dimension = 30)
{
    using namespace bench;
    using sebchoa::detail::make_problem;
    const std::size_t n = dimension;
    if (n < 2)
        throw std::invalid_argument("scalable benchmarks need at least 2 variables");
    const auto zeros = std::vector<double>(n, 0.0);
    const auto ones = std::vector<double>(n, 1.0);
    const auto minus_ones = std::vector<double>(n, -1.0);
    const auto U = Category::Unimodal;
    const auto M = Category::Multimodal;
    const auto FD = Category::FixedDimension;

    std::vector<Problem> s;
    s.reserve(23);
    s.push_back(make_problem("F1", "sphere", U, n, -100, 100, sphere, 0.0, zeros));
    s.push_back(make_problem("F2", "schwefel-2.22", U, n, -10, 10, schwefel_2_22, 0.0, zeros));
    s.push_back(make_problem("F3", "schwefel-1.2", U, n, -100, 100, schwefel_1_2, 0.0, zeros));
    s.push_back(make_problem("F4", "schwefel-2.21", U, n, -100, 100, schwefel_2_21, 0.0, zeros));
    s.push_back(make_problem("F5", "rosenbrock", U, n, -30, 30, rosenbrock, 0.0, ones));
    s.push_back(make_problem("F6", "step", U, n, -100, 100, step, 0.0, zeros));
    {
        auto p = make_problem("F7", "quartic-noise", U, n, -1.28, 1.28, quartic, 0.0, std::nullopt);
        p.objective = [](std::span<const double> x, RngStream& noise) { return quartic(x) + noise.next_uniform(); };
        p.noisy = true;
        s.push_back(std::move(p));
    }
    const std::vector<double> schwefel_at(n, schwefel_2_26_argmin);
    s.push_back(make_problem("F8", "schwefel-2.26", M, n, -500, 500, schwefel_2_26,
                             schwefel_2_26(schwefel_at), schwefel_at));
    s.push_back(make_problem("F9", "rastrigin", M, n, -5.12, 5.12, rastrigin, 0.0, zeros));
    s.push_back(make_problem("F10", "ackley", M, n, -32, 32, ackley, 0.0, zeros));
    s.push_back(make_problem("F11", "griewank", M, n, -600, 600, griewank, 0.0, zeros));
    s.push_back(make_problem("F12", "penalized-1", M, n, -50, 50, penalized_1, 0.0, minus_ones));
    s.push_back(make_problem("F13", "penalized-2", M, n, -50, 50, penalized_2, 0.0, ones));

    s.push_back(make_problem("F14", "shekel-foxholes", FD, 2, -65.536, 65.536, shekel_foxholes,
                             0.9980038377944502, std::vector{-31.978332112714, -31.97834113989}));
    s.push_back(make_problem("F15", "kowalik", FD, 4, -5, 5, kowalik, 0.0003074859878056051,
                             std::vector{0.192833453081, 0.190836239991, 0.123117299277, 0.135765990269}));
    s.push_back(make_problem("F16", "six-hump-camel", FD, 2, -5, 5, six_hump_camel, -1.0316284534898776,
                             std::vector{0.08984201, -0.7126564}));
    {
        auto p = make_problem("F17", "branin", FD, 2, 0, 0, branin, 0.39788735772973816,
                              std::vector{std::numbers::pi, 2.275});
        p.bounds = {{-5.0, 0.0}, {10.0, 15.0}};
        s.push_back(std::move(p));
    }
    s.push_back(make_problem("F18", "goldstein-price", FD, 2, -2, 2, goldstein_price, 3.0, std::vector{0.0, -1.0}));
    s.push_back(make_problem("F19", "hartmann-3", FD, 3, 0, 1, hartmann_3, -3.862782147820756,
                             std::vector{0.114614342031, 0.555648850791, 0.852546953846}));
    s.push_back(make_problem("F20", "hartmann-6", FD, 6, 0, 1, hartmann_6, -3.3223779808800935,
                             std::vector{0.201689034592, 0.150100382768, 0.476877514312, 0.275332168024,
                                         0.31165159959, 0.657301249958}));
    s.push_back(make_problem("F21", "shekel-5", FD, 4, 0, 10, shekel_5, -10.153199679058229,
                             std::vector{4.000037152377, 4.000133278658, 4.000037151058, 4.00013327709}));
    s.push_back(make_problem("F22", "shekel-7", FD, 4, 0, 10, shekel_7, -10.402940566818664,
                             std::vector{4.000572914268, 4.000689365863, 3.999489710414, 3.999606160388}));
    s.push_back(make_problem("F23", "shekel-10", FD, 4, 0, 10, shekel_10, -10.536409816692046,
                             std::vector{4.000746533202, 4.000592934539, 3.99966339722, 3.999509801285}));
    return s;
}

} // namespace sebchoa
