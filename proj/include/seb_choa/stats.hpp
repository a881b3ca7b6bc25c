#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace sebchoa {

struct Summary
{
    std::size_t count = 0;
    double mean = 0.0;
    /// Sample standard deviation (n - 1 divisor); 0 when count == 1, see std_defined.
    double std = 0.0;
    double median = 0.0;
    double best = 0.0;
    double worst = 0.0;
    bool std_defined = false;
};

inline Summary summarize(std::span<const double> values)
{
    if (values.empty())
        throw std::invalid_argument("cannot summarize an empty sample");
    Summary s;
    s.count = values.size();
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(s.count);
    if (s.count > 1) {
        double ss = 0.0;
        for (double v : values)
            ss += (v - s.mean) * (v - s.mean);
        s.std = std::sqrt(ss / static_cast<double>(s.count - 1));
        s.std_defined = true;
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = s.count / 2;
    s.median = s.count % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
    s.best = sorted.front();
    s.worst = sorted.back();
    return s;
}

/// 1-based ranks; tied values share the mean of the ranks they span.
inline std::vector<double> mid_ranks(std::span<const double> values)
{
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i + 1;
        while (j < order.size() && values[order[j]] == values[order[i]])
            ++j;
        const double r = 0.5 * static_cast<double>(i + 1 + j);
        for (std::size_t k = i; k < j; ++k)
            ranks[order[k]] = r;
        i = j;
    }
    return ranks;
}

struct RankSumResult
{
    /// Mann-Whitney U of the first sample: pairs (a, b) with a > b, ties counting one half.
    double statistic = 0.0;
    double p_value = 1.0;
    bool significant = false;
    bool exact = false;
};

inline constexpr double significance_level = 0.05;

namespace detail {

/// Number of rank arrangements giving each U in 0..na*nb, via
/// N(m, n, u) = N(m-1, n, u-n) + N(m, n-1, u).
inline std::vector<double> mann_whitney_counts(std::size_t na, std::size_t nb)
{
    // table[m][n] holds the distribution for sample sizes m, n.
    std::vector<std::vector<std::vector<double>>> table(na + 1, std::vector<std::vector<double>>(nb + 1));
    for (std::size_t m = 0; m <= na; ++m) {
        for (std::size_t n = 0; n <= nb; ++n) {
            auto& dist = table[m][n];
            dist.assign(m * n + 1, 0.0);
            if (m == 0 || n == 0) {
                dist[0] = 1.0;
                continue;
            }
            const auto& drop_a = table[m - 1][n];
            const auto& drop_b = table[m][n - 1];
            for (std::size_t u = 0; u < dist.size(); ++u) {
                if (u >= n && u - n < drop_a.size())
                    dist[u] += drop_a[u - n];
                if (u < drop_b.size())
                    dist[u] += drop_b[u];
            }
        }
    }
    return table[na][nb];
}

} // namespace detail

/// Two-sided Wilcoxon rank-sum (Mann-Whitney) test.
///
/// Exact null distribution when na + nb <= 12 and there are no ties; otherwise
/// the normal approximation with tie-corrected variance and a 0.5 continuity
/// correction. Identical pooled values give p = 1.
inline RankSumResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b)
{
    if (a.empty() || b.empty())
        throw std::invalid_argument("rank-sum test needs two nonempty samples");
    for (double v : a)
        if (std::isnan(v))
            throw std::invalid_argument("rank-sum test sample contains NaN");
    for (double v : b)
        if (std::isnan(v))
            throw std::invalid_argument("rank-sum test sample contains NaN");

    const std::size_t na = a.size(), nb = b.size(), n = na + nb;
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const auto ranks = mid_ranks(pooled);
    const double rank_sum_a = std::accumulate(ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(na), 0.0);

    RankSumResult res;
    res.statistic = rank_sum_a - static_cast<double>(na * (na + 1)) / 2.0;

    // Tie groups: sum of t^3 - t.
    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    double tie_term = 0.0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i + 1;
        while (j < n && sorted[j] == sorted[i])
            ++j;
        const double t = static_cast<double>(j - i);
        tie_term += t * t * t - t;
        i = j;
    }

    if (sorted.front() == sorted.back()) {
        res.p_value = 1.0;
        return res;
    }

    if (n <= 12 && tie_term == 0.0) {
        const auto counts = detail::mann_whitney_counts(na, nb);
        const auto u = static_cast<std::size_t>(res.statistic);
        double total = 0.0, lower = 0.0, upper = 0.0;
        for (std::size_t k = 0; k < counts.size(); ++k) {
            total += counts[k];
            if (k <= u)
                lower += counts[k];
            if (k >= u)
                upper += counts[k];
        }
        res.p_value = std::min(1.0, 2.0 * std::min(lower, upper) / total);
        res.exact = true;
    } else {
        const double dna = static_cast<double>(na), dnb = static_cast<double>(nb), dn = static_cast<double>(n);
        const double mean = dna * dnb / 2.0;
        const double var = dna * dnb / 12.0 * ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
        const double dev = std::max(0.0, std::abs(res.statistic - mean) - 0.5);
        const double z = dev / std::sqrt(var);
        res.p_value = std::clamp(std::erfc(z / std::sqrt(2.0)), std::numeric_limits<double>::min(), 1.0);
    }
    res.significant = res.p_value < significance_level;
    return res;
}

} // namespace sebchoa
