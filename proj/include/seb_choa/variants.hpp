#pragma once

#include "seb_choa/choa.hpp"
#include "seb_choa/harness.hpp"
#include "seb_choa/random_search.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sebchoa {

inline constexpr std::array<std::string_view, 10> variant_names{
    "choa",           "seb-archimedean", "seb-logarithmic", "seb-fermat", "seb-lituus",
    "seb-equiangular", "seb-random",     "seb-hss1",        "seb-hss2",   "random-search"};

inline std::string variant_name_list()
{
    std::string out;
    for (auto v : variant_names) {
        if (!out.empty())
            out += ", ";
        out += v;
    }
    return out;
}

/// Builds a named algorithm. The spiral of `base` is replaced by the one the
/// name selects; its seed is replaced per run.
inline Algorithm make_variant(std::string_view name, ChoaConfig base = {})
{
    const std::string id(name);
    if (name == "random-search") {
        RandomSearchConfig rs{base.population_size, base.max_iterations, 0};
        return {id, [rs](const Problem& p, std::uint64_t seed) {
                    auto cfg = rs;
                    cfg.seed = seed;
                    return random_search(p, cfg);
                }};
    }
    if (name == "choa") {
        base.spiral.reset();
    } else if (name.starts_with("seb-")) {
        const auto kind = parse_spiral_kind(name.substr(4));
        if (!kind)
            throw std::invalid_argument("unknown spiral '" + std::string(name.substr(4)) +
                                        "' in variant '" + id + "'; valid spirals: " + spiral_kind_names());
        const double slope = base.spiral ? base.spiral->slope() : 1.0;
        base.spiral = Spiral(*kind, slope);
    } else {
        throw std::invalid_argument("unknown variant '" + id + "'; valid variants: " + variant_name_list());
    }
    base.validate();
    return {id, [base](const Problem& p, std::uint64_t seed) {
                auto cfg = base;
                cfg.seed = seed;
                return optimize(p, cfg);
            }};
}

} // namespace sebchoa
