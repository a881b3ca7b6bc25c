#pragma once

// Experiment configuration: a flat INI-style file.
//
//   [experiment]
//   algorithms = choa, seb-hss1
//   problems   = standard-suite
//   runs = 30
//   seed = 42
//
//   [choa]                 ; defaults for every ChOA variant
//   population = 30
//   iterations = 500
//
//   [variant.seb-hss1]     ; overrides for one variant
//   slope = 2
//
// '#' and ';' start comments. Every key can also be given on the command line;
// command-line values are applied last.

#include "seb_choa/choa.hpp"
#include "seb_choa/variants.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sebchoa {

/// Configuration error carrying the source and line it refers to (line 0: command line).
class ConfigError : public std::runtime_error
{
public:
    ConfigError(const std::string& source, std::size_t line, const std::string& message)
        : std::runtime_error(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + message),
          line_(line)
    {
    }

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct ConfigEntry
{
    std::string key;
    std::string value;
    std::size_t line = 0;
};

struct ConfigSection
{
    std::string name;
    std::size_t line = 0;
    std::vector<ConfigEntry> entries;
};

namespace detail {

inline std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string> split_list(std::string_view s)
{
    std::vector<std::string> out;
    while (!s.empty()) {
        const auto comma = s.find(',');
        const auto item = trim(s.substr(0, comma));
        if (!item.empty())
            out.emplace_back(item);
        if (comma == std::string_view::npos)
            break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

template <class T>
T parse_number(const ConfigEntry& e, const std::string& source)
{
    T value{};
    const auto* first = e.value.data();
    const auto* last = first + e.value.size();
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last)
        throw ConfigError(source, e.line, "invalid number '" + e.value + "' for key '" + e.key + "'");
    return value;
}

} // namespace detail

/// Splits the text into sections of key = value entries. Entries before the
/// first header land in a section with an empty name.
inline std::vector<ConfigSection> parse_config_sections(std::istream& in, const std::string& source)
{
    std::vector<ConfigSection> sections{{"", 0, {}}};
    std::string raw;
    for (std::size_t line = 1; std::getline(in, raw); ++line) {
        auto text = std::string_view(raw);
        if (const auto c = text.find_first_of("#;"); c != std::string_view::npos)
            text = text.substr(0, c);
        text = detail::trim(text);
        if (text.empty())
            continue;
        if (text.front() == '[') {
            if (text.back() != ']')
                throw ConfigError(source, line, "unterminated section header");
            const auto name = detail::trim(text.substr(1, text.size() - 2));
            if (name.empty())
                throw ConfigError(source, line, "empty section name");
            sections.push_back({std::string(name), line, {}});
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(source, line, "expected 'key = value'");
        const auto key = detail::trim(text.substr(0, eq));
        if (key.empty())
            throw ConfigError(source, line, "missing key before '='");
        sections.back().entries.push_back({std::string(key), std::string(detail::trim(text.substr(eq + 1))), line});
    }
    return sections;
}

/// Keys accepted in [choa] and [variant.*] sections.
inline constexpr std::array<std::string_view, 11> choa_keys{
    "population", "iterations", "chaotic-map", "lambda",       "slope",      "f-schedule",
    "f-exponent", "theta-max",  "theta-min",   "modulus-gain", "modulus-max"};

/// Keys accepted in the [experiment] section.
inline constexpr std::array<std::string_view, 8> experiment_keys{
    "algorithms", "problems", "runs", "seed", "output", "workers", "reference", "dimension"};

/// Applies one [choa]-style key to a configuration.
inline void apply_choa_entry(ChoaConfig& cfg, const ConfigEntry& e, const std::string& source)
{
    using detail::parse_number;
    if (e.key == "population") {
        cfg.population_size = parse_number<std::size_t>(e, source);
        if (cfg.population_size == 0)
            throw ConfigError(source, e.line, "population must be positive");
    } else if (e.key == "iterations") {
        cfg.max_iterations = parse_number<std::size_t>(e, source);
    } else if (e.key == "chaotic-map") {
        const auto kind = parse_chaotic_map(e.value);
        if (!kind)
            throw ConfigError(source, e.line, "unknown chaotic map '" + e.value + "' (logistic, tent, sine)");
        cfg.chaotic_map = *kind;
    } else if (e.key == "lambda") {
        cfg.lambda_threshold = parse_number<double>(e, source);
        if (!(cfg.lambda_threshold >= 0.0 && cfg.lambda_threshold <= 1.0))
            throw ConfigError(source, e.line, "lambda must lie in [0, 1]");
    } else if (e.key == "slope") {
        const double a = parse_number<double>(e, source);
        if (!(a > 0.0))
            throw ConfigError(source, e.line, "slope must be positive");
        // Placeholder kind; make_variant picks the kind from the variant name.
        cfg.spiral = Spiral(cfg.spiral ? cfg.spiral->kind() : SpiralKind::HSS1, a);
    } else if (e.key == "f-schedule") {
        if (e.value == "linear")
            cfg.f_schedule.shape = ControlSchedule::Shape::Linear;
        else if (e.value == "nonlinear")
            cfg.f_schedule.shape = ControlSchedule::Shape::Nonlinear;
        else
            throw ConfigError(source, e.line, "f-schedule must be 'linear' or 'nonlinear'");
    } else if (e.key == "f-exponent") {
        cfg.f_schedule.exponent = parse_number<double>(e, source);
        if (!(cfg.f_schedule.exponent > 0.0))
            throw ConfigError(source, e.line, "f-exponent must be positive");
    } else if (e.key == "theta-max") {
        cfg.modulus.theta_max = parse_number<double>(e, source);
    } else if (e.key == "theta-min") {
        cfg.modulus.theta_min = parse_number<double>(e, source);
    } else if (e.key == "modulus-gain") {
        cfg.modulus.gain = parse_number<double>(e, source);
    } else if (e.key == "modulus-max") {
        cfg.modulus.modulus_max = parse_number<double>(e, source);
    } else {
        throw ConfigError(source, e.line, "unknown key '" + e.key + "'");
    }
}

struct ExperimentConfig
{
    std::vector<std::string> algorithms{"choa", "seb-hss1", "random-search"};
    std::vector<std::string> problems{"standard-suite"};
    std::size_t runs = 30;
    std::uint64_t master_seed = 0;
    std::filesystem::path output_dir = "results";
    std::size_t workers = 1;
    /// Empty: the first algorithm.
    std::string reference;
    std::size_t dimension = 30;
    std::size_t algorithms_line = 0;

    /// [choa] section.
    std::vector<ConfigEntry> choa_defaults;
    /// [variant.<name>] sections.
    std::map<std::string, std::vector<ConfigEntry>> variant_overrides;
    /// Command-line ChOA settings; applied after everything else.
    std::vector<ConfigEntry> choa_flags;
    std::string source = "<config>";

    /// Applies one [experiment]-style key.
    void apply_experiment_entry(const ConfigEntry& e)
    {
        using detail::parse_number;
        if (e.key == "algorithms") {
            algorithms = detail::split_list(e.value);
            algorithms_line = e.line;
            if (algorithms.empty())
                throw ConfigError(source, e.line, "algorithms list is empty");
        } else if (e.key == "problems") {
            problems = detail::split_list(e.value);
            if (problems.empty())
                throw ConfigError(source, e.line, "problems list is empty");
        } else if (e.key == "runs") {
            runs = parse_number<std::size_t>(e, source);
            if (runs == 0)
                throw ConfigError(source, e.line, "runs must be at least 1");
        } else if (e.key == "seed") {
            master_seed = parse_number<std::uint64_t>(e, source);
        } else if (e.key == "output") {
            output_dir = e.value;
        } else if (e.key == "workers") {
            workers = parse_number<std::size_t>(e, source);
        } else if (e.key == "reference") {
            reference = e.value;
        } else if (e.key == "dimension") {
            dimension = parse_number<std::size_t>(e, source);
            if (dimension < 2)
                throw ConfigError(source, e.line, "dimension must be at least 2");
        } else {
            throw ConfigError(source, e.line, "unknown key '" + e.key + "' in [experiment]");
        }
    }

    /// Resolves every algorithm name into a runnable Algorithm.
    std::vector<Algorithm> build_algorithms() const
    {
        for (const auto& [name, entries] : variant_overrides)
            if (std::find(algorithms.begin(), algorithms.end(), name) == algorithms.end())
                throw ConfigError(source, entries.empty() ? 0 : entries.front().line,
                                  "section [variant." + name + "] names an algorithm that is not listed");
        std::vector<Algorithm> out;
        for (const auto& name : algorithms) {
            ChoaConfig cfg;
            for (const auto& e : choa_defaults)
                apply_choa_entry(cfg, e, source);
            if (auto it = variant_overrides.find(name); it != variant_overrides.end())
                for (const auto& e : it->second)
                    apply_choa_entry(cfg, e, source);
            for (const auto& e : choa_flags)
                apply_choa_entry(cfg, e, "command line");
            try {
                out.push_back(make_variant(name, cfg));
            } catch (const std::invalid_argument& err) {
                throw ConfigError(source, 0, err.what());
            }
        }
        if (!reference.empty() && std::find(algorithms.begin(), algorithms.end(), reference) == algorithms.end())
            throw ConfigError(source, 0, "reference '" + reference + "' is not among the algorithms");
        return out;
    }
};

inline ExperimentConfig parse_experiment_config(std::istream& in, const std::string& source)
{
    ExperimentConfig cfg;
    cfg.source = source;
    for (const auto& section : parse_config_sections(in, source)) {
        if (section.name.empty()) {
            if (!section.entries.empty())
                throw ConfigError(source, section.entries.front().line, "key outside of any section");
        } else if (section.name == "experiment") {
            for (const auto& e : section.entries)
                cfg.apply_experiment_entry(e);
        } else if (section.name == "choa") {
            for (const auto& e : section.entries) {
                if (std::find(choa_keys.begin(), choa_keys.end(), e.key) == choa_keys.end())
                    throw ConfigError(source, e.line, "unknown key '" + e.key + "' in [choa]");
                cfg.choa_defaults.push_back(e);
            }
        } else if (section.name.starts_with("variant.")) {
            const auto name = section.name.substr(8);
            if (std::find(variant_names.begin(), variant_names.end(), name) == variant_names.end())
                throw ConfigError(source, section.line,
                                  "unknown variant '" + name + "'; valid variants: " + variant_name_list());
            for (const auto& e : section.entries) {
                if (std::find(choa_keys.begin(), choa_keys.end(), e.key) == choa_keys.end())
                    throw ConfigError(source, e.line, "unknown key '" + e.key + "' in [" + section.name + "]");
                cfg.variant_overrides[name].push_back(e);
            }
        } else {
            throw ConfigError(source, section.line, "unknown section [" + section.name + "]");
        }
    }
    // Validate values and names early so errors carry line numbers.
    for (const auto& name : cfg.algorithms)
        if (std::find(variant_names.begin(), variant_names.end(), name) == variant_names.end()) {
            std::string msg = "unknown variant '" + name + "'; valid variants: " + variant_name_list();
            if (name.starts_with("seb-"))
                msg = "unknown spiral '" + name.substr(4) + "' in variant '" + name +
                      "'; valid spirals: " + spiral_kind_names();
            throw ConfigError(source, cfg.algorithms_line, msg);
        }
    ChoaConfig probe;
    for (const auto& e : cfg.choa_defaults)
        apply_choa_entry(probe, e, source);
    return cfg;
}

inline ExperimentConfig load_experiment_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError(path.string(), 0, "cannot open configuration file");
    return parse_experiment_config(in, path.string());
}

} // namespace sebchoa
