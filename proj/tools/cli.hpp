#pragma once

// Command-line front end: list-problems, run, spiral-table.
//
// Every failure prints one line "error[E_<CODE>]: <message>" on stderr.
// Exit codes: 0 success, 1 usage/configuration error, 2 runtime failure.

#include "seb_choa/seb_choa.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace sebchoa::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_runtime = 2;

/// Environment variable naming the default output directory of `run`.
inline constexpr const char* output_dir_env = "SEB_CHOA_OUTPUT_DIR";

class CliError : public std::runtime_error
{
public:
    CliError(std::string code, const std::string& message, int exit_code = exit_usage)
        : std::runtime_error(message), code_(std::move(code)), exit_code_(exit_code)
    {
    }

    const std::string& code() const noexcept { return code_; }
    int exit_code() const noexcept { return exit_code_; }

private:
    std::string code_;
    int exit_code_;
};

inline void print_error(std::ostream& err, const std::string& code, std::string message)
{
    for (auto& ch : message)
        if (ch == '\n' || ch == '\r')
            ch = ' ';
    err << "error[" << code << "]: " << message << '\n';
}

struct ListOptions
{
    std::string category;
    /// Substring that the name or id must contain.
    std::string match;
    std::size_t dimension = 30;
};

struct RunOptions
{
    std::string config_path;
    /// Flag values keyed like the config file; only set flags are present.
    std::vector<ConfigEntry> experiment_flags;
    std::vector<ConfigEntry> choa_flags;
};

struct SpiralTableOptions
{
    std::string kind;
    double slope = 1.0;
    std::vector<double> thetas;
    std::optional<double> theta_min;
    std::optional<double> theta_max;
    std::size_t steps = 100;
    std::uint64_t seed = 0;
};

namespace detail {

inline std::string describe_bounds(const Problem& p)
{
    const auto& lo = p.bounds.lower;
    const auto& hi = p.bounds.upper;
    const bool uniform = std::all_of(lo.begin(), lo.end(), [&](double v) { return v == lo.front(); }) &&
                         std::all_of(hi.begin(), hi.end(), [&](double v) { return v == hi.front(); });
    std::ostringstream s;
    if (uniform) {
        s << '[' << lo.front() << ", " << hi.front() << ']';
        if (p.dimension > 1)
            s << '^' << p.dimension;
        return s.str();
    }
    for (std::size_t i = 0; i < p.dimension; ++i)
        s << (i ? " x " : "") << '[' << lo[i] << ", " << hi[i] << ']';
    return s.str();
}

inline std::string scientific(double v, int precision = 4)
{
    std::ostringstream s;
    s << std::scientific << std::setprecision(precision) << v;
    return s.str();
}

} // namespace detail

inline int cmd_list_problems(const ListOptions& opt, std::ostream& out)
{
    std::optional<Category> filter;
    if (!opt.category.empty()) {
        filter = parse_category(opt.category);
        if (!filter)
            throw CliError("E_USAGE", "unknown category '" + opt.category +
                                          "' (unimodal, multimodal, fixed-dimension, constrained)");
    }
    if (opt.dimension < 2)
        throw CliError("E_USAGE", "dimension must be at least 2");
    const Registry reg = default_registry(opt.dimension);
    std::vector<std::array<std::string, 6>> rows{{"id", "name", "dim", "bounds", "category", "known_optimum"}};
    for (const auto& p : reg.problems()) {
        if (filter && p->category != *filter)
            continue;
        if (!opt.match.empty() && p->name.find(opt.match) == std::string::npos &&
            p->alias.find(opt.match) == std::string::npos)
            continue;
        rows.push_back({p->alias.empty() ? std::string("-") : p->alias, p->name, std::to_string(p->dimension),
                        detail::describe_bounds(*p), std::string(to_string(p->category)),
                        p->known_optimum ? format_number(*p->known_optimum) : std::string("-")});
    }
    if (rows.size() == 1) {
        out << "no problems matched\n";
        return exit_ok;
    }
    std::array<std::size_t, 6> width{};
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size(); ++c)
            width[c] = std::max(width[c], r[c].size());
    for (const auto& r : rows) {
        for (std::size_t c = 0; c + 1 < r.size(); ++c)
            out << std::left << std::setw(static_cast<int>(width[c] + 2)) << r[c];
        out << r.back() << '\n';
    }
    return exit_ok;
}

/// Merges the config file (if any), the output-directory environment variable
/// and the command-line flags, flags last.
inline ExperimentConfig resolve_run_config(const RunOptions& opt)
{
    ExperimentConfig cfg;
    bool output_from_file = false;
    if (!opt.config_path.empty()) {
        cfg = load_experiment_config(opt.config_path);
        std::ifstream in(opt.config_path);
        for (const auto& section : parse_config_sections(in, opt.config_path))
            if (section.name == "experiment")
                for (const auto& e : section.entries)
                    output_from_file = output_from_file || e.key == "output";
    }
    if (!output_from_file)
        if (const char* env = std::getenv(output_dir_env); env && *env)
            cfg.output_dir = env;
    cfg.source = opt.config_path.empty() ? "command line" : opt.config_path;
    for (const auto& e : opt.experiment_flags)
        cfg.apply_experiment_entry(e);
    for (const auto& e : opt.choa_flags)
        cfg.choa_flags.push_back(e);
    return cfg;
}

inline void print_summary(const ComparisonReport& rep, std::ostream& out)
{
    constexpr int name_width = 18;
    constexpr int cell_width = 28;
    out << std::left << std::setw(name_width) << "problem";
    for (const auto& a : rep.algorithms)
        out << std::setw(cell_width) << a;
    out << '\n';
    for (const auto& p : rep.problems) {
        out << std::setw(name_width) << p;
        for (const auto& a : rep.algorithms) {
            const auto* c = rep.find(a, p);
            std::string text = "(failed)";
            if (c) {
                text = detail::scientific(c->summary.mean) + " +- " + detail::scientific(c->summary.std, 1);
                if (!c->marker.empty())
                    text += " " + c->marker;
                if (c->feasible_runs)
                    text += " f" + std::to_string(*c->feasible_runs);
            }
            // Pad by code points so the multibyte marker does not skew columns.
            std::size_t cps = 0;
            for (unsigned char ch : text)
                cps += (ch & 0xC0) != 0x80;
            out << text << std::string(cps < cell_width ? cell_width - cps : 1, ' ');
        }
        out << '\n';
    }
    out << std::setw(name_width) << "average rank";
    for (const auto& a : rep.algorithms) {
        auto it = rep.average_rank.find(a);
        out << std::setw(cell_width) << (it == rep.average_rank.end() ? std::string("-") : format_number(it->second));
    }
    out << "\nmarkers vs " << rep.reference
        << ": + significantly better, - significantly worse, ≈ no significant difference "
           "(two-sided rank-sum, p < 0.05)";
    if (std::any_of(rep.cells.begin(), rep.cells.end(), [](const CellStats& c) { return !c.summary.std_defined; }))
        out << "\nnote: cells with a single run report std = 0";
    out << '\n';
}

inline int cmd_run(const RunOptions& opt, std::ostream& out, std::ostream& err)
{
    ExperimentConfig cfg;
    std::vector<Algorithm> algorithms;
    std::vector<Problem> problems;
    try {
        cfg = resolve_run_config(opt);
        algorithms = cfg.build_algorithms();
        problems = resolve_problems(default_registry(cfg.dimension), cfg.problems);
    } catch (const ConfigError& e) {
        const std::string what = e.what();
        const bool unknown = what.find("unknown variant") != std::string::npos ||
                             what.find("unknown spiral") != std::string::npos;
        throw CliError(unknown ? "E_UNKNOWN_VARIANT" : "E_CONFIG", what);
    } catch (const std::invalid_argument& e) {
        throw CliError("E_UNKNOWN_PROBLEM", e.what());
    }

    ExperimentOptions eo;
    eo.runs = cfg.runs;
    eo.master_seed = cfg.master_seed;
    eo.workers = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
    const auto result = run_experiment(algorithms, problems, eo);

    std::vector<std::string> alg_ids, prob_ids;
    for (const auto& a : algorithms)
        alg_ids.push_back(a.id);
    for (const auto& p : problems)
        prob_ids.push_back(p.name);
    const auto report = aggregate(result.records, alg_ids, prob_ids, cfg.reference);

    const auto traces = cfg.output_dir / "traces.csv";
    const auto summary = cfg.output_dir / "report.csv";
    try {
        export_traces_csv(result.records, traces);
        export_report_csv(report, summary);
    } catch (const std::exception& e) {
        throw CliError("E_IO", e.what(), exit_runtime);
    }

    print_summary(report, out);
    out << "wrote " << traces.string() << " and " << summary.string() << '\n';
    if (!result.failures.empty()) {
        const auto& f = result.failures.front();
        print_error(err, "E_RUN",
                    std::to_string(result.failures.size()) + " cell(s) failed; first: " + f.algorithm + " on " +
                        f.problem + " run " + std::to_string(f.run_index) + ": " + f.message);
        return exit_runtime;
    }
    return exit_ok;
}

inline int cmd_spiral_table(const SpiralTableOptions& opt, std::ostream& out)
{
    const auto kind = parse_spiral_kind(opt.kind);
    if (!kind)
        throw CliError("E_UNKNOWN_VARIANT", "unknown spiral '" + opt.kind + "'; valid spirals: " + spiral_kind_names());
    if (!(opt.slope > 0.0))
        throw CliError("E_USAGE", "slope must be positive");

    std::vector<double> grid = opt.thetas;
    if (grid.empty()) {
        if (!opt.theta_min || !opt.theta_max)
            throw CliError("E_USAGE", "give --theta values or both --theta-min and --theta-max");
        if (opt.steps < 2 || !(*opt.theta_max > *opt.theta_min))
            throw CliError("E_USAGE", "need --theta-max > --theta-min and --steps >= 2");
        for (std::size_t i = 0; i < opt.steps; ++i)
            grid.push_back(*opt.theta_min +
                           (*opt.theta_max - *opt.theta_min) * static_cast<double>(i) / static_cast<double>(opt.steps - 1));
    }

    const Spiral spiral(*kind, opt.slope);
    RngStream rng(opt.seed);
    std::vector<double> radii;
    for (double theta : grid) {
        try {
            radii.push_back(spiral_radius(spiral, theta, rng));
        } catch (const std::domain_error& e) {
            throw CliError("E_DOMAIN", e.what());
        }
    }
    out << "kind,a,theta,radius\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
        out << to_string(*kind) << ',' << format_number(opt.slope) << ',' << format_number(grid[i]) << ','
            << format_number(radii[i]) << '\n';
    return exit_ok;
}

/// Builds the CLI11 application; `action` receives the subcommand to execute after parsing.
class Application
{
public:
    Application() : app_("Chimp optimization with spiral exploitation: benchmarks and experiments", "seb-choa")
    {
        app_.require_subcommand(1);
        app_.set_help_all_flag("--help-all", "Show help for every subcommand");

        auto* list = app_.add_subcommand("list-problems", "List registered benchmark and constrained problems");
        list->add_option("--category", list_.category,
                         "Only show one category: unimodal, multimodal, fixed-dimension, constrained");
        list->add_option("--match", list_.match, "Only show problems whose name or id contains this text");
        list->add_option("--dimension", list_.dimension, "Dimension of the scalable functions F1-F13")
            ->capture_default_str();
        list->callback([this] { action_ = Action::List; });

        auto* run = app_.add_subcommand("run", "Run a replicated experiment and write trace/report CSV files");
        run->add_option("config", run_.config_path, "Experiment configuration file (INI sections)");
        add_flag(run, "--algorithms", "algorithms", true,
                 "Comma-separated variants: " + variant_name_list());
        add_flag(run, "--problems", "problems", true,
                 "Comma-separated problem names/ids, or standard-suite / engineering-suite");
        add_flag(run, "--runs", "runs", true, "Independent runs per (algorithm, problem) cell");
        add_flag(run, "--seed", "seed", true, "Master seed; each cell derives its own seed from it");
        add_flag(run, "--output", "output", true,
                 std::string("Output directory (default: $") + output_dir_env + " or ./results)");
        add_flag(run, "--workers", "workers", true, "Parallel workers; 0 uses every hardware thread");
        add_flag(run, "--reference", "reference", true, "Algorithm the others are tested against");
        add_flag(run, "--dimension", "dimension", true, "Dimension of the scalable functions F1-F13");
        add_flag(run, "--population", "population", false, "Population size");
        add_flag(run, "--iterations", "iterations", false, "Iterations per run");
        add_flag(run, "--chaotic-map", "chaotic-map", false, "Chaotic map for m: logistic, tent, sine");
        add_flag(run, "--lambda", "lambda", false, "Threshold on the branch draw lambda, in [0, 1]");
        add_flag(run, "--slope", "slope", false, "Spiral slope a > 0");
        add_flag(run, "--f-schedule", "f-schedule", false, "Decay of f from 2.5 to 0: linear or nonlinear");
        add_flag(run, "--f-exponent", "f-exponent", false, "Exponent p of the nonlinear decay 2.5(1-(t/T)^p)");
        add_flag(run, "--theta-max", "theta-max", false, "Largest spiral angle of the modulus schedule");
        add_flag(run, "--theta-min", "theta-min", false, "Smallest spiral angle of the modulus schedule");
        add_flag(run, "--modulus-gain", "modulus-gain", false, "Gain applied to the normalized spiral radius");
        add_flag(run, "--modulus-max", "modulus-max", false, "Upper clamp of the spiral modulus");
        run->callback([this] { action_ = Action::Run; });

        auto* table = app_.add_subcommand("spiral-table", "Print spiral radii over an angle grid as CSV");
        table->add_option("--kind", table_.kind, "Spiral law: " + spiral_kind_names())->required();
        table->add_option("--slope", table_.slope, "Slope a > 0")->capture_default_str();
        table->add_option("--theta", table_.thetas, "Explicit angles (comma-separated)")->delimiter(',');
        table->add_option("--theta-min", table_.theta_min, "Grid start when --theta is not given");
        table->add_option("--theta-max", table_.theta_max, "Grid end when --theta is not given");
        table->add_option("--steps", table_.steps, "Grid points between --theta-min and --theta-max")
            ->capture_default_str();
        table->add_option("--seed", table_.seed, "Seed for the random spiral's slope draws")->capture_default_str();
        table->callback([this] { action_ = Action::SpiralTable; });
    }

    CLI::App& app() noexcept { return app_; }

    int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
    {
        try {
            app_.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            if (e.get_exit_code() == 0) {
                // --help / --help-all, on the main app or a subcommand
                app_.exit(e, out, err);
                return exit_ok;
            }
            print_error(err, "E_USAGE", e.what());
            return exit_usage;
        }
        collect_flags();
        try {
            switch (action_) {
            case Action::List: return cmd_list_problems(list_, out);
            case Action::Run: return cmd_run(run_, out, err);
            case Action::SpiralTable: return cmd_spiral_table(table_, out);
            case Action::None: break;
            }
            print_error(err, "E_USAGE", "no subcommand given");
            return exit_usage;
        } catch (const CliError& e) {
            print_error(err, e.code(), e.what());
            return e.exit_code();
        } catch (const std::exception& e) {
            print_error(err, "E_RUNTIME", e.what());
            return exit_runtime;
        }
    }

private:
    enum class Action { None, List, Run, SpiralTable };

    struct FlagSlot
    {
        std::string key;
        bool experiment;
        std::optional<std::string> value;
    };

    void add_flag(CLI::App* sub, const std::string& flag, const std::string& key, bool experiment,
                  const std::string& help)
    {
        slots_.push_back(std::make_unique<FlagSlot>(FlagSlot{key, experiment, std::nullopt}));
        static const std::vector<std::string> integers{"runs", "seed", "workers", "dimension", "population",
                                                       "iterations"};
        static const std::vector<std::string> reals{"lambda",    "slope",     "f-exponent",  "theta-max",
                                                    "theta-min", "modulus-gain", "modulus-max"};
        const auto has = [&](const std::vector<std::string>& v) { return std::find(v.begin(), v.end(), key) != v.end(); };
        sub->add_option(flag, slots_.back()->value, help)
            ->type_name(has(integers) ? "INT" : has(reals) ? "FLOAT" : "TEXT");
    }

    void collect_flags()
    {
        for (const auto& s : slots_) {
            if (!s->value)
                continue;
            ConfigEntry e{s->key, *s->value, 0};
            (s->experiment ? run_.experiment_flags : run_.choa_flags).push_back(std::move(e));
        }
    }

    CLI::App app_;
    Action action_ = Action::None;
    ListOptions list_;
    RunOptions run_;
    SpiralTableOptions table_;
    std::vector<std::unique_ptr<FlagSlot>> slots_;
};

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    Application application;
    return application.run(argc, argv, out, err);
}

} // namespace sebchoa::cli
