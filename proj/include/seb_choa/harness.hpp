#pragma once

#include "seb_choa/problem.hpp"
#include "seb_choa/rng.hpp"
#include "seb_choa/run_record.hpp"
#include "seb_choa/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <charconv>
#include <cstring>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace sebchoa {

/// A named optimizer: given a problem and a seed, produce one run.
struct Algorithm
{
    std::string id;
    std::function<RunRecord(const Problem&, std::uint64_t seed)> run;
};

/// Seed of one (algorithm, problem, run) cell. Depends only on its own
/// coordinates, so adding algorithms or problems never changes existing cells.
inline std::uint64_t cell_seed(std::uint64_t master, std::string_view algorithm, std::string_view problem,
                               std::size_t run_index)
{
    const std::uint64_t a = derive_seed(master, hash_name(algorithm));
    const std::uint64_t p = derive_seed(a, hash_name(problem));
    return derive_seed(p, run_index);
}

struct ExperimentOptions
{
    std::size_t runs = 30;
    std::uint64_t master_seed = 0;
    std::size_t workers = 1;
};

struct CellFailure
{
    std::string algorithm;
    std::string problem;
    std::size_t run_index = 0;
    std::uint64_t seed = 0;
    std::string message;
};

struct ExperimentResult
{
    /// Successful runs, ordered by algorithm, problem, run index as given.
    std::vector<RunRecord> records;
    std::vector<CellFailure> failures;
};

/// Runs every (algorithm, problem, run index) cell. Cells may execute on
/// several workers; results do not depend on scheduling. A throwing cell is
/// reported in `failures` and does not stop the others.
inline ExperimentResult run_experiment(std::span<const Algorithm> algorithms, std::span<const Problem> problems,
                                       const ExperimentOptions& options)
{
    if (options.runs == 0)
        throw std::invalid_argument("an experiment needs at least one run per cell");
    for (const auto& p : problems)
        p.validate();

    struct Cell
    {
        std::size_t alg, prob, run;
    };
    std::vector<Cell> cells;
    for (std::size_t a = 0; a < algorithms.size(); ++a)
        for (std::size_t p = 0; p < problems.size(); ++p)
            for (std::size_t r = 0; r < options.runs; ++r)
                cells.push_back({a, p, r});

    std::vector<std::optional<RunRecord>> done(cells.size());
    std::vector<std::optional<CellFailure>> failed(cells.size());
    std::atomic<std::size_t> cursor{0};

    auto worker = [&] {
        for (std::size_t i = cursor++; i < cells.size(); i = cursor++) {
            const auto& c = cells[i];
            const auto& alg = algorithms[c.alg];
            const auto& prob = problems[c.prob];
            const std::uint64_t seed = cell_seed(options.master_seed, alg.id, prob.name, c.run);
            try {
                RunRecord rec = alg.run(prob, seed);
                rec.algorithm = alg.id;
                rec.problem = prob.name;
                rec.seed = seed;
                done[i] = std::move(rec);
            } catch (const std::exception& e) {
                failed[i] = CellFailure{alg.id, prob.name, c.run, seed, e.what()};
            }
        }
    };

    const std::size_t workers = std::clamp<std::size_t>(options.workers, 1, std::max<std::size_t>(1, cells.size()));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(worker);
    }

    ExperimentResult result;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (done[i])
            result.records.push_back(std::move(*done[i]));
        else if (failed[i])
            result.failures.push_back(std::move(*failed[i]));
    }
    return result;
}

/// Statistics of one (algorithm, problem) cell.
struct CellStats
{
    std::string algorithm;
    std::string problem;
    Summary summary;
    std::vector<double> finals;
    /// Rank-sum test against the reference; absent for the reference itself.
    std::optional<RankSumResult> versus_reference;
    /// '+' significantly better than the reference, '-' worse, "≈" neither.
    std::string marker;
    double rank = 0.0;
    std::optional<std::size_t> feasible_runs;
};

struct ComparisonReport
{
    std::vector<std::string> algorithms;
    std::vector<std::string> problems;
    std::string reference;
    std::vector<CellStats> cells;
    /// Mean of the per-problem ranks, over the problems the algorithm covers.
    std::map<std::string, double> average_rank;
    /// (algorithm, problem) pairs with no successful runs; excluded from ranking.
    std::vector<std::pair<std::string, std::string>> missing;

    const CellStats* find(std::string_view algorithm, std::string_view problem) const
    {
        for (const auto& c : cells)
            if (c.algorithm == algorithm && c.problem == problem)
                return &c;
        return nullptr;
    }
};

/// Per-cell statistics, rank-sum tests against `reference` and per-problem
/// ranks by mean final fitness (ties share the mean rank). The algorithm and
/// problem lists fix the grid; an empty reference means the first algorithm.
inline ComparisonReport aggregate(std::span<const RunRecord> records, std::vector<std::string> algorithms,
                                  std::vector<std::string> problems, std::string reference = {})
{
    ComparisonReport rep;
    rep.algorithms = std::move(algorithms);
    rep.problems = std::move(problems);
    rep.reference = reference.empty() && !rep.algorithms.empty() ? rep.algorithms.front() : std::move(reference);
    if (std::find(rep.algorithms.begin(), rep.algorithms.end(), rep.reference) == rep.algorithms.end())
        throw std::invalid_argument("reference algorithm '" + rep.reference + "' is not part of the comparison");

    std::map<std::pair<std::string, std::string>, std::vector<const RunRecord*>> grouped;
    for (const auto& r : records)
        grouped[{r.algorithm, r.problem}].push_back(&r);

    for (const auto& prob : rep.problems) {
        std::vector<std::size_t> present;
        for (const auto& alg : rep.algorithms) {
            auto it = grouped.find({alg, prob});
            if (it == grouped.end() || it->second.empty()) {
                rep.missing.emplace_back(alg, prob);
                continue;
            }
            CellStats cell;
            cell.algorithm = alg;
            cell.problem = prob;
            std::size_t feasible = 0;
            bool constrained = false;
            for (const auto* r : it->second) {
                cell.finals.push_back(r->best_fitness);
                constrained = constrained || r->violation.has_value();
                feasible += r->feasible() ? 1 : 0;
            }
            if (constrained)
                cell.feasible_runs = feasible;
            cell.summary = summarize(cell.finals);
            present.push_back(rep.cells.size());
            rep.cells.push_back(std::move(cell));
        }

        const CellStats* ref = nullptr;
        for (auto i : present)
            if (rep.cells[i].algorithm == rep.reference)
                ref = &rep.cells[i];
        for (auto i : present) {
            auto& cell = rep.cells[i];
            if (!ref || &cell == ref) {
                cell.marker = "";
                continue;
            }
            const auto test = wilcoxon_rank_sum(cell.finals, ref->finals);
            cell.versus_reference = test;
            const double null_mean = static_cast<double>(cell.finals.size() * ref->finals.size()) / 2.0;
            cell.marker = !test.significant ? "≈" : (test.statistic < null_mean ? "+" : "-");
        }

        std::vector<double> means;
        for (auto i : present)
            means.push_back(rep.cells[i].summary.mean);
        const auto ranks = mid_ranks(means);
        for (std::size_t k = 0; k < present.size(); ++k)
            rep.cells[present[k]].rank = ranks[k];
    }

    for (const auto& alg : rep.algorithms) {
        double sum = 0.0;
        std::size_t n = 0;
        for (const auto& c : rep.cells)
            if (c.algorithm == alg) {
                sum += c.rank;
                ++n;
            }
        if (n > 0)
            rep.average_rank[alg] = sum / static_cast<double>(n);
    }
    return rep;
}

/// Shortest decimal form that parses back to the same double.
inline std::string format_number(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline void write_traces_csv(std::span<const RunRecord> records, std::ostream& out)
{
    std::vector<const RunRecord*> order;
    for (const auto& r : records)
        order.push_back(&r);
    std::stable_sort(order.begin(), order.end(), [](const RunRecord* a, const RunRecord* b) {
        return std::tie(a->algorithm, a->problem, a->seed) < std::tie(b->algorithm, b->problem, b->seed);
    });
    out << "algorithm,problem,seed,iteration,best_fitness\n";
    for (const auto* r : order)
        for (std::size_t t = 0; t < r->trace.size(); ++t)
            out << r->algorithm << ',' << r->problem << ',' << r->seed << ',' << t << ','
                << format_number(r->trace[t]) << '\n';
}

inline constexpr std::string_view report_csv_header =
    "algorithm,problem,runs,mean,std,median,best,worst,p_value,significant,vs_reference,rank,average_rank,"
    "feasible_runs";

inline void write_report_csv(const ComparisonReport& report, std::ostream& out)
{
    std::vector<const CellStats*> order;
    for (const auto& c : report.cells)
        order.push_back(&c);
    std::stable_sort(order.begin(), order.end(), [](const CellStats* a, const CellStats* b) {
        return std::tie(a->algorithm, a->problem) < std::tie(b->algorithm, b->problem);
    });
    out << report_csv_header << '\n';
    for (const auto* c : order) {
        const auto& s = c->summary;
        out << c->algorithm << ',' << c->problem << ',' << s.count << ',' << format_number(s.mean) << ','
            << format_number(s.std) << ',' << format_number(s.median) << ',' << format_number(s.best) << ','
            << format_number(s.worst) << ',';
        if (c->versus_reference)
            out << format_number(c->versus_reference->p_value) << ','
                << (c->versus_reference->significant ? "yes" : "no");
        else
            out << ',';
        out << ',' << c->marker << ',' << format_number(c->rank) << ','
            << format_number(report.average_rank.at(c->algorithm)) << ',';
        if (c->feasible_runs)
            out << *c->feasible_runs;
        out << '\n';
    }
}

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing: " + std::strerror(errno));
    body(out);
    out.flush();
    if (!out)
        throw std::runtime_error("failed writing '" + path.string() + "'");
}

} // namespace detail

inline void export_traces_csv(std::span<const RunRecord> records, const std::filesystem::path& path)
{
    detail::write_file(path, [&](std::ostream& out) { write_traces_csv(records, out); });
}

inline void export_report_csv(const ComparisonReport& report, const std::filesystem::path& path)
{
    detail::write_file(path, [&](std::ostream& out) { write_report_csv(report, out); });
}

} // namespace sebchoa
