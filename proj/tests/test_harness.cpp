#include "seb_choa/seb_choa.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sebchoa;

namespace {

// Cheap deterministic algorithm: the final fitness is a function of the seed.
Algorithm fake(std::string id, double offset, std::size_t iterations = 3)
{
    return {id, [offset, iterations](const Problem& p, std::uint64_t seed) {
                RngStream rng(seed);
                RunRecord r;
                double best = offset + rng.next_uniform();
                for (std::size_t t = 0; t < iterations; ++t) {
                    best = std::min(best, offset + rng.next_uniform());
                    r.trace.push_back(best);
                }
                r.best_fitness = best;
                r.best_position.assign(p.dimension, 0.0);
                r.evaluations_used = iterations;
                return r;
            }};
}

RunRecord constant_record(std::string alg, std::string prob, std::uint64_t seed, double value)
{
    RunRecord r;
    r.algorithm = std::move(alg);
    r.problem = std::move(prob);
    r.seed = seed;
    r.trace = {value};
    r.best_fitness = value;
    return r;
}

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        out.push_back(line);
    return out;
}

std::vector<std::string> fields(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream in(line);
    for (std::string f; std::getline(in, f, ',');)
        out.push_back(f);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

std::string traces_text(std::span<const RunRecord> records)
{
    std::ostringstream out;
    write_traces_csv(records, out);
    return out.str();
}

std::string report_text(const ComparisonReport& rep)
{
    std::ostringstream out;
    write_report_csv(rep, out);
    return out.str();
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

} // namespace

TEST(RunExperiment, Cardinality)
{
    const auto suite = standard_suite(5);
    const std::vector<Problem> problems{suite[0], suite[1], suite[2]};
    const std::vector<Algorithm> algs{fake("a", 0), fake("b", 1)};
    ExperimentOptions opt;
    opt.runs = 30;
    const auto res = run_experiment(algs, problems, opt);
    EXPECT_EQ(res.records.size(), 180u);
    EXPECT_TRUE(res.failures.empty());
}

TEST(RunExperiment, DeterministicAcrossRepeatsAndWorkers)
{
    const auto suite = standard_suite(4);
    const std::vector<Problem> problems{suite[0], suite[6], suite[8]};
    ChoaConfig cfg;
    cfg.population_size = 8;
    cfg.max_iterations = 15;
    const std::vector<Algorithm> algs{make_variant("choa", cfg), make_variant("seb-hss1", cfg),
                                      make_variant("random-search", cfg)};
    ExperimentOptions opt;
    opt.runs = 4;
    opt.master_seed = 42;
    const auto a = run_experiment(algs, problems, opt);
    opt.workers = 4;
    const auto b = run_experiment(algs, problems, opt);
    EXPECT_EQ(traces_text(a.records), traces_text(b.records));
    ASSERT_EQ(a.records.size(), b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        EXPECT_EQ(a.records[i].best_position, b.records[i].best_position);
        EXPECT_EQ(a.records[i].seed, b.records[i].seed);
    }
    opt.master_seed = 43;
    EXPECT_NE(traces_text(run_experiment(algs, problems, opt).records), traces_text(a.records));
}

TEST(RunExperiment, AddingAnAlgorithmKeepsExistingCells)
{
    const auto suite = standard_suite(3);
    const std::vector<Problem> problems{suite[0]};
    ExperimentOptions opt;
    opt.runs = 5;
    opt.master_seed = 9;
    const std::vector<Algorithm> one{fake("a", 0)};
    const std::vector<Algorithm> two{fake("z", 5), fake("a", 0)};
    const auto r1 = run_experiment(one, problems, opt);
    const auto r2 = run_experiment(two, problems, opt);
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_EQ(r1.records[i].seed, r2.records[5 + i].seed);
        EXPECT_EQ(r1.records[i].trace, r2.records[5 + i].trace);
    }
}

TEST(RunExperiment, FailingCellsAreReportedWithoutAbortingOthers)
{
    const auto suite = standard_suite(3);
    const std::vector<Problem> problems{suite[0], suite[1]};
    Algorithm flaky{"flaky", [](const Problem& p, std::uint64_t seed) -> RunRecord {
                        if (p.name == "schwefel-2.22")
                            throw std::runtime_error("boom " + std::to_string(seed % 2));
                        RunRecord r;
                        r.trace = {1.0};
                        r.best_fitness = 1.0;
                        return r;
                    }};
    const std::vector<Algorithm> algs{flaky};
    ExperimentOptions opt;
    opt.runs = 3;
    const auto res = run_experiment(algs, problems, opt);
    EXPECT_EQ(res.records.size(), 3u);
    ASSERT_EQ(res.failures.size(), 3u);
    EXPECT_EQ(res.failures[0].problem, "schwefel-2.22");
    EXPECT_NE(res.failures[0].message.find("boom"), std::string::npos);
}

TEST(RunExperiment, RejectsZeroRuns)
{
    const std::vector<Algorithm> algs{fake("a", 0)};
    const auto suite = standard_suite(2);
    ExperimentOptions opt;
    opt.runs = 0;
    EXPECT_THROW(run_experiment(algs, std::span<const Problem>(suite.data(), 1), opt), std::invalid_argument);
}

TEST(Aggregate, SingleRunReportsZeroStd)
{
    const std::vector<RunRecord> recs{constant_record("a", "p", 1, 4.0)};
    const auto rep = aggregate(recs, {"a"}, {"p"});
    ASSERT_EQ(rep.cells.size(), 1u);
    EXPECT_EQ(rep.cells[0].summary.std, 0.0);
    EXPECT_FALSE(rep.cells[0].summary.std_defined);
}

TEST(Aggregate, SingleAlgorithmRanksFirst)
{
    std::vector<RunRecord> recs;
    for (std::string p : {"p1", "p2", "p3"})
        for (std::uint64_t s = 0; s < 3; ++s)
            recs.push_back(constant_record("only", p, s, static_cast<double>(s)));
    const auto rep = aggregate(recs, {"only"}, {"p1", "p2", "p3"});
    for (const auto& c : rep.cells)
        EXPECT_EQ(c.rank, 1.0);
    EXPECT_EQ(rep.average_rank.at("only"), 1.0);
}

TEST(Aggregate, EqualMeansShareRank)
{
    std::vector<RunRecord> recs{constant_record("a", "p", 0, 1.0), constant_record("a", "p", 1, 3.0),
                                constant_record("b", "p", 0, 2.0), constant_record("b", "p", 1, 2.0)};
    const auto rep = aggregate(recs, {"a", "b"}, {"p"});
    EXPECT_EQ(rep.find("a", "p")->rank, 1.5);
    EXPECT_EQ(rep.find("b", "p")->rank, 1.5);
}

TEST(Aggregate, TwoByTwoConstantGrid)
{
    std::vector<RunRecord> recs;
    const std::map<std::pair<std::string, std::string>, std::vector<double>> grid{
        {{"a", "p"}, {1, 2, 3}}, {{"a", "q"}, {10, 10, 10}}, {{"b", "p"}, {4, 4, 7}}, {{"b", "q"}, {0, 2, 4}}};
    for (const auto& [key, values] : grid)
        for (std::size_t i = 0; i < values.size(); ++i)
            recs.push_back(constant_record(key.first, key.second, i, values[i]));
    const auto rep = aggregate(recs, {"a", "b"}, {"p", "q"});
    EXPECT_DOUBLE_EQ(rep.find("a", "p")->summary.mean, 2.0);
    EXPECT_DOUBLE_EQ(rep.find("a", "p")->summary.std, 1.0);
    EXPECT_DOUBLE_EQ(rep.find("a", "q")->summary.std, 0.0);
    EXPECT_DOUBLE_EQ(rep.find("b", "p")->summary.mean, 5.0);
    EXPECT_DOUBLE_EQ(rep.find("b", "p")->summary.std, std::sqrt(3.0));
    EXPECT_DOUBLE_EQ(rep.find("b", "q")->summary.mean, 2.0);
    EXPECT_DOUBLE_EQ(rep.find("b", "q")->summary.std, 2.0);
    EXPECT_EQ(rep.find("a", "p")->rank, 1.0);
    EXPECT_EQ(rep.find("b", "q")->rank, 1.0);
    EXPECT_EQ(rep.average_rank.at("a"), 1.5);
    EXPECT_EQ(rep.average_rank.at("b"), 1.5);
    EXPECT_EQ(rep.reference, "a");
    EXPECT_FALSE(rep.find("a", "p")->versus_reference);
    EXPECT_TRUE(rep.find("b", "p")->versus_reference);
}

TEST(Aggregate, RankSumsPerProblem)
{
    RngStream rng(3);
    std::vector<RunRecord> recs;
    const std::vector<std::string> algs{"a", "b", "c", "d", "e"};
    for (const auto& alg : algs)
        for (int p = 0; p < 4; ++p)
            for (std::uint64_t s = 0; s < 5; ++s)
                recs.push_back(constant_record(alg, "p" + std::to_string(p), s, std::floor(rng.uniform(0, 3))));
    const auto rep = aggregate(recs, algs, {"p0", "p1", "p2", "p3"});
    for (int p = 0; p < 4; ++p) {
        double sum = 0;
        for (const auto& alg : algs)
            sum += rep.find(alg, "p" + std::to_string(p))->rank;
        EXPECT_DOUBLE_EQ(sum, 15.0);
    }
}

TEST(Aggregate, MarkersFollowDirection)
{
    std::vector<RunRecord> recs;
    for (std::uint64_t s = 0; s < 10; ++s) {
        recs.push_back(constant_record("ref", "p", s, 100.0 + s));
        recs.push_back(constant_record("good", "p", s, 1.0 + s));
        recs.push_back(constant_record("bad", "p", s, 1000.0 + s));
        recs.push_back(constant_record("same", "p", s, 100.0 + s));
    }
    const auto rep = aggregate(recs, {"ref", "good", "bad", "same"}, {"p"}, "ref");
    EXPECT_EQ(rep.find("good", "p")->marker, "+");
    EXPECT_EQ(rep.find("bad", "p")->marker, "-");
    EXPECT_EQ(rep.find("same", "p")->marker, "≈");
    EXPECT_EQ(rep.find("ref", "p")->marker, "");
    EXPECT_THROW(aggregate(recs, {"ref"}, {"p"}, "other"), std::invalid_argument);
}

TEST(Aggregate, MissingCellsFlaggedAndExcluded)
{
    std::vector<RunRecord> recs{constant_record("a", "p", 0, 1.0), constant_record("b", "p", 0, 2.0),
                                constant_record("a", "q", 0, 1.0)};
    const auto rep = aggregate(recs, {"a", "b"}, {"p", "q"});
    ASSERT_EQ(rep.missing.size(), 1u);
    EXPECT_EQ(rep.missing[0], (std::pair<std::string, std::string>{"b", "q"}));
    EXPECT_EQ(rep.find("a", "q")->rank, 1.0);
    EXPECT_EQ(rep.average_rank.at("b"), 2.0);
}

TEST(Aggregate, ConstrainedCellsCountFeasibleRuns)
{
    std::vector<RunRecord> recs;
    for (std::uint64_t s = 0; s < 4; ++s) {
        auto r = constant_record("a", "p", s, 1.0);
        r.violation = s == 0 ? 0.5 : 0.0;
        recs.push_back(r);
    }
    const auto rep = aggregate(recs, {"a"}, {"p"});
    ASSERT_TRUE(rep.cells[0].feasible_runs);
    EXPECT_EQ(*rep.cells[0].feasible_runs, 3u);
}

TEST(TracesCsv, OneRecordThreeIterations)
{
    auto r = constant_record("seb-hss1", "sphere", 7, 0.0);
    r.trace = {3.0, 2.0, 1.0};
    const auto rows = lines(traces_text(std::vector<RunRecord>{r}));
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0], "algorithm,problem,seed,iteration,best_fitness");
    EXPECT_EQ(rows[1], "seb-hss1,sphere,7,0,3");
    EXPECT_EQ(rows[3], "seb-hss1,sphere,7,2,1");
}

TEST(TracesCsv, RowOrderIsSorted)
{
    std::vector<RunRecord> recs{constant_record("b", "p", 1, 1), constant_record("a", "q", 2, 1),
                                constant_record("a", "p", 9, 1), constant_record("a", "p", 3, 1)};
    const auto rows = lines(traces_text(recs));
    EXPECT_EQ(rows[1], "a,p,3,0,1");
    EXPECT_EQ(rows[2], "a,p,9,0,1");
    EXPECT_EQ(rows[3], "a,q,2,0,1");
    EXPECT_EQ(rows[4], "b,p,1,0,1");
}

TEST(CsvExport, ReExportIsByteIdentical)
{
    const auto dir = std::filesystem::temp_directory_path() / "seb_choa_test_export";
    std::filesystem::remove_all(dir);
    std::vector<RunRecord> recs;
    RngStream rng(4);
    for (std::uint64_t s = 0; s < 6; ++s) {
        auto r = constant_record(s % 2 ? "a" : "b", "p", s, rng.next_uniform() / 3);
        r.trace = {1.0 / 3.0, r.best_fitness};
        recs.push_back(r);
    }
    const auto rep = aggregate(recs, {"a", "b"}, {"p"});
    export_traces_csv(recs, dir / "nested" / "traces.csv");
    export_report_csv(rep, dir / "nested" / "report.csv");
    const auto t1 = slurp(dir / "nested" / "traces.csv");
    const auto r1 = slurp(dir / "nested" / "report.csv");
    export_traces_csv(recs, dir / "nested" / "traces.csv");
    export_report_csv(rep, dir / "nested" / "report.csv");
    EXPECT_EQ(t1, slurp(dir / "nested" / "traces.csv"));
    EXPECT_EQ(r1, slurp(dir / "nested" / "report.csv"));
    EXPECT_FALSE(t1.empty());
    std::filesystem::remove_all(dir);
}

TEST(CsvExport, ReportRoundTripsAtFullPrecision)
{
    std::vector<RunRecord> recs;
    RngStream rng(11);
    for (std::uint64_t s = 0; s < 7; ++s) {
        recs.push_back(constant_record("a", "p", s, rng.uniform(0, 1) * 1e-7));
        recs.push_back(constant_record("b", "p", s, rng.uniform(-3, 3) * 1e5));
    }
    const auto rep = aggregate(recs, {"a", "b"}, {"p"});
    const auto rows = lines(report_text(rep));
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0], report_csv_header);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto f = fields(rows[i]);
        ASSERT_EQ(f.size(), 14u) << rows[i];
        const auto* cell = rep.find(f[0], f[1]);
        ASSERT_NE(cell, nullptr);
        EXPECT_EQ(std::stoul(f[2]), cell->summary.count);
        EXPECT_EQ(std::strtod(f[3].c_str(), nullptr), cell->summary.mean);
        EXPECT_EQ(std::strtod(f[4].c_str(), nullptr), cell->summary.std);
        EXPECT_EQ(std::strtod(f[5].c_str(), nullptr), cell->summary.median);
        EXPECT_EQ(std::strtod(f[6].c_str(), nullptr), cell->summary.best);
        EXPECT_EQ(std::strtod(f[7].c_str(), nullptr), cell->summary.worst);
        if (cell->versus_reference)
            EXPECT_EQ(std::strtod(f[8].c_str(), nullptr), cell->versus_reference->p_value);
        EXPECT_EQ(std::strtod(f[11].c_str(), nullptr), cell->rank);
    }
}

TEST(CsvExport, FormatNumberRoundTrips)
{
    RngStream rng(12);
    for (int i = 0; i < 10000; ++i) {
        const double v = std::ldexp(rng.uniform(-1, 1), static_cast<int>(rng.next_u64() % 200) - 100);
        ASSERT_EQ(std::strtod(format_number(v).c_str(), nullptr), v);
    }
}

TEST(CsvExport, UnwritablePathNamesThePath)
{
    const auto blocker = std::filesystem::temp_directory_path() / "seb_choa_blocker_file";
    { std::ofstream(blocker) << "x"; }
    try {
        export_traces_csv({}, blocker / "traces.csv");
        FAIL() << "expected an error";
    } catch (const std::exception& e) {
        EXPECT_NE(std::string(e.what()).find("seb_choa_blocker_file"), std::string::npos) << e.what();
    }
    std::filesystem::remove(blocker);
}
