// Acceptance checks AC1-AC9. Prints one PASS/FAIL line per criterion and
// exits nonzero when any criterion fails.
#include "seb_choa/seb_choa.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <thread>

using namespace sebchoa;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t master_seed = 7;

struct Outcome
{
    bool pass;
    std::string detail;
};

int failures = 0;

void report(const char* id, const char* title, const std::function<Outcome()>& check)
{
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = check();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += o.pass ? 0 : 1;
    std::printf("%s %s: %s (%s) [%.1fs]\n", id, o.pass ? "PASS" : "FAIL", title, o.detail.c_str(), secs);
    std::fflush(stdout);
}

std::size_t workers() { return std::max(1u, std::thread::hardware_concurrency()); }

// Plain bisection on r^k ln r = target over [1, hi].
double bisection_root(int power, double target)
{
    auto g = [&](double r) { return std::pow(r, power) * std::log(r) - target; };
    double lo = 1.0, hi = 2.0;
    while (g(hi) < 0.0)
        hi *= 2.0;
    for (int i = 0; i < 500 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Residual of the defining law of each spiral kind.
double law_residual(SpiralKind kind, double a, double theta, double r, double u)
{
    switch (kind) {
    case SpiralKind::Archimedean: return std::abs(r - a * theta);
    case SpiralKind::Logarithmic: return std::abs(std::log10(r) - a * theta);
    case SpiralKind::Fermat: return std::abs(r * r - a * a * theta);
    case SpiralKind::Lituus: return std::abs(r * r * theta - a * a);
    case SpiralKind::Equiangular: return std::abs(std::log(r) - a * theta);
    case SpiralKind::Random: return std::abs(r - u * theta);
    case SpiralKind::HSS1: return std::abs(r * std::log(r) - a * theta);
    case SpiralKind::HSS2: return std::abs(r * r * std::log(r) - a * theta);
    }
    return INFINITY;
}

// Exact two-sided rank-sum p by enumerating all subsets of pooled ranks.
double enumerated_p(std::size_t na, std::size_t nb, double u_obs)
{
    const std::size_t n = na + nb;
    std::vector<int> pick(n, 0);
    std::fill(pick.end() - static_cast<std::ptrdiff_t>(na), pick.end(), 1);
    double lo = 0, hi = 0, total = 0;
    do {
        double u = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (pick[i])
                for (std::size_t j = 0; j < n; ++j)
                    u += !pick[j] && i > j;
        total += 1;
        lo += u <= u_obs;
        hi += u >= u_obs;
    } while (std::next_permutation(pick.begin(), pick.end()));
    return std::min(1.0, 2.0 * std::min(lo, hi) / total);
}

std::vector<double> finals(const std::vector<RunRecord>& recs, std::string_view alg, std::string_view prob)
{
    std::vector<double> out;
    for (const auto& r : recs)
        if (r.algorithm == alg && r.problem == prob)
            out.push_back(r.best_fitness);
    return out;
}

double median(std::vector<double> v) { return summarize(v).median; }

std::string fmt(double v, int precision = 4)
{
    std::ostringstream s;
    s.precision(precision);
    s << v;
    return s.str();
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<Algorithm> algorithms(const std::vector<std::string>& names)
{
    std::vector<Algorithm> out;
    for (const auto& n : names)
        out.push_back(make_variant(n));
    return out;
}

Outcome ac1()
{
    const auto start = std::chrono::steady_clock::now();
    RngStream rng(101);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto kind = all_spiral_kinds[rng.next_u64() % all_spiral_kinds.size()];
        const double a = rng.uniform(0.1, 3.0);
        const double theta = rng.uniform(1e-3, 4 * std::numbers::pi);
        const double u = rng.next_uniform();
        const double r = kind == SpiralKind::Random ? random_spiral_radius(theta, u) : spiral_radius(Spiral(kind, a), theta);
        if (!std::isfinite(r) || r < 0)
            return {false, "non-finite or negative radius"};
        worst = std::max(worst, law_residual(kind, a, theta, r, u));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {worst <= 1e-9 && secs < 1.0, "max residual " + fmt(worst) + ", " + fmt(secs * 1e3, 3) + " ms"};
}

Outcome ac2()
{
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double a = 0.1 + 0.5 * i;
        for (int j = 0; j < 10; ++j) {
            const double theta = 1e-3 + j * 1.39;
            for (auto [kind, power] : {std::pair{SpiralKind::HSS1, 1}, {SpiralKind::HSS2, 2}}) {
                const double r = solve_implicit_radius(kind, a, theta);
                worst = std::max(worst, std::abs(r - bisection_root(power, a * theta)));
            }
        }
    }
    return {worst <= 1e-9, "100-point grid per law, max |r - r_bisection| = " + fmt(worst)};
}

Outcome ac3()
{
    if (compute_f(0, 500) != 2.5 || compute_f(500, 500) != 0.0)
        return {false, "compute_f endpoints"};
    const auto reg = default_registry(10);
    const std::vector<std::string> probs{"F1", "F5", "F9", "F10", "F16"};
    std::size_t runs = 0;
    for (const auto& name : probs) {
        const Problem& p = reg.at(name);
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            for (auto spiral : {std::optional<Spiral>{}, std::optional<Spiral>{Spiral(SpiralKind::HSS1)}}) {
                ChoaConfig cfg;
                cfg.population_size = 30;
                cfg.max_iterations = 100;
                cfg.spiral = spiral;
                cfg.seed = derive_seed(master_seed, seed);
                ChoaOptimizer opt(p, cfg);
                double previous = opt.best_fitness();
                while (!opt.finished()) {
                    opt.step();
                    if (opt.best_fitness() > previous)
                        return {false, "trace increased on " + name};
                    previous = opt.best_fitness();
                    for (const auto& x : opt.population().positions)
                        for (std::size_t d = 0; d < x.size(); ++d)
                            if (x[d] < p.bounds.lower[d] || x[d] > p.bounds.upper[d])
                                return {false, "position out of bounds on " + name};
                }
                if (opt.population().evaluations_used != 30 * 101)
                    return {false, "evaluation budget mismatch"};
                ++runs;
            }
        }
    }
    return {true, "f(0)=2.5, f(T)=0; " + std::to_string(runs) + " runs monotone, in bounds, budget N(T+1)"};
}

Outcome ac4()
{
    const auto reg = default_registry(30);
    const std::vector<std::string> names{"seb-hss1", "choa", "random-search"};
    const auto algs = algorithms(names);
    const auto problems = resolve_problems(reg, {"F1", "F2", "F3", "F4", "F5", "F6", "F7"});
    std::vector<std::string> prob_names;
    for (const auto& p : problems)
        prob_names.push_back(p.name);
    const auto res = run_experiment(algs, problems, {30, master_seed, workers()});
    if (!res.failures.empty())
        return {false, "cell failure: " + res.failures.front().message};
    const auto rep = aggregate(res.records, names, prob_names, "random-search");
    int beats = 0;
    for (const auto& p : prob_names)
        beats += rep.find("seb-hss1", p)->marker == "+";
    const double hss1 = rep.average_rank.at("seb-hss1");
    const double choa = rep.average_rank.at("choa");
    const double rs = rep.average_rank.at("random-search");
    const bool pass = hss1 <= choa && hss1 <= rs && beats >= 6;
    return {pass, "avg rank seb-hss1 " + fmt(hss1) + ", choa " + fmt(choa) + ", random-search " + fmt(rs) +
                      "; significantly better than random-search on " + std::to_string(beats) + "/7"};
}

Outcome ac5()
{
    const auto reg = default_registry(30);
    const std::vector<std::string> names{"seb-hss1", "choa"};
    const auto algs = algorithms(names);
    const auto problems = resolve_problems(reg, {"F9", "F10", "F11"});
    const auto res = run_experiment(algs, problems, {30, master_seed, workers()});
    if (!res.failures.empty())
        return {false, "cell failure: " + res.failures.front().message};
    int wins = 0;
    std::string detail;
    for (const auto& p : problems) {
        const double mh = median(finals(res.records, "seb-hss1", p.name));
        const double mc = median(finals(res.records, "choa", p.name));
        wins += mh <= mc;
        detail += p.name + " " + fmt(mh) + " vs " + fmt(mc) + "; ";
    }
    return {wins >= 2, detail + "seb-hss1 median <= choa on " + std::to_string(wins) + "/3"};
}

Outcome ac6()
{
    const auto reg = default_registry(30);
    const std::vector<std::string> names{"seb-hss1", "random-search"};
    const auto algs = algorithms(names);
    const auto problems = resolve_problems(reg, {"engineering-suite"});
    const auto res = run_experiment(algs, problems, {30, master_seed, workers()});
    if (!res.failures.empty())
        return {false, "cell failure: " + res.failures.front().message};
    bool pass = true;
    std::string detail;
    for (const auto& p : problems) {
        std::size_t feasible = 0;
        double best_seb = INFINITY, best_rs = INFINITY;
        for (const auto& r : res.records) {
            if (r.problem != p.name || !r.feasible())
                continue;
            const double f = r.raw_objective.value_or(r.best_fitness);
            if (r.algorithm == "seb-hss1") {
                ++feasible;
                best_seb = std::min(best_seb, f);
            } else {
                best_rs = std::min(best_rs, f);
            }
        }
        pass = pass && feasible >= 28 && best_seb < best_rs;
        detail += p.name + " feasible " + std::to_string(feasible) + "/30 best " + fmt(best_seb, 7) +
                  " vs random-search " + fmt(best_rs, 7) + "; ";
    }
    detail.resize(detail.size() - 2);
    return {pass, detail};
}

Outcome ac7()
{
    std::vector<int> pick{0, 0, 0, 1, 1, 1};
    int checked = 0;
    do {
        std::vector<double> a, b;
        for (int i = 0; i < 6; ++i)
            (pick[i] ? a : b).push_back(static_cast<double>(i));
        const auto res = wilcoxon_rank_sum(a, b);
        if (std::abs(res.p_value - enumerated_p(3, 3, res.statistic)) > 1e-12)
            return {false, "exact p differs from enumeration"};
        ++checked;
    } while (std::next_permutation(pick.begin(), pick.end()));
    const double disjoint = wilcoxon_rank_sum(std::vector<double>{1, 2, 3}, std::vector<double>{10, 11, 12}).p_value;

    RngStream rng(7);
    for (int i = 0; i < 1000; ++i) {
        std::vector<double> a(2 + rng.next_u64() % 25), b(2 + rng.next_u64() % 25);
        for (auto& x : a)
            x = std::round(rng.uniform(-50, 50));
        for (auto& x : b)
            x = std::round(rng.uniform(-50, 50));
        const auto ab = wilcoxon_rank_sum(a, b), ba = wilcoxon_rank_sum(b, a);
        if (ab.p_value != ba.p_value || ab.statistic != static_cast<double>(a.size() * b.size()) - ba.statistic)
            return {false, "swap symmetry violated"};
        std::vector<double> ta, tb;
        for (double x : a)
            ta.push_back(std::cbrt(x) * 3 + 1);
        for (double x : b)
            tb.push_back(std::cbrt(x) * 3 + 1);
        if (wilcoxon_rank_sum(ta, tb).p_value != ab.p_value)
            return {false, "monotone transform changed p"};
    }
    return {std::abs(disjoint - 0.1) < 1e-15,
            std::to_string(checked) + " splits match enumeration, disjoint p = " + fmt(disjoint) +
                "; symmetry and invariance on 1000 pairs"};
}

Outcome ac8()
{
    const auto reg = default_registry(10);
    const std::vector<std::string> names{"choa", "seb-hss1", "seb-random", "random-search"};
    ChoaConfig base;
    base.max_iterations = 100;
    std::vector<Algorithm> algs;
    for (const auto& n : names)
        algs.push_back(make_variant(n, base));
    const auto problems = resolve_problems(reg, {"F1", "F7", "F9", "spring-design"});
    std::vector<std::string> prob_names;
    for (const auto& p : problems)
        prob_names.push_back(p.name);
    const auto dir = fs::temp_directory_path() / "seb_choa_acceptance_ac8";
    fs::remove_all(dir);
    for (std::size_t pass = 0; pass < 2; ++pass) {
        const auto res = run_experiment(algs, problems, {5, master_seed, pass == 0 ? 1 : workers() + 1});
        const auto out = dir / std::to_string(pass);
        export_traces_csv(res.records, out / "traces.csv");
        export_report_csv(aggregate(res.records, names, prob_names), out / "report.csv");
    }
    bool same = true;
    std::size_t bytes = 0;
    for (const char* f : {"traces.csv", "report.csv"}) {
        const auto a = slurp(dir / "0" / f), b = slurp(dir / "1" / f);
        same = same && !a.empty() && a == b;
        bytes += a.size();
    }
    fs::remove_all(dir);
    return {same, "two runs (different worker counts), " + std::to_string(bytes) + " bytes compared"};
}

Outcome ac9()
{
    std::string detail;
    bool pass = true;
    for (auto kind : all_spiral_kinds) {
        const SpiralModulus mod{Spiral(kind)};
        RngStream rng(derive_seed(master_seed, static_cast<std::uint64_t>(kind)));
        double early = 0, late = 0;
        for (int i = 0; i < 10000; ++i) {
            early += mod.sample(0.1, rng).modulus;
            late += mod.sample(0.9, rng).modulus;
        }
        pass = pass && early > late;
        detail += std::string(to_string(kind)) + " " + fmt(early / 1e4, 3) + ">" + fmt(late / 1e4, 3) + " ";
    }
    detail.pop_back();
    return {pass, detail};
}

} // namespace

int main()
{
    report("AC1", "spiral laws hold", ac1);
    report("AC2", "implicit roots match bisection", ac2);
    report("AC3", "ChOA mechanics", ac3);
    report("AC4", "unimodal ranking F1-F7", ac4);
    report("AC5", "multimodal medians F9-F11", ac5);
    report("AC6", "constrained engineering problems", ac6);
    report("AC7", "rank-sum test correctness", ac7);
    report("AC8", "byte-identical CSV outputs", ac8);
    report("AC9", "amplitude schedule decays", ac9);
    std::printf("%d of 9 criteria passed\n", 9 - failures);
    return failures == 0 ? 0 : 1;
}
