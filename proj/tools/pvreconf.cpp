#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pvreconf/array.hpp"
#include "pvreconf/cases.hpp"
#include "pvreconf/csv.hpp"
#include "pvreconf/experiment.hpp"
#include "pvreconf/field.hpp"
#include "pvreconf/fitness.hpp"
#include "pvreconf/optimizers.hpp"
#include "pvreconf/oracle.hpp"
#include "pvreconf/pv_model.hpp"
#include "pvreconf/report.hpp"

namespace fs = std::filesystem;
using namespace pvreconf;

namespace {

struct FieldSource {
    std::string caseName;
    std::string pattern;
    double g0 = 1000.0;

    void add_options(CLI::App* app) {
        auto* c = app->add_option("--case", caseName, "built-in shading case (short-wide, long-narrow, ...; 1-4)");
        auto* p = app->add_option("--pattern", pattern, "CSV grid of irradiance in W/m^2")->check(CLI::ExistingFile);
        c->excludes(p);
        app->add_option("--g0", g0, "reference irradiance for --pattern (W/m^2)")->capture_default_str();
    }

    [[nodiscard]] experiment::Target resolve() const {
        if (!pattern.empty()) return {fs::path(pattern).stem().string(), 0, load_pattern_csv(pattern, g0)};
        if (caseName.empty()) throw std::invalid_argument("one of --case or --pattern is required");
        return experiment::Target::builtin(caseName);
    }
};

struct OptimizerOptions {
    std::size_t pop = 100;
    std::size_t iters = 800;
    std::uint64_t seed = 1;
    std::string weights;

    void add_options(CLI::App* app) {
        app->add_option("--pop", pop, "population size")->capture_default_str();
        app->add_option("--iters", iters, "iterations per run")->capture_default_str();
        app->add_option("--seed", seed, "seed (master seed for experiment)")->capture_default_str();
        app->add_option("--weights", weights, "fitness weights mf,wT,wWb");
    }

    [[nodiscard]] FitnessWeights fitness_weights() const {
        return weights.empty() ? FitnessWeights{} : parse_weights(weights);
    }

    [[nodiscard]] opt::OptimizerConfig optimizer_config() const {
        opt::OptimizerConfig c;
        c.popSize = pop;
        c.maxIters = iters;
        c.seed = seed;
        return c;
    }
};

void print_gp_table(std::ostream& os, const GpTable& t) {
    os << "  row  current  activeRows  power\n";
    for (const auto& r : t.rows) {
        os << "  " << std::setw(3) << r.row + 1 << "  " << std::setw(7) << r.current.str() << "  " << std::setw(10)
           << r.activeRows << "  " << (r.power ? r.power->str() : "-") << '\n';
    }
    os << "  GP " << t.globalPeak.str() << " V_m*I_m at " << t.peakActiveRows << " rows\n";
}

std::ofstream open_in(const fs::path& dir, const std::string& file) {
    fs::create_directories(dir);
    return report::open_output((dir / file).string());
}

int cmd_tct_report(const FieldSource& src, const std::string& out) {
    const auto target = src.resolve();
    const auto currents = row_currents(target.field);
    const auto table = gp_table(currents);
    std::cout << "case " << target.name << " (TCT)\n";
    print_gp_table(std::cout, table);
    if (!out.empty()) {
        auto gp = open_in(out, "gp_tct_" + target.name + ".csv");
        report::write_gp_table(gp, table);
        auto rc = open_in(out, "row_currents_" + target.name + ".csv");
        report::write_row_currents(rc, currents);
    }
    return 0;
}

int cmd_solve(const FieldSource& src, const OptimizerOptions& oo, const std::string& algs,
              std::optional<double> target, const std::string& out) {
    const auto t = src.resolve();
    const auto weights = oo.fitness_weights();
    auto cfg = oo.optimizer_config();
    cfg.targetPower = target;
    const auto tct = gp_table(row_currents(t.field));
    std::cout << "case " << t.name << ": TCT GP " << tct.globalPeak.str() << " V_m*I_m\n";
    for (auto alg : opt::parse_algorithm_list(algs)) {
        const auto res = opt::run(alg, t.field, weights, cfg);
        const auto& best = res.bestPower;
        const auto table = gp_table(row_currents(t.field, best.cfg));
        std::cout << opt::name(alg) << ": best power " << best.power.str() << " V_m*I_m, first reached at iteration "
                  << res.trace.firstBestIteration << ", " << res.trace.wallTime << " s\n";
        if (out.empty()) continue;
        const fs::path dir = fs::path(out) / std::string(opt::name(alg));
        {
            auto os = open_in(dir, "best_assignment.csv");
            report::write_assignment(os, best.cfg);
        }
        {
            auto os = open_in(dir, "effective_field.csv");
            report::write_field(os, effective_field(t.field, best.cfg));
        }
        {
            auto os = open_in(dir, "gp_table.csv");
            report::write_gp_table(os, table);
        }
        {
            auto os = open_in(dir, "convergence.csv");
            report::write_convergence(os, res.trace);
        }
        {
            experiment::RunConfig rc;
            rc.targets = {t};
            rc.algorithms = {alg};
            rc.optimizer = cfg;
            rc.weights = weights;
            rc.runs = 1;
            auto j = experiment::config_json(rc);
            j.erase("runs");
            j.erase("masterSeed");
            j.erase("jobs");
            j.erase("oracleBudget");
            j["seed"] = cfg.seed;
            if (target) j["targetPower"] = *target;
            j["bestPower"] = best.power.str();
            j["bestFitness"] = best.breakdown.fitness;
            j["firstBestIteration"] = res.trace.firstBestIteration;
            j["evaluations"] = res.trace.evaluations;
            j["wallTime"] = res.trace.wallTime;
            auto os = open_in(dir, "run.json");
            os << j.dump(2) << '\n';
        }
    }
    return 0;
}

int cmd_experiment(const std::vector<std::string>& cases, const std::vector<std::string>& patterns, double g0,
                   const std::string& configFile, const OptimizerOptions& oo, const CLI::App& app,
                   const std::string& algs, std::size_t runs, std::size_t jobs, const std::string& out,
                   bool convergence, bool quiet) {
    experiment::RunConfig cfg;
    if (!configFile.empty()) {
        std::ifstream in(configFile);
        if (!in) throw std::runtime_error("cannot read " + configFile);
        experiment::apply_config_json(cfg, nlohmann::json::parse(in), g0);
    }
    if (!cases.empty() || !patterns.empty()) cfg.targets.clear();
    for (const auto& c : cases) {
        if (c == "all") {
            for (auto n : kBuiltinCaseNames) cfg.targets.push_back(experiment::Target::builtin(n));
        } else {
            cfg.targets.push_back(experiment::Target::builtin(c));
        }
    }
    for (const auto& p : patterns) cfg.targets.push_back({fs::path(p).stem().string(), 0, load_pattern_csv(p, g0)});
    if (cfg.targets.empty())
        for (auto n : kBuiltinCaseNames) cfg.targets.push_back(experiment::Target::builtin(n));
    if (app.count("--alg")) cfg.algorithms = opt::parse_algorithm_list(algs);
    if (app.count("--pop")) cfg.optimizer.popSize = oo.pop;
    if (app.count("--iters")) cfg.optimizer.maxIters = oo.iters;
    if (app.count("--seed")) cfg.masterSeed = oo.seed;
    if (app.count("--weights")) cfg.weights = oo.fitness_weights();
    if (app.count("--runs")) cfg.runs = runs;
    if (app.count("--jobs")) cfg.jobs = jobs;

    const auto rep = experiment::run_experiment(cfg, [&](const experiment::RunRecord& r, std::size_t done,
                                                         std::size_t total) {
        if (quiet) return;
        std::cerr << "[" << done << "/" << total << "] " << opt::name(r.algorithm) << " " << cfg.targets[r.target].name
                  << " run " << r.run + 1 << ": " << r.bestPower.str() << " (iteration " << r.trace.firstBestIteration
                  << ")\n";
    });
    experiment::write_report(rep, out, convergence);

    std::cout << "correctness (%)\n  alg ";
    for (const auto& t : cfg.targets) std::cout << std::setw(14) << t.name;
    std::cout << std::setw(8) << "mean" << std::setw(6) << "rank" << '\n';
    for (const auto& ac : rep.correctness) {
        std::cout << "  " << std::setw(4) << std::left << opt::name(ac.algorithm) << std::right;
        for (double v : ac.perCase) std::cout << std::setw(14) << v;
        std::cout << std::setw(8) << ac.mean << std::setw(6) << ac.rank << '\n';
    }
    std::cout << "cases\n";
    for (const auto& cs : rep.cases) {
        std::cout << "  " << cs.name << ": TCT " << cs.tct.globalPeak.str() << ", best " << cs.bestPower.str()
                  << ", best known " << cs.bestKnown.str() << ", improvement " << csv::format(cs.improvementPct)
                  << "%\n";
    }
    std::size_t divergent = 0;
    for (const auto& d : rep.divergences) divergent += d.status == "divergent";
    if (!rep.divergences.empty())
        std::cout << divergent << " published figures differ from recomputed values (see divergences.csv)\n";
    std::cout << "report written to " << out << '\n';
    return 0;
}

int cmd_oracle(const FieldSource& src, std::uint64_t budget, bool noSymmetry, const std::string& compare,
               const OptimizerOptions& oo, std::size_t runs) {
    const auto t = src.resolve();
    const auto weights = oo.fitness_weights();
    OracleOptions opts;
    opts.budget = budget;
    opts.symmetryReduce = !noSymmetry;
    const auto res = brute_force(t.field, weights, opts);
    std::cout << "bestPower " << res.bestPower.str() << "\noptimaCount " << res.optimaCount << "\nstatesExplored "
              << res.statesExplored << "\nbestAssignment\n";
    report::write_assignment(std::cout, res.bestCfg);
    if (compare.empty()) return 0;
    for (auto alg : opt::parse_algorithm_list(compare)) {
        Fixed best;
        for (std::size_t r = 0; r < runs; ++r) {
            auto cfg = oo.optimizer_config();
            cfg.seed = derive_seed(oo.seed, opt::name(alg), t.name, r);
            best = std::max(best, opt::run(alg, t.field, weights, cfg).bestPower.power);
        }
        std::cout << opt::name(alg) << " best " << best.str() << " agree " << (best == res.bestPower ? "true" : "false")
                  << '\n';
    }
    return 0;
}

int cmd_iv_curve(const std::string& specFile, double g, double tempC, std::size_t points,
                 std::optional<double> ideality, const std::string& out) {
    pv::ModuleSpec spec;
    if (!specFile.empty()) {
        std::ifstream in(specFile);
        if (!in) throw std::runtime_error("cannot read " + specFile);
        const auto j = nlohmann::json::parse(in);
        spec.pRated = j.value("pRated", spec.pRated);
        spec.vOc = j.value("vOc", spec.vOc);
        spec.iSc = j.value("iSc", spec.iSc);
        spec.vNom = j.value("vNom", spec.vNom);
        spec.iNom = j.value("iNom", spec.iNom);
        spec.g0 = j.value("g0", spec.g0);
        spec.tStd = j.value("tStd", spec.tStd);
    }
    spec.validate();
    auto params = ideality ? pv::calibrate(spec, *ideality) : pv::calibrate(spec);
    const double tK = tempC + pv::kCelsiusOffset;
    params.t = tK;
    const auto curve = pv::iv_curve(params, spec, g, tK, points);
    if (out.empty()) {
        report::write_iv_curve(std::cout, curve);
    } else {
        auto os = report::open_output(out);
        report::write_iv_curve(os, curve);
        const auto mpp = pv::max_power_point(params, spec, g, tK);
        std::cout << "MPP " << mpp.p << " W at " << mpp.v << " V, " << mpp.i << " A\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PV array reconfiguration under partial shading"};
    app.require_subcommand(1);

    FieldSource tctSrc;
    std::string tctOut;
    auto* tct = app.add_subcommand("tct-report", "row currents and bypass table of the TCT arrangement");
    tctSrc.add_options(tct);
    tct->add_option("--out", tctOut, "directory for CSV output");

    FieldSource solveSrc;
    OptimizerOptions solveOpt;
    std::string solveAlg = "gwo";
    std::optional<double> solveTarget;
    std::string solveOut;
    auto* solve = app.add_subcommand("solve", "search a reconfiguration with one or more algorithms");
    solveSrc.add_options(solve);
    solveOpt.add_options(solve);
    solve->add_option("--alg", solveAlg, "ga|ica|gwo|mvo|mfo|all (comma-separated list allowed)")
        ->capture_default_str();
    solve->add_option("--target", solveTarget, "stop once this power (V_m*I_m) is reached");
    solve->add_option("--out", solveOut, "output directory");

    std::vector<std::string> expCases;
    std::vector<std::string> expPatterns;
    double expG0 = 1000.0;
    std::string expConfig;
    OptimizerOptions expOpt;
    std::string expAlg = "all";
    std::size_t expRuns = 10;
    std::size_t expJobs = 1;
    std::string expOut = "experiment";
    bool expNoConvergence = false;
    bool expQuiet = false;
    auto* exp = app.add_subcommand("experiment", "run the algorithms x cases x runs protocol and write the report");
    exp->add_option("--case", expCases, "built-in case(s) or 'all' (default: all)");
    exp->add_option("--pattern", expPatterns, "pattern CSV file(s)")->check(CLI::ExistingFile);
    exp->add_option("--g0", expG0, "reference irradiance for --pattern (W/m^2)")->capture_default_str();
    exp->add_option("--config", expConfig, "JSON run configuration; flags override it")->check(CLI::ExistingFile);
    expOpt.add_options(exp);
    exp->add_option("--alg", expAlg, "ga|ica|gwo|mvo|mfo|all")->capture_default_str();
    exp->add_option("--runs", expRuns, "runs per algorithm and case")->capture_default_str();
    exp->add_option("--jobs", expJobs, "worker threads")->capture_default_str();
    exp->add_option("--out", expOut, "output directory")->capture_default_str();
    exp->add_flag("--no-convergence", expNoConvergence, "skip per-run convergence CSVs");
    exp->add_flag("--quiet", expQuiet, "no per-run progress");

    FieldSource oracleSrc;
    OptimizerOptions oracleOpt;
    std::uint64_t oracleBudget = 10'000'000;
    bool oracleNoSym = false;
    std::string oracleCompare;
    std::size_t oracleRuns = 10;
    auto* orc = app.add_subcommand("oracle", "exhaustive maximum-power search for small arrays");
    oracleSrc.add_options(orc);
    orc->add_option("--budget", oracleBudget, "maximum number of states")->capture_default_str();
    orc->add_flag("--no-symmetry", oracleNoSym, "do not pin the first column");
    orc->add_option("--alg", oracleCompare, "also run these algorithms and compare");
    orc->add_option("--runs", oracleRuns, "runs per compared algorithm")->capture_default_str();
    oracleOpt.add_options(orc);

    std::string ivSpec;
    double ivG = 1000.0;
    double ivTemp = 25.0;
    std::size_t ivPoints = 100;
    std::optional<double> ivIdeality;
    std::string ivOut;
    auto* iv = app.add_subcommand("iv-curve", "single-diode I-V curve of one module");
    iv->add_option("--spec", ivSpec, "JSON module datasheet (defaults: 80 W module)")->check(CLI::ExistingFile);
    iv->add_option("--g", ivG, "irradiance W/m^2")->capture_default_str();
    iv->add_option("--temp", ivTemp, "cell temperature in degC")->capture_default_str();
    iv->add_option("--points", ivPoints, "number of samples")->capture_default_str();
    iv->add_option("--ideality", ivIdeality, "diode ideality factor (default: fitted to the nominal point)");
    iv->add_option("--out", ivOut, "CSV file (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*tct) return cmd_tct_report(tctSrc, tctOut);
        if (*solve) return cmd_solve(solveSrc, solveOpt, solveAlg, solveTarget, solveOut);
        if (*exp)
            return cmd_experiment(expCases, expPatterns, expG0, expConfig, expOpt, *exp, expAlg, expRuns, expJobs,
                                  expOut, !expNoConvergence, expQuiet);
        if (*orc) return cmd_oracle(oracleSrc, oracleBudget, oracleNoSym, oracleCompare, oracleOpt, oracleRuns);
        if (*iv) return cmd_iv_curve(ivSpec, ivG, ivTemp, ivPoints, ivIdeality, ivOut);
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
