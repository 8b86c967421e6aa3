#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "pvreconf/cases.hpp"
#include "pvreconf/optimizers.hpp"
#include "pvreconf/oracle.hpp"
#include "test_support.hpp"

using namespace pvreconf;
using namespace pvreconf::opt;
using namespace pvreconf::literals;
using Catch::Approx;
using pvreconf::testing::random_field;

namespace {

OptimizerConfig small_config(std::uint64_t seed, std::size_t pop = 30, std::size_t iters = 100) {
    OptimizerConfig c;
    c.popSize = pop;
    c.maxIters = iters;
    c.seed = seed;
    return c;
}

Fixed best_of_initial_population(const IrradianceField& f, const OptimizerConfig& cfg) {
    auto c = cfg;
    c.maxIters = 0;
    return run_ga(f, FitnessWeights{}, c).bestPower.power;
}

}  // namespace

TEST_CASE("decode ranks keys ascending per column", "[decode]") {
    // column-major reading of a 3x1 grid is the same as row-major
    REQUIRE(decode({0.1, 0.5, 0.9}, 3, 1) == Reconfiguration::identity(3, 1));
    REQUIRE(decode({0.9, 0.5, 0.1}, 3, 1) == Reconfiguration::from_rows({{2}, {1}, {0}}));
    REQUIRE(decode({0.4, 0.4, 0.4}, 3, 1) == Reconfiguration::identity(3, 1));
    // 2x2: column 0 keys (0.7, 0.2), column 1 keys (0.1, 0.3)
    REQUIRE(decode({0.7, 0.1, 0.2, 0.3}, 2, 2) == Reconfiguration::from_rows({{1, 0}, {0, 1}}));
}

TEST_CASE("decode rejects malformed keys", "[decode]") {
    REQUIRE_THROWS_AS(decode({0.1, 0.2}, 3, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(decode({0.1, std::nan(""), 0.3}, 3, 1), std::invalid_argument);
}

TEST_CASE("decode always yields a valid reconfiguration", "[decode][property]") {
    Rng rng(8);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t r = 1 + rng.below(9);
        const std::size_t c = 1 + rng.below(9);
        Keys keys(r * c);
        for (auto& k : keys) {
            const double u = rng.uniform();
            k = u < 0.2 ? 0.0 : u < 0.3 ? kKeyUpper : std::floor(u * 4.0) / 4.0;
        }
        REQUIRE(decode(keys, r, c).is_valid());
    }
}

TEST_CASE("clamp_key keeps keys in [0, 1)", "[decode]") {
    REQUIRE(clamp_key(-3.0) == 0.0);
    REQUIRE(clamp_key(1.0) < 1.0);
    REQUIRE(clamp_key(7.5) == kKeyUpper);
    REQUIRE(clamp_key(0.25) == 0.25);
}

TEST_CASE("OptimizerConfig validation", "[config]") {
    OptimizerConfig c;
    REQUIRE_NOTHROW(c.validate());
    c.popSize = 3;
    REQUIRE_THROWS_AS(c.validate(), std::invalid_argument);
    c = OptimizerConfig{};
    c.mfo.tMin = -2.0;
    REQUIRE_THROWS_AS(c.validate(), std::invalid_argument);
    c = OptimizerConfig{};
    c.mfo.b = 0.0;
    REQUIRE_THROWS_AS(c.validate(), std::invalid_argument);
    c = OptimizerConfig{};
    c.ica.imperialists = 200;
    REQUIRE_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("algorithm names", "[config]") {
    for (Algorithm a : kAllAlgorithms) REQUIRE(parse_algorithm(name(a)) == a);
    REQUIRE(parse_algorithm_list("all").size() == 5);
    REQUIRE(parse_algorithm_list("gwo,ga") == std::vector<Algorithm>{Algorithm::GWO, Algorithm::GA});
    REQUIRE_THROWS_AS(parse_algorithm("pso"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_algorithm_list(""), std::invalid_argument);
}

TEST_CASE("MFO spiral and flame schedule", "[mfo]") {
    REQUIRE(spiral_position(0.3, 0.5, 1.0, 0.0) == Approx(0.8));
    REQUIRE(spiral_position(0.3, 0.5, 1.0, 0.5) == Approx(0.5 - 0.3 * std::exp(0.5)));
    REQUIRE(spiral_position(0.3, 0.5, 1.0, -1.0) == Approx(0.5 + 0.3 * std::exp(-1.0)));
    REQUIRE(flame_count(100, 0, 800) == 100);
    REQUIRE(flame_count(100, 800, 800) == 1);
    REQUIRE(flame_count(100, 400, 800) == 51);
}

TEST_CASE("MVO schedules", "[mvo]") {
    const MvoParams p;
    REQUIRE(wormhole_probability(p, 0, 800) == Approx(0.2));
    REQUIRE(wormhole_probability(p, 800, 800) == Approx(1.0));
    REQUIRE(travel_distance_rate(p, 800, 800) == Approx(0.0).margin(1e-15));
    REQUIRE(travel_distance_rate(p, 1, 800) == Approx(1.0 - std::pow(1.0 / 800.0, 1.0 / 6.0)));
}

TEST_CASE("GWO leader pack", "[gwo]") {
    auto make = [](double fitness) {
        Candidate c;
        c.breakdown.fitness = fitness;
        return c;
    };
    LeaderPack pack;
    for (double f : {5.0, 3.0, 4.0}) pack.offer(make(f));
    REQUIRE(pack.size() == 3);
    REQUIRE(pack[0].fitness() == 3.0);
    REQUIRE(pack[1].fitness() == 4.0);
    REQUIRE(pack[2].fitness() == 5.0);
    pack.offer(make(3.5));
    REQUIRE(pack[1].fitness() == 3.5);
    REQUIRE(pack[2].fitness() == 4.0);
    pack.offer(make(9.0));
    REQUIRE(pack[2].fitness() == 4.0);

    LeaderPack two;
    two.offer(make(2.0));
    two.offer(make(1.0));
    REQUIRE(two[2].fitness() == 2.0);
}

TEST_CASE("GWO with a population of three keeps the whole pack as leaders", "[gwo]") {
    // popSize is bounded below by 4; a three-wolf pack is exercised through LeaderPack directly.
    Rng rng(1);
    const auto f = IrradianceField::from_rows({{0.9, 0.2}, {0.4, 0.8}});
    Evaluator eval(f, FitnessWeights{});
    LeaderPack pack;
    std::vector<Candidate> wolves;
    for (int k = 0; k < 3; ++k) {
        wolves.push_back(eval.random_candidate(rng));
        pack.offer(wolves.back());
    }
    std::vector<double> leaders{pack[0].fitness(), pack[1].fitness(), pack[2].fitness()};
    std::vector<double> all{wolves[0].fitness(), wolves[1].fitness(), wolves[2].fitness()};
    std::sort(all.begin(), all.end());
    REQUIRE(leaders == all);
}

TEST_CASE("ICA roulette favours strong empires", "[ica]") {
    Rng rng(4);
    std::array<int, 3> wins{};
    for (int k = 0; k < 3000; ++k) ++wins[opt::detail::ica_pick({1.0, 2.0, 3.0}, rng)];
    REQUIRE(wins[0] > wins[1]);
    REQUIRE(wins[1] > wins[2]);
}

TEST_CASE("ICA with one empire still improves on the initial population", "[ica]") {
    const auto f = builtin_case("long-narrow").field;
    auto cfg = small_config(12, 40, 200);
    cfg.ica.imperialists = 1;
    const auto res = run_ica(f, FitnessWeights{}, cfg);
    REQUIRE(res.bestPower.power >= best_of_initial_population(f, cfg));
    REQUIRE(res.bestPower.cfg.is_valid());
}

TEST_CASE("MVO without wormholes or exchanges stays at the initial best", "[mvo]") {
    const auto f = builtin_case("short-wide").field;
    auto cfg = small_config(21, 30, 50);
    cfg.mvo.wepMin = 0.0;
    cfg.mvo.wepMax = 0.0;
    cfg.mvo.exchange = false;
    const auto res = run_mvo(f, FitnessWeights{}, cfg);
    REQUIRE(res.bestPower.power == best_of_initial_population(f, cfg));
    for (const auto& rec : res.trace.records) REQUIRE(rec.bestPower == res.trace.records.front().bestPower);
}

TEST_CASE("a run with zero iterations returns the best initial candidate", "[ga]") {
    const auto f = builtin_case("long-wide").field;
    auto cfg = small_config(3, 20, 0);
    for (Algorithm a : kAllAlgorithms) {
        const auto res = run(a, f, FitnessWeights{}, cfg);
        REQUIRE(res.trace.records.empty());
        REQUIRE(res.trace.firstBestIteration == 0);
        REQUIRE(res.trace.evaluations == 20);
        REQUIRE(res.bestPower.cfg.is_valid());
    }
}

TEST_CASE("every algorithm is deterministic for a fixed seed", "[determinism]") {
    const auto f = builtin_case("long-wide").field;
    for (Algorithm a : kAllAlgorithms) {
        const auto cfg = small_config(77, 25, 60);
        const auto r1 = run(a, f, FitnessWeights{}, cfg);
        const auto r2 = run(a, f, FitnessWeights{}, cfg);
        REQUIRE(r1.best.keys == r2.best.keys);
        REQUIRE(r1.bestPower.cfg == r2.bestPower.cfg);
        REQUIRE(r1.trace.records.size() == r2.trace.records.size());
        for (std::size_t k = 0; k < r1.trace.records.size(); ++k) {
            REQUIRE(r1.trace.records[k].bestFitness == r2.trace.records[k].bestFitness);
            REQUIRE(r1.trace.records[k].bestPower == r2.trace.records[k].bestPower);
        }
        REQUIRE(r1.trace.firstBestIteration == r2.trace.firstBestIteration);
    }
}

TEST_CASE("traces are monotone and consistent", "[trace][property]") {
    Rng rng(31);
    for (int trial = 0; trial < 4; ++trial) {
        const auto f = random_field(rng, 6, 6);
        for (Algorithm a : kAllAlgorithms) {
            const auto cfg = small_config(rng.below(1'000'000), 20, 80);
            const auto res = run(a, f, FitnessWeights{}, cfg);
            const auto& recs = res.trace.records;
            REQUIRE(recs.size() == 80);
            for (std::size_t k = 1; k < recs.size(); ++k) {
                REQUIRE(recs[k].iteration == k + 1);
                REQUIRE(recs[k].bestPower >= recs[k - 1].bestPower);
                REQUIRE(recs[k].bestFitness <= recs[k - 1].bestFitness);
            }
            REQUIRE(res.trace.final_power() == res.bestPower.power);
            REQUIRE(recs.back().bestFitness == res.best.fitness());
            REQUIRE(res.trace.firstBestIteration >= 1);
            REQUIRE(res.trace.firstBestIteration <= cfg.maxIters);
            REQUIRE(recs[res.trace.firstBestIteration - 1].bestPower == res.bestPower.power);
            if (res.trace.firstBestIteration > 1)
                REQUIRE(recs[res.trace.firstBestIteration - 2].bestPower < res.bestPower.power);
            REQUIRE(res.bestPower.power >= best_of_initial_population(f, cfg));
            REQUIRE(res.bestPower.cfg.is_valid());
            REQUIRE(res.best.cfg.is_valid());
            REQUIRE(array_power_wb(row_currents(f, res.bestPower.cfg)) == res.bestPower.power);
            REQUIRE(evaluate(f, res.best.cfg, FitnessWeights{}).fitness == res.best.fitness());
        }
    }
}

TEST_CASE("target power stops a run early", "[trace]") {
    const auto f = builtin_case("short-narrow").field;
    auto cfg = small_config(5, 100, 800);
    cfg.targetPower = 65.7;
    const auto res = run_gwo(f, FitnessWeights{}, cfg);
    REQUIRE(res.bestPower.power == 65.7_fx);
    REQUIRE(res.trace.stoppedEarly);
    REQUIRE(res.trace.records.size() < 800);
    REQUIRE(res.trace.firstBestIteration == res.trace.records.size());
}

TEST_CASE("all algorithms match the oracle on 3x3 fields in every run", "[oracle][property]") {
    Rng rng(2024);
    for (int field = 0; field < 5; ++field) {
        const auto f = random_field(rng, 3, 3);
        const auto optimum = brute_force(f, FitnessWeights{}).bestPower;
        for (Algorithm a : kAllAlgorithms) {
            for (std::uint64_t run = 0; run < 10; ++run) {
                const auto cfg = small_config(derive_seed(9, name(a), "3x3", run));
                REQUIRE(opt::run(a, f, FitnessWeights{}, cfg).bestPower.power == optimum);
            }
        }
    }
}

TEST_CASE("mean-time metric arithmetic", "[metric]") {
    REQUIRE(mean_time_metric(8.0, 800, 1.0) == Approx(0.01));
    REQUIRE(mean_time_metric(11.9971, 800, 29.0) == Approx(0.4349).margin(5e-5));
    ConvergenceTrace t;
    t.wallTime = 4.0;
    t.firstBestIteration = 40;
    const std::vector<ConvergenceTrace> one{t};
    REQUIRE(mean_time_metric(one, 800) == Approx(4.0 / 800.0 * 40.0));
    auto t2 = t;
    t2.wallTime = 6.0;
    t2.firstBestIteration = 60;
    const std::vector<ConvergenceTrace> two{t, t2};
    REQUIRE(mean_time_metric(two, 800) == Approx(5.0 / 800.0 * 50.0));
    REQUIRE_THROWS_AS(mean_time_metric(std::vector<ConvergenceTrace>{}, 800), std::invalid_argument);
    REQUIRE_THROWS_AS(mean_time_metric(1.0, 0, 1.0), std::invalid_argument);
}
