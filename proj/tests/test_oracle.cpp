#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include "pvreconf/oracle.hpp"
#include "test_support.hpp"

using namespace pvreconf;
using namespace pvreconf::literals;
using pvreconf::testing::random_cfg;
using pvreconf::testing::random_field;

namespace {

IrradianceField permute_rows(const IrradianceField& f, const std::vector<std::size_t>& order) {
    std::vector<Fixed> v;
    for (std::size_t i : order)
        for (std::size_t j = 0; j < f.cols(); ++j) v.push_back(f.at(i, j));
    return {f.rows(), f.cols(), std::move(v)};
}

IrradianceField permute_cols(const IrradianceField& f, const std::vector<std::size_t>& order) {
    std::vector<Fixed> v;
    for (std::size_t i = 0; i < f.rows(); ++i)
        for (std::size_t j : order) v.push_back(f.at(i, j));
    return {f.rows(), f.cols(), std::move(v)};
}

OracleOptions no_symmetry() {
    OracleOptions o;
    o.symmetryReduce = false;
    return o;
}

}  // namespace

TEST_CASE("state counts", "[oracle]") {
    REQUIRE(oracle_state_count(3, 3, true) == 36);
    REQUIRE(oracle_state_count(3, 3, false) == 216);
    REQUIRE(oracle_state_count(4, 4, true) == 13'824);
    REQUIRE(oracle_state_count(5, 5, true) == 207'360'000);
    REQUIRE(oracle_state_count(9, 9, true) == std::numeric_limits<std::uint64_t>::max());
    REQUIRE(oracle_state_count(1, 7, false) == 1);
}

TEST_CASE("uniform field: every configuration is optimal", "[oracle]") {
    const auto f = IrradianceField::uniform(3, 4, 1_fx);
    for (bool sym : {true, false}) {
        OracleOptions o;
        o.symmetryReduce = sym;
        const auto res = brute_force(f, FitnessWeights{}, o);
        REQUIRE(res.bestPower == 12_fx);
        REQUIRE(res.optimaCount == res.statesExplored);
        REQUIRE(res.statesExplored == oracle_state_count(3, 4, sym));
    }
}

TEST_CASE("2x2 hand-enumerated field", "[oracle]") {
    const auto f = IrradianceField::from_rows({{1.0, 0.5}, {0.5, 1.0}});
    const auto res = brute_force(f, FitnessWeights{}, no_symmetry());
    REQUIRE(res.bestPower == 3_fx);
    REQUIRE(res.statesExplored == 4);
    REQUIRE(res.optimaCount == 2);
    REQUIRE(array_power_wb(row_currents(f, res.bestCfg)) == 3_fx);
}

TEST_CASE("budget is enforced", "[oracle]") {
    Rng rng(1);
    const auto f = random_field(rng, 4, 4);
    OracleOptions o;
    o.budget = 10;
    REQUIRE_THROWS_AS(brute_force(f, FitnessWeights{}, o), BudgetExceeded);
    try {
        brute_force(f, FitnessWeights{}, o);
    } catch (const BudgetExceeded& e) {
        REQUIRE(e.required() == 13'824);
        REQUIRE(e.budget() == 10);
    }
    const auto big = random_field(rng, 5, 5);
    REQUIRE_THROWS_AS(brute_force(big, FitnessWeights{}), BudgetExceeded);
}

TEST_CASE("symmetry reduction and pruning do not change the optimum", "[oracle][property]") {
    Rng rng(404);
    for (int trial = 0; trial < 10; ++trial) {
        const auto f = random_field(rng, 4, 4);
        OracleOptions plain = no_symmetry();
        plain.prune = false;
        const auto full = brute_force(f, FitnessWeights{}, plain);
        const auto reduced = brute_force(f, FitnessWeights{});
        REQUIRE(full.bestPower == reduced.bestPower);
        REQUIRE(full.statesExplored == 331'776);
        REQUIRE(full.leavesEvaluated == 331'776);
        REQUIRE(reduced.statesExplored == 13'824);
        REQUIRE(reduced.leavesEvaluated <= reduced.statesExplored);
        REQUIRE(full.optimaCount == reduced.optimaCount * 24);
        REQUIRE(array_power_wb(row_currents(f, reduced.bestCfg)) == reduced.bestPower);
        REQUIRE(evaluate(f, reduced.bestCfg, FitnessWeights{}).fitness == reduced.bestBreakdown.fitness);
        for (std::size_t i = 0; i < 4; ++i) REQUIRE(reduced.bestCfg.at(i, 0) == i);
    }
}

TEST_CASE("oracle dominates random sampling", "[oracle][property]") {
    Rng rng(77);
    for (int trial = 0; trial < 5; ++trial) {
        const auto f = random_field(rng, 4, 4);
        const auto best = brute_force(f, FitnessWeights{}).bestPower;
        for (int s = 0; s < 10'000; ++s) REQUIRE(array_power_wb(row_currents(f, random_cfg(rng, 4, 4))) <= best);
    }
}

TEST_CASE("oracle optimum is invariant under row and column permutations of the field", "[oracle][property]") {
    Rng rng(555);
    for (int trial = 0; trial < 10; ++trial) {
        const auto f = random_field(rng, 3, 4);
        const auto best = brute_force(f, FitnessWeights{}).bestPower;
        REQUIRE(brute_force(permute_rows(f, {2, 0, 1}), FitnessWeights{}).bestPower == best);
        REQUIRE(brute_force(permute_cols(f, {3, 1, 0, 2}), FitnessWeights{}).bestPower == best);
    }
}

TEST_CASE("single-row and single-column fields", "[oracle]") {
    const auto row = IrradianceField::from_rows({{0.3, 0.4, 0.5}});
    const auto r = brute_force(row, FitnessWeights{});
    REQUIRE(r.bestPower == 1.2_fx);
    REQUIRE(r.statesExplored == 1);
    const auto col = IrradianceField::from_rows({{0.3}, {0.7}, {0.5}});
    const auto c = brute_force(col, FitnessWeights{}, no_symmetry());
    REQUIRE(c.bestPower == 0.9_fx);
    REQUIRE(c.optimaCount == 6);
}
