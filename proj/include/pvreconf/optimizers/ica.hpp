#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "common.hpp"

namespace pvreconf::opt {

struct Empire {
    std::size_t imperialist = 0;        // index into the country pool
    std::vector<std::size_t> colonies;  // indices into the country pool
    double totalCost = 0.0;
};

namespace detail {

/// Roulette on normalized strengths: cost_n - max cost, scaled to sum 1
/// (all-equal costs give a uniform draw). Returns argmax(P_n - U_n).
inline std::size_t ica_pick(const std::vector<double>& costs, Rng& rng) {
    const double worst = *std::max_element(costs.begin(), costs.end());
    double total = 0.0;
    for (double c : costs) total += worst - c;
    std::size_t winner = 0;
    double bestScore = -2.0;
    for (std::size_t n = 0; n < costs.size(); ++n) {
        const double share = total > 0.0 ? (worst - costs[n]) / total : 1.0 / static_cast<double>(costs.size());
        const double score = share - rng.uniform();
        if (score > bestScore) {
            bestScore = score;
            winner = n;
        }
    }
    return winner;
}

}  // namespace detail

/// Imperialist competitive algorithm. The best countries become imperialists
/// and receive colonies in proportion to their normalized power. Colonies are
/// assimilated toward their imperialist with a random angular deviation,
/// occasionally revolt (partial resampling) and take over the empire when they
/// overtake the imperialist. Each iteration the weakest colony of the weakest
/// empire is handed to a roulette-chosen empire; empires without colonies
/// collapse into the winner.
inline RunResult run_ica(const IrradianceField& field, const FitnessWeights& weights, const OptimizerConfig& cfg) {
    std::vector<Candidate> countries;
    std::vector<Empire> empires;
    const IcaParams& p = cfg.ica;

    auto total_cost = [&](const Empire& e) {
        double sum = 0.0;
        for (std::size_t c : e.colonies) sum += countries[c].fitness();
        const double mean = e.colonies.empty() ? 0.0 : sum / static_cast<double>(e.colonies.size());
        return countries[e.imperialist].fitness() + p.zeta * mean;
    };

    return run_loop(
        field, weights, cfg,
        [&](Evaluator& eval, Rng& rng) {
            countries.clear();
            for (std::size_t n = 0; n < cfg.popSize; ++n) countries.push_back(eval.random_candidate(rng));
            sort_by_fitness(countries);
            const std::size_t nImp = std::min(p.imperialists, countries.size());
            const std::size_t nCol = countries.size() - nImp;

            empires.assign(nImp, Empire{});
            std::vector<double> share(nImp);
            const double worst = countries[nImp - 1].fitness();
            double total = 0.0;
            for (std::size_t e = 0; e < nImp; ++e) {
                empires[e].imperialist = e;
                share[e] = worst - countries[e].fitness();
                total += share[e];
            }
            std::vector<std::size_t> quota(nImp, 0);
            std::size_t assigned = 0;
            for (std::size_t e = 0; e < nImp; ++e) {
                const double frac = total > 0.0 ? share[e] / total : 1.0 / static_cast<double>(nImp);
                quota[e] = static_cast<std::size_t>(std::floor(frac * static_cast<double>(nCol)));
                assigned += quota[e];
            }
            quota[0] += nCol - assigned;

            std::vector<std::size_t> pool(nCol);
            std::iota(pool.begin(), pool.end(), nImp);
            for (std::size_t k = pool.size(); k > 1; --k) std::swap(pool[k - 1], pool[rng.below(k)]);
            std::size_t next = 0;
            for (std::size_t e = 0; e < nImp; ++e)
                for (std::size_t q = 0; q < quota[e]; ++q) empires[e].colonies.push_back(pool[next++]);
        },
        [&](Evaluator& eval, Rng& rng, std::size_t) {
            const std::size_t dims = eval.dims();
            const std::size_t revolutionGenes =
                std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(p.revolutionFraction * dims)));

            for (auto& empire : empires) {
                for (std::size_t& colonyIdx : empire.colonies) {
                    Candidate& colony = countries[colonyIdx];
                    const Keys& imp = countries[empire.imperialist].keys;
                    const double tilt = std::tan(rng.uniform(-p.deviationAngle, p.deviationAngle));
                    for (std::size_t g = 0; g < dims; ++g) {
                        const double d = imp[g] - colony.keys[g];
                        const double move = p.assimilation * rng.uniform() * d;
                        colony.keys[g] = clamp_key(colony.keys[g] + move + tilt * std::abs(move));
                    }
                    if (rng.chance(p.revolutionRate)) {
                        for (std::size_t r = 0; r < revolutionGenes; ++r) colony.keys[rng.below(dims)] = rng.uniform();
                    }
                    eval.evaluate(colony);
                    if (colony.fitness() < countries[empire.imperialist].fitness()) {
                        std::swap(colonyIdx, empire.imperialist);
                    }
                }
                empire.totalCost = total_cost(empire);
            }

            if (empires.size() < 2) return;
            std::size_t weakest = 0;
            for (std::size_t e = 1; e < empires.size(); ++e) {
                if (empires[e].totalCost > empires[weakest].totalCost) weakest = e;
            }
            std::vector<double> costs(empires.size());
            for (std::size_t e = 0; e < empires.size(); ++e) costs[e] = empires[e].totalCost;

            Empire& loser = empires[weakest];
            if (!loser.colonies.empty()) {
                auto worstColony = std::max_element(loser.colonies.begin(), loser.colonies.end(),
                                                    [&](std::size_t a, std::size_t b) {
                                                        return countries[a].fitness() < countries[b].fitness();
                                                    });
                const std::size_t moved = *worstColony;
                loser.colonies.erase(worstColony);
                const std::size_t winner = detail::ica_pick(costs, rng);
                empires[winner].colonies.push_back(moved);
                if (winner != weakest) empires[winner].totalCost = total_cost(empires[winner]);
                loser.totalCost = total_cost(loser);
            }
            if (loser.colonies.empty()) {
                const std::size_t imperialist = loser.imperialist;
                empires.erase(empires.begin() + static_cast<std::ptrdiff_t>(weakest));
                costs.resize(empires.size());
                for (std::size_t e = 0; e < empires.size(); ++e) costs[e] = empires[e].totalCost;
                const std::size_t winner = detail::ica_pick(costs, rng);
                empires[winner].colonies.push_back(imperialist);
                empires[winner].totalCost = total_cost(empires[winner]);
            }
        });
}

}  // namespace pvreconf::opt
