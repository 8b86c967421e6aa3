#pragma once

#include <algorithm>
#include <vector>

#include "common.hpp"

namespace pvreconf::opt {

/// Elitist generational GA on random keys: tournament selection, uniform
/// crossover and per-gene resampling mutation.
inline RunResult run_ga(const IrradianceField& field, const FitnessWeights& weights, const OptimizerConfig& cfg) {
    std::vector<Candidate> pop;
    std::vector<Candidate> next;
    const GaParams& p = cfg.ga;

    auto tournament = [&](Rng& rng) -> const Candidate& {
        const Candidate* winner = &pop[rng.below(pop.size())];
        for (std::size_t t = 1; t < p.tournamentSize; ++t) {
            const Candidate& rival = pop[rng.below(pop.size())];
            if (rival.fitness() < winner->fitness()) winner = &rival;
        }
        return *winner;
    };

    return run_loop(
        field, weights, cfg,
        [&](Evaluator& eval, Rng& rng) {
            pop.clear();
            for (std::size_t n = 0; n < cfg.popSize; ++n) pop.push_back(eval.random_candidate(rng));
            sort_by_fitness(pop);
            next.resize(pop.size());
        },
        [&](Evaluator& eval, Rng& rng, std::size_t) {
            const std::size_t dims = eval.dims();
            const double mutation = p.mutationRate < 0.0 ? 1.0 / static_cast<double>(dims) : p.mutationRate;
            const std::size_t elites = std::min(p.elitism, pop.size());
            for (std::size_t e = 0; e < elites; ++e) next[e] = pop[e];
            for (std::size_t n = elites; n < pop.size(); ++n) {
                const Candidate& a = tournament(rng);
                const Candidate& b = tournament(rng);
                Candidate& child = next[n];
                child.keys = a.keys;
                if (rng.chance(p.crossoverRate)) {
                    for (std::size_t g = 0; g < dims; ++g) {
                        if (rng.chance(0.5)) child.keys[g] = b.keys[g];
                    }
                }
                for (double& k : child.keys) {
                    if (rng.chance(mutation)) k = rng.uniform();
                }
                eval.evaluate(child);
            }
            pop.swap(next);
            sort_by_fitness(pop);
        });
}

}  // namespace pvreconf::opt
