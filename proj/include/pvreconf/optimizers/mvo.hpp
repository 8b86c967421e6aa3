#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "common.hpp"

namespace pvreconf::opt {

/// Wormhole existence probability, rising linearly over the run.
inline double wormhole_probability(const MvoParams& p, std::size_t it, std::size_t maxIters) {
    return p.wepMin + static_cast<double>(it) * (p.wepMax - p.wepMin) / static_cast<double>(maxIters);
}

/// Travelling distance rate, 1 - it^(1/p) / T^(1/p).
inline double travel_distance_rate(const MvoParams& p, std::size_t it, std::size_t maxIters) {
    const double e = 1.0 / p.tdrExponent;
    return 1.0 - std::pow(static_cast<double>(it), e) / std::pow(static_cast<double>(maxIters), e);
}

/// Multi-verse optimizer. Universes are ranked by fitness (their inflation
/// rate); each gene of a worse universe receives, with probability equal to
/// its normalized inflation rate, the gene of a roulette-chosen better
/// universe (white hole to black hole). Wormholes then pull genes toward the
/// best universe with probability WEP and step size TDR. The top-ranked
/// universe is carried over unchanged.
inline RunResult run_mvo(const IrradianceField& field, const FitnessWeights& weights, const OptimizerConfig& cfg) {
    std::vector<Candidate> universes;
    std::vector<Candidate> sorted;
    std::vector<double> normalized;
    std::vector<double> roulette;  // cumulative weights favouring low fitness
    const MvoParams& p = cfg.mvo;

    auto pick_white_hole = [&](Rng& rng) {
        const double target = rng.uniform() * roulette.back();
        const auto it = std::upper_bound(roulette.begin(), roulette.end(), target);
        return static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - roulette.begin(),
                                                                 static_cast<std::ptrdiff_t>(roulette.size()) - 1));
    };

    return run_loop(
        field, weights, cfg,
        [&](Evaluator& eval, Rng& rng) {
            universes.clear();
            for (std::size_t n = 0; n < cfg.popSize; ++n) universes.push_back(eval.random_candidate(rng));
        },
        [&](Evaluator& eval, Rng& rng, std::size_t it) {
            const double wep = wormhole_probability(p, it, cfg.maxIters);
            const double tdr = travel_distance_rate(p, it, cfg.maxIters);
            sorted = universes;
            sort_by_fitness(sorted);

            double norm = 0.0;
            for (const auto& u : sorted) norm += u.fitness() * u.fitness();
            norm = std::sqrt(norm);
            normalized.resize(sorted.size());
            roulette.resize(sorted.size());
            double acc = 0.0;
            for (std::size_t i = 0; i < sorted.size(); ++i) {
                normalized[i] = norm > 0.0 ? sorted[i].fitness() / norm : 0.0;
                acc += 1.0 / sorted[i].fitness();
                roulette[i] = acc;
            }

            const Keys& best = eval.best().keys;
            const std::size_t dims = eval.dims();
            universes[0] = sorted[0];
            for (std::size_t i = 1; i < sorted.size(); ++i) {
                Candidate& u = universes[i];
                u = sorted[i];
                for (std::size_t g = 0; g < dims; ++g) {
                    if (p.exchange && rng.uniform() < normalized[i]) u.keys[g] = sorted[pick_white_hole(rng)].keys[g];
                    if (rng.uniform() < wep) {
                        const double step = tdr * rng.uniform();
                        u.keys[g] = clamp_key(rng.uniform() < 0.5 ? best[g] + step : best[g] - step);
                    }
                }
                eval.evaluate(u);
            }
        });
}

}  // namespace pvreconf::opt
