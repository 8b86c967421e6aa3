#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "common.hpp"

namespace pvreconf::opt {

/// Logarithmic spiral of a moth around its flame: D e^{bt} cos(2 pi t) + F.
inline double spiral_position(double distance, double flame, double b, double t) {
    return distance * std::exp(b * t) * std::cos(2.0 * std::numbers::pi * t) + flame;
}

/// Number of flames at iteration it (1-based): shrinks linearly from N to 1.
inline std::size_t flame_count(std::size_t popSize, std::size_t it, std::size_t maxIters) {
    const double n = static_cast<double>(popSize);
    const double v = std::round(n - static_cast<double>(it) * (n - 1.0) / static_cast<double>(maxIters));
    return static_cast<std::size_t>(std::clamp(v, 1.0, n));
}

/// Moth-flame optimization. Flames are the best N positions found so far;
/// moth i spirals around flame i (or the last flame once the count shrinks
/// below i).
inline RunResult run_mfo(const IrradianceField& field, const FitnessWeights& weights, const OptimizerConfig& cfg) {
    std::vector<Candidate> moths;
    std::vector<Candidate> flames;
    std::vector<Candidate> merged;
    const MfoParams& p = cfg.mfo;

    return run_loop(
        field, weights, cfg,
        [&](Evaluator& eval, Rng& rng) {
            moths.clear();
            for (std::size_t n = 0; n < cfg.popSize; ++n) moths.push_back(eval.random_candidate(rng));
            flames = moths;
            sort_by_fitness(flames);
        },
        [&](Evaluator& eval, Rng& rng, std::size_t it) {
            const std::size_t nFlames = flame_count(cfg.popSize, it, cfg.maxIters);
            const std::size_t dims = eval.dims();
            for (std::size_t i = 0; i < moths.size(); ++i) {
                const Candidate& flame = flames[std::min(i, nFlames - 1)];
                auto& keys = moths[i].keys;
                for (std::size_t g = 0; g < dims; ++g) {
                    const double distance = std::abs(flame.keys[g] - keys[g]);
                    const double t = rng.uniform(p.tMin, p.tMax);
                    keys[g] = clamp_key(spiral_position(distance, flame.keys[g], p.b, t));
                }
                eval.evaluate(moths[i]);
            }
            merged = flames;
            merged.insert(merged.end(), moths.begin(), moths.end());
            sort_by_fitness(merged);
            merged.resize(cfg.popSize);
            flames.swap(merged);
        });
}

}  // namespace pvreconf::opt
