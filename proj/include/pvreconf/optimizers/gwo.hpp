#pragma once

#include <algorithm>
#include <array>
#include <vector>

#include "common.hpp"

namespace pvreconf::opt {

/// Alpha, beta and delta: the three lowest-fitness wolves offered so far.
class LeaderPack {
public:
    void offer(const Candidate& c) {
        std::size_t pos = count_;
        while (pos > 0 && c.fitness() <= leaders_[pos - 1].fitness()) --pos;
        if (pos >= 3) return;
        for (std::size_t k = std::min<std::size_t>(count_, 2); k > pos; --k) leaders_[k] = leaders_[k - 1];
        leaders_[pos] = c;
        count_ = std::min<std::size_t>(count_ + 1, 3);
    }

    [[nodiscard]] std::size_t size() const { return count_; }

    /// 0 = alpha, 1 = beta, 2 = delta; repeats the last leader when fewer than three exist.
    [[nodiscard]] const Candidate& operator[](std::size_t rank) const { return leaders_[std::min(rank, count_ - 1)]; }

private:
    std::array<Candidate, 3> leaders_;
    std::size_t count_ = 0;
};

/// Grey wolf optimizer in key space. Alpha, beta and delta are the three best
/// wolves seen so far; every wolf moves to the mean of the three attractor
/// points, with the coefficient a decreasing linearly over the run.
inline RunResult run_gwo(const IrradianceField& field, const FitnessWeights& weights, const OptimizerConfig& cfg) {
    std::vector<Candidate> wolves;
    LeaderPack leaders;

    return run_loop(
        field, weights, cfg,
        [&](Evaluator& eval, Rng& rng) {
            wolves.clear();
            for (std::size_t n = 0; n < cfg.popSize; ++n) {
                wolves.push_back(eval.random_candidate(rng));
                leaders.offer(wolves.back());
            }
        },
        [&](Evaluator& eval, Rng& rng, std::size_t it) {
            const double progress = static_cast<double>(it - 1) / static_cast<double>(cfg.maxIters);
            const double a = cfg.gwo.aStart + (cfg.gwo.aEnd - cfg.gwo.aStart) * progress;
            const std::size_t dims = eval.dims();
            for (auto& wolf : wolves) {
                for (std::size_t g = 0; g < dims; ++g) {
                    const double x = wolf.keys[g];
                    double sum = 0.0;
                    for (std::size_t l = 0; l < 3; ++l) {
                        const double leader = leaders[l].keys[g];
                        const double A = 2.0 * a * rng.uniform() - a;
                        const double C = 2.0 * rng.uniform();
                        const double D = std::abs(C * leader - x);
                        sum += leader - A * D;
                    }
                    wolf.keys[g] = clamp_key(sum / 3.0);
                }
                eval.evaluate(wolf);
            }
            for (const auto& wolf : wolves) leaders.offer(wolf);
        });
}

}  // namespace pvreconf::opt
