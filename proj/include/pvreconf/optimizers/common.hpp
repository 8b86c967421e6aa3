#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "../array.hpp"
#include "../field.hpp"
#include "../fitness.hpp"
#include "../random.hpp"

namespace pvreconf::opt {

// Random-keys genome: one real key in [0, 1) per (row, column), row-major.
using Keys = std::vector<double>;

inline constexpr double kKeyUpper = 0x1.fffffffffffffp-1;  // largest double below 1

inline double clamp_key(double x) {
    if (!(x >= 0.0)) return 0.0;  // also maps NaN to 0
    return x > kKeyUpper ? kKeyUpper : x;
}

/// Per column, electrical row i receives the physical row whose key has rank i
/// (ascending); equal keys fall back to physical row order.
inline void decode_into(const Keys& keys, std::size_t rows, std::size_t cols, Reconfiguration& out) {
    if (keys.size() != rows * cols) throw std::invalid_argument("decode: key count != r*c");
    out.reshape_unchecked(rows, cols);
    auto& a = out.mutable_values();
    thread_local std::vector<Reconfiguration::Index> order;
    order.resize(rows);
    for (std::size_t j = 0; j < cols; ++j) {
        for (std::size_t p = 0; p < rows; ++p) order[p] = static_cast<Reconfiguration::Index>(p);
        // insertion sort: stable, and r is small
        for (std::size_t x = 1; x < rows; ++x) {
            const auto idx = order[x];
            const double key = keys[idx * cols + j];
            std::size_t y = x;
            while (y > 0 && keys[order[y - 1] * cols + j] > key) {
                order[y] = order[y - 1];
                --y;
            }
            order[y] = idx;
        }
        for (std::size_t i = 0; i < rows; ++i) a[i * cols + j] = order[i];
    }
}

inline Reconfiguration decode(const Keys& keys, std::size_t rows, std::size_t cols) {
    for (double k : keys) {
        if (!std::isfinite(k)) throw std::invalid_argument("decode: non-finite key");
    }
    Reconfiguration cfg;
    decode_into(keys, rows, cols, cfg);
    return cfg;
}

struct Candidate {
    Keys keys;
    Reconfiguration cfg;
    FitnessBreakdown breakdown;
    Fixed power;  // exact P_wb in V_m*I_m

    [[nodiscard]] double fitness() const { return breakdown.fitness; }
};

struct GaParams {
    std::size_t tournamentSize = 3;
    double crossoverRate = 0.9;
    double mutationRate = -1.0;  // < 0 means 1 / (r*c)
    std::size_t elitism = 1;
};

struct IcaParams {
    std::size_t imperialists = 10;
    double zeta = 0.1;           // weight of mean colony cost in empire cost
    double assimilation = 2.0;   // beta
    double deviationAngle = 0.785398163397448;  // gamma = pi/4
    double revolutionRate = 0.1;
    double revolutionFraction = 0.1;  // share of genes resampled in a revolution
};

struct GwoParams {
    double aStart = 2.0;
    double aEnd = 0.0;
};

struct MvoParams {
    double wepMin = 0.2;
    double wepMax = 1.0;
    double tdrExponent = 6.0;
    bool exchange = true;  // white/black hole transfers
};

struct MfoParams {
    double b = 1.0;
    double tMin = -1.0;
    double tMax = 1.0;
};

struct OptimizerConfig {
    std::size_t popSize = 100;
    std::size_t maxIters = 800;
    std::uint64_t seed = 1;
    std::optional<double> targetPower;  // early stop once reached (V_m*I_m)
    GaParams ga;
    IcaParams ica;
    GwoParams gwo;
    MvoParams mvo;
    MfoParams mfo;

    void validate() const {
        if (popSize < 4) throw std::invalid_argument("OptimizerConfig: popSize must be >= 4");
        if (ga.tournamentSize < 1) throw std::invalid_argument("OptimizerConfig: tournament size must be >= 1");
        if (ica.imperialists < 1 || ica.imperialists > popSize) {
            throw std::invalid_argument("OptimizerConfig: imperialist count must be in [1, popSize]");
        }
        if (!(mfo.b > 0.0)) throw std::invalid_argument("OptimizerConfig: MFO b must be > 0");
        if (!(mfo.tMin >= -1.0 && mfo.tMax <= 1.0 && mfo.tMin <= mfo.tMax)) {
            throw std::invalid_argument("OptimizerConfig: MFO t range must lie within [-1, 1]");
        }
        if (!(mvo.wepMin >= 0.0 && mvo.wepMax <= 1.0 && mvo.wepMin <= mvo.wepMax)) {
            throw std::invalid_argument("OptimizerConfig: MVO WEP range must lie within [0, 1]");
        }
        if (!(mvo.tdrExponent > 0.0)) throw std::invalid_argument("OptimizerConfig: MVO TDR exponent must be > 0");
    }
};

struct TraceRecord {
    std::size_t iteration = 0;
    double bestFitness = 0.0;
    Fixed bestPower;
};

struct ConvergenceTrace {
    std::vector<TraceRecord> records;  // iterations 1..n; the initial population counts toward iteration 1
    std::size_t firstBestIteration = 0;
    double wallTime = 0.0;  // seconds
    std::size_t evaluations = 0;
    bool stoppedEarly = false;

    [[nodiscard]] Fixed final_power() const { return records.empty() ? Fixed{} : records.back().bestPower; }
};

struct RunResult {
    Candidate best;       // lowest fitness seen
    Candidate bestPower;  // highest P_wb seen
    ConvergenceTrace trace;
};

/// Evaluates candidates against one field and keeps the two incumbents.
class Evaluator {
public:
    Evaluator(const IrradianceField& field, const FitnessWeights& weights)
        : field_(field), weights_(weights), currents_(field.rows()) {
        weights_.validate();
    }

    [[nodiscard]] std::size_t rows() const { return field_.rows(); }
    [[nodiscard]] std::size_t cols() const { return field_.cols(); }
    [[nodiscard]] std::size_t dims() const { return field_.rows() * field_.cols(); }

    void evaluate(Candidate& c) {
        decode_into(c.keys, rows(), cols(), c.cfg);
        std::fill(currents_.begin(), currents_.end(), Fixed{});
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t j = 0; j < cols(); ++j) currents_[i] += field_.at(c.cfg.at(i, j), j);
        const Fixed sum = sum_p(currents_);
        const Fixed cT = c_t(currents_);
        c.power = array_power_wb(currents_);
        c.breakdown = compose_fitness(sum, cT, c.power, weights_);
        ++evaluations_;
        if (!haveBest_ || c.fitness() < best_.fitness()) best_ = c;
        if (!haveBest_ || c.power > bestPower_.power) bestPower_ = c;
        haveBest_ = true;
    }

    Candidate random_candidate(Rng& rng) {
        Candidate c;
        c.keys.resize(dims());
        for (double& k : c.keys) k = rng.uniform();
        evaluate(c);
        return c;
    }

    [[nodiscard]] const Candidate& best() const { return best_; }
    [[nodiscard]] const Candidate& best_power() const { return bestPower_; }
    [[nodiscard]] std::size_t evaluations() const { return evaluations_; }

private:
    const IrradianceField& field_;
    FitnessWeights weights_;
    std::vector<Fixed> currents_;
    Candidate best_;
    Candidate bestPower_;
    bool haveBest_ = false;
    std::size_t evaluations_ = 0;
};

/// Shared run loop: initial population, then `step(iteration)` for each
/// iteration with trace bookkeeping, early stop and wall-clock timing.
template <typename Init, typename Step>
RunResult run_loop(const IrradianceField& field, const FitnessWeights& weights, const OptimizerConfig& cfg,
                   Init&& init, Step&& step) {
    cfg.validate();
    Evaluator eval(field, weights);
    Rng rng(cfg.seed);
    RunResult result;
    auto& trace = result.trace;
    trace.records.reserve(cfg.maxIters);

    const auto start = std::chrono::steady_clock::now();
    init(eval, rng);
    for (std::size_t it = 1; it <= cfg.maxIters; ++it) {
        step(eval, rng, it);
        trace.records.push_back({it, eval.best().fitness(), eval.best_power().power});
        if (cfg.targetPower && eval.best_power().power.to_double() >= *cfg.targetPower - 1e-12) {
            trace.stoppedEarly = it < cfg.maxIters;
            break;
        }
    }
    trace.wallTime = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    trace.evaluations = eval.evaluations();
    const Fixed finalPower = eval.best_power().power;
    for (const auto& rec : trace.records) {
        if (rec.bestPower == finalPower) {
            trace.firstBestIteration = rec.iteration;
            break;
        }
    }
    result.best = eval.best();
    result.bestPower = eval.best_power();
    return result;
}

inline void sort_by_fitness(std::vector<Candidate>& pop) {
    std::stable_sort(pop.begin(), pop.end(),
                     [](const Candidate& a, const Candidate& b) { return a.fitness() < b.fitness(); });
}

}  // namespace pvreconf::opt
