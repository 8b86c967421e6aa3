#pragma once

#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "optimizers/common.hpp"
#include "optimizers/ga.hpp"
#include "optimizers/gwo.hpp"
#include "optimizers/ica.hpp"
#include "optimizers/mfo.hpp"
#include "optimizers/mvo.hpp"

namespace pvreconf::opt {

enum class Algorithm { GA, ICA, GWO, MVO, MFO };

inline constexpr std::array<Algorithm, 5> kAllAlgorithms = {Algorithm::GA, Algorithm::ICA, Algorithm::GWO,
                                                            Algorithm::MFO, Algorithm::MVO};

inline std::string_view name(Algorithm a) {
    switch (a) {
        case Algorithm::GA: return "ga";
        case Algorithm::ICA: return "ica";
        case Algorithm::GWO: return "gwo";
        case Algorithm::MVO: return "mvo";
        case Algorithm::MFO: return "mfo";
    }
    return "?";
}

inline Algorithm parse_algorithm(std::string_view s) {
    for (Algorithm a : kAllAlgorithms) {
        if (s == name(a)) return a;
    }
    throw std::invalid_argument("unknown algorithm '" + std::string(s) + "' (expected ga|ica|gwo|mvo|mfo)");
}

/// "all" or a comma-separated list.
inline std::vector<Algorithm> parse_algorithm_list(std::string_view s) {
    if (s == "all") return {kAllAlgorithms.begin(), kAllAlgorithms.end()};
    std::vector<Algorithm> out;
    while (!s.empty()) {
        const auto comma = s.find(',');
        out.push_back(parse_algorithm(s.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    if (out.empty()) throw std::invalid_argument("empty algorithm list");
    return out;
}

inline RunResult run(Algorithm a, const IrradianceField& field, const FitnessWeights& weights,
                     const OptimizerConfig& cfg) {
    switch (a) {
        case Algorithm::GA: return run_ga(field, weights, cfg);
        case Algorithm::ICA: return run_ica(field, weights, cfg);
        case Algorithm::GWO: return run_gwo(field, weights, cfg);
        case Algorithm::MVO: return run_mvo(field, weights, cfg);
        case Algorithm::MFO: return run_mfo(field, weights, cfg);
    }
    throw std::logic_error("unreachable");
}

/// Expected time to reach the best power:
///   (mean wall time for maxIters iterations / maxIters) * mean first-best iteration.
inline double mean_time_metric(double meanWallTime, std::size_t maxIters, double meanFirstBestIteration) {
    if (maxIters == 0) throw std::invalid_argument("mean_time_metric: maxIters must be >= 1");
    return meanWallTime / static_cast<double>(maxIters) * meanFirstBestIteration;
}

/// Same metric over a set of completed runs.
inline double mean_time_metric(std::span<const ConvergenceTrace> traces, std::size_t maxIters) {
    if (traces.empty()) throw std::invalid_argument("mean_time_metric: need at least one run");
    double time = 0.0;
    double iters = 0.0;
    for (const auto& t : traces) {
        time += t.wallTime;
        iters += static_cast<double>(t.firstBestIteration);
    }
    const double n = static_cast<double>(traces.size());
    return mean_time_metric(time / n, maxIters, iters / n);
}

}  // namespace pvreconf::opt
