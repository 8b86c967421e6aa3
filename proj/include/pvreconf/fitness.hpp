#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "csv.hpp"

#include "array.hpp"
#include "field.hpp"

namespace pvreconf {

/// Weights of the minimized objective
///   fitness = mf / (sumP + wT / (cT + epsC) + pWb * wWb)
/// in V_m = I_m = 1 units.
struct FitnessWeights {
    double mf = 1000.0;
    double wT = 1.0;
    double wWb = 1.0;
    double epsC = 1e-9;

    void validate() const {
        if (!std::isfinite(mf) || !(mf > 0.0)) throw std::invalid_argument("FitnessWeights: mf must be > 0");
        if (!std::isfinite(wT) || !(wT >= 0.0)) throw std::invalid_argument("FitnessWeights: wT must be >= 0");
        if (!std::isfinite(wWb) || !(wWb >= 0.0)) throw std::invalid_argument("FitnessWeights: wWb must be >= 0");
        if (!std::isfinite(epsC) || !(epsC > 0.0)) throw std::invalid_argument("FitnessWeights: epsC must be > 0");
    }
};

/// "mf,wT,wWb" (epsC keeps its default).
inline FitnessWeights parse_weights(std::string_view text) {
    const auto parts = csv::split_line(text);
    if (parts.size() != 3) throw std::invalid_argument("weights: expected mf,wT,wWb");
    FitnessWeights w;
    w.mf = csv::parse_double(parts[0]);
    w.wT = csv::parse_double(parts[1]);
    w.wWb = csv::parse_double(parts[2]);
    w.validate();
    return w;
}

struct FitnessBreakdown {
    double sumP = 0.0;  // sum_i I_i * V_m
    double cT = 0.0;    // sum_i |I_ref - I_i|, I_ref = max row current
    double pWb = 0.0;   // min_i I_i * r * V_m
    double fitness = 0.0;
};

/// Every row voltage is taken as V_m, so this is sum_i I_i.
inline Fixed sum_p(const std::vector<Fixed>& currents) {
    if (currents.empty()) throw std::invalid_argument("sum_p: no rows");
    Fixed s;
    for (Fixed c : currents) s += c;
    return s;
}

/// Row-balance deviation against the strongest row of the candidate.
inline Fixed c_t(const std::vector<Fixed>& currents) {
    if (currents.empty()) throw std::invalid_argument("c_t: no rows");
    const Fixed ref = *std::max_element(currents.begin(), currents.end());
    Fixed s;
    for (Fixed c : currents) s += ref - c;
    return s;
}

inline FitnessBreakdown compose_fitness(Fixed sumP, Fixed cT, Fixed pWb, const FitnessWeights& w) {
    FitnessBreakdown b;
    b.sumP = sumP.to_double();
    b.cT = cT.to_double();
    b.pWb = pWb.to_double();
    const double denom = b.sumP + w.wT / (b.cT + w.epsC) + b.pWb * w.wWb;
    if (!(denom > 0.0) || !std::isfinite(denom)) {
        throw std::domain_error("fitness: non-positive denominator (check weights)");
    }
    b.fitness = w.mf / denom;
    return b;
}

inline FitnessBreakdown evaluate_currents(const std::vector<Fixed>& currents, const FitnessWeights& w) {
    return compose_fitness(sum_p(currents), c_t(currents), array_power_wb(currents), w);
}

/// Lower is better.
inline FitnessBreakdown evaluate(const IrradianceField& field, const Reconfiguration& cfg, const FitnessWeights& w) {
    return evaluate_currents(row_currents(field, cfg), w);
}

}  // namespace pvreconf
