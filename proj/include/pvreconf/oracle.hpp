#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "array.hpp"
#include "field.hpp"
#include "fitness.hpp"

namespace pvreconf {

class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(std::uint64_t required, std::uint64_t budget)
        : std::runtime_error("oracle: " + (required == std::numeric_limits<std::uint64_t>::max()
                                               ? std::string("more than 2^64")
                                               : std::to_string(required)) +
                             " states exceed budget of " + std::to_string(budget)),
          required_(required),
          budget_(budget) {}
    [[nodiscard]] std::uint64_t required() const { return required_; }
    [[nodiscard]] std::uint64_t budget() const { return budget_; }

private:
    std::uint64_t required_;
    std::uint64_t budget_;
};

struct OracleResult {
    Fixed bestPower;
    Reconfiguration bestCfg;
    FitnessBreakdown bestBreakdown;  // lowest fitness among the max-power configurations
    std::uint64_t optimaCount = 0;
    std::uint64_t statesExplored = 0;  // configurations covered, pruned subtrees included
    std::uint64_t leavesEvaluated = 0;
};

struct OracleOptions {
    bool symmetryReduce = true;
    std::uint64_t budget = 10'000'000;
    bool prune = true;
};

/// (r!)^(c - reduce), saturating at 2^64 - 1.
inline std::uint64_t oracle_state_count(std::size_t rows, std::size_t cols, bool symmetryReduce) {
    constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t fact = 1;
    for (std::size_t k = 2; k <= rows; ++k) {
        if (fact > kMax / k) return kMax;
        fact *= k;
    }
    const std::size_t freeCols = symmetryReduce ? cols - 1 : cols;
    std::uint64_t total = 1;
    for (std::size_t c = 0; c < freeCols; ++c) {
        if (fact != 0 && total > kMax / fact) return kMax;
        total *= fact;
    }
    return total;
}

namespace detail {

class OracleSearch {
public:
    OracleSearch(const IrradianceField& field, const FitnessWeights& weights, const OracleOptions& opts)
        : field_(field), weights_(weights), opts_(opts), rows_(field.rows()), cols_(field.cols()),
          currents_(rows_), perm_(cols_, std::vector<Reconfiguration::Index>(rows_)), remainingMax_(cols_ + 1) {
        for (std::size_t p = 0; p < rows_; ++p) factorial_ *= p + 1;
        // remainingMax_[j] = sum over columns >= j of that column's largest strength
        for (std::size_t j = cols_; j-- > 0;) {
            Fixed colMax;
            for (std::size_t p = 0; p < rows_; ++p) colMax = std::max(colMax, field_.at(p, j));
            remainingMax_[j] = remainingMax_[j + 1] + colMax;
        }
        total_ = sum_p(row_currents(field_));
        // row currents are integers in thousandths, so min <= floor(total / r)
        ceiling_ = Fixed::from_raw(total_.raw() / static_cast<std::int64_t>(rows_));
    }

    OracleResult run() {
        std::size_t startCol = 0;
        if (opts_.symmetryReduce) {
            for (std::size_t p = 0; p < rows_; ++p) {
                perm_[0][p] = static_cast<Reconfiguration::Index>(p);
                currents_[p] = field_.at(p, 0);
            }
            startCol = 1;
        }
        descend(startCol);
        OracleResult out = result_;
        std::vector<Reconfiguration::Index> flat(rows_ * cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) flat[i * cols_ + j] = bestPerm_[j][i];
        out.bestCfg = Reconfiguration(rows_, cols_, std::move(flat));
        return out;
    }

private:
    std::uint64_t subtree_size(std::size_t col) const {
        std::uint64_t n = 1;
        for (std::size_t c = col; c < cols_; ++c) n *= factorial_;
        return n;
    }

    void descend(std::size_t col) {
        if (col == cols_) {
            leaf();
            return;
        }
        if (opts_.prune && haveBest_) {
            // Every row ends at most at its partial current plus the remaining column maxima.
            const Fixed partialMin = *std::min_element(currents_.begin(), currents_.end());
            const Fixed bound = std::min(partialMin + remainingMax_[col], ceiling_);
            if (bound * static_cast<std::int64_t>(rows_) < result_.bestPower) {
                result_.statesExplored += subtree_size(col);
                return;
            }
        }
        auto& perm = perm_[col];
        for (std::size_t p = 0; p < rows_; ++p) perm[p] = static_cast<Reconfiguration::Index>(p);
        do {
            for (std::size_t i = 0; i < rows_; ++i) currents_[i] += field_.at(perm[i], col);
            descend(col + 1);
            for (std::size_t i = 0; i < rows_; ++i) currents_[i] -= field_.at(perm[i], col);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    void leaf() {
        ++result_.statesExplored;
        ++result_.leavesEvaluated;
        const Fixed power = array_power_wb(currents_);
        if (!haveBest_ || power > result_.bestPower) {
            haveBest_ = true;
            result_.bestPower = power;
            result_.optimaCount = 1;
            result_.bestBreakdown = evaluate_currents(currents_, weights_);
            bestPerm_ = perm_;
            if (opts_.symmetryReduce) {
                for (std::size_t p = 0; p < rows_; ++p) bestPerm_[0][p] = static_cast<Reconfiguration::Index>(p);
            }
        } else if (power == result_.bestPower) {
            ++result_.optimaCount;
            const FitnessBreakdown b = evaluate_currents(currents_, weights_);
            if (b.fitness < result_.bestBreakdown.fitness) {
                result_.bestBreakdown = b;
                bestPerm_ = perm_;
            }
        }
    }

    const IrradianceField& field_;
    FitnessWeights weights_;
    OracleOptions opts_;
    std::size_t rows_;
    std::size_t cols_;
    std::uint64_t factorial_ = 1;
    std::vector<Fixed> currents_;
    std::vector<std::vector<Reconfiguration::Index>> perm_;
    std::vector<std::vector<Reconfiguration::Index>> bestPerm_;
    std::vector<Fixed> remainingMax_;
    Fixed total_;
    Fixed ceiling_;
    bool haveBest_ = false;
    OracleResult result_;
};

}  // namespace detail

/// Exhaustive maximum-power search over all column permutations.
///
/// With symmetry reduction the first column is pinned to the identity:
/// relabelling electrical rows maps configurations onto configurations with
/// the same row-current multiset, so every optimum has a representative with
/// an identity first column. Subtrees whose optimistic bound is strictly below
/// the incumbent are skipped (ties are still enumerated so optimaCount is exact)
/// and counted in statesExplored.
inline OracleResult brute_force(const IrradianceField& field, const FitnessWeights& weights,
                                const OracleOptions& opts = {}) {
    weights.validate();
    const std::uint64_t states = oracle_state_count(field.rows(), field.cols(), opts.symmetryReduce);
    if (states > opts.budget) throw BudgetExceeded(states, opts.budget);
    return detail::OracleSearch(field, weights, opts).run();
}

}  // namespace pvreconf
