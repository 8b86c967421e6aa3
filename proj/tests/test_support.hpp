#pragma once

#include <vector>

#include "pvreconf/field.hpp"
#include "pvreconf/random.hpp"

namespace pvreconf::testing {

/// Field with strengths drawn from {lo, lo+0.1, ..., hi} (tenths).
inline IrradianceField random_field(Rng& rng, std::size_t rows, std::size_t cols, int loTenths = 2, int hiTenths = 9) {
    std::vector<Fixed> v(rows * cols);
    const auto span = static_cast<std::uint64_t>(hiTenths - loTenths + 1);
    for (auto& k : v) k = Fixed::from_raw((loTenths + static_cast<int>(rng.below(span))) * 100);
    return {rows, cols, std::move(v)};
}

/// Uniformly random column permutations (Fisher-Yates per column).
inline Reconfiguration random_cfg(Rng& rng, std::size_t rows, std::size_t cols) {
    std::vector<Reconfiguration::Index> a(rows * cols);
    for (std::size_t j = 0; j < cols; ++j) {
        std::vector<Reconfiguration::Index> col(rows);
        for (std::size_t i = 0; i < rows; ++i) col[i] = static_cast<Reconfiguration::Index>(i);
        for (std::size_t i = rows; i > 1; --i) std::swap(col[i - 1], col[rng.below(i)]);
        for (std::size_t i = 0; i < rows; ++i) a[i * cols + j] = col[i];
    }
    return {rows, cols, std::move(a)};
}

// 0-based physical rows; row i of the grid is electrical row i.

/// Arrangement with row currents (6.6, 6.3, 6.4, 6.6, 6.3, 6.3, 6.5, 6.3, 6.6) on the short-wide case.
inline const std::vector<std::vector<int>> kShortWidePublished = {
    {7, 3, 1, 2, 6, 0, 2, 0, 6}, {1, 6, 7, 7, 1, 5, 4, 2, 8}, {3, 0, 3, 8, 7, 1, 5, 8, 4},
    {2, 4, 6, 4, 8, 3, 8, 5, 2}, {0, 8, 0, 5, 0, 7, 0, 1, 7}, {6, 1, 2, 6, 5, 4, 3, 7, 0},
    {5, 5, 5, 0, 3, 2, 6, 3, 3}, {8, 2, 8, 3, 2, 8, 1, 6, 1}, {4, 7, 4, 1, 4, 6, 7, 4, 5}};

/// Balanced arrangement reaching the short-wide upper bound (min row 6.4 -> 57.6).
inline const std::vector<std::vector<int>> kShortWideOptimal = {
    {6, 5, 7, 5, 7, 3, 0, 5, 3}, {3, 4, 1, 7, 6, 0, 7, 1, 0}, {1, 3, 6, 8, 5, 8, 4, 3, 5},
    {5, 7, 5, 2, 4, 5, 3, 0, 6}, {2, 0, 2, 1, 8, 6, 1, 6, 1}, {8, 8, 8, 4, 2, 1, 2, 2, 8},
    {7, 2, 3, 0, 1, 4, 8, 4, 7}, {0, 6, 0, 3, 3, 2, 6, 7, 2}, {4, 1, 4, 6, 0, 7, 5, 8, 4}};

/// long-narrow, min row 7.1 -> 63.9.
inline const std::vector<std::vector<int>> kLongNarrowBest = {
    {6, 0, 7, 6, 7, 4, 7, 0, 0}, {5, 1, 2, 2, 5, 1, 6, 5, 1}, {0, 8, 6, 0, 3, 8, 8, 7, 4},
    {2, 5, 3, 5, 2, 5, 0, 1, 7}, {8, 7, 1, 1, 1, 6, 4, 3, 8}, {1, 4, 5, 3, 6, 3, 5, 2, 6},
    {3, 2, 8, 8, 4, 2, 2, 6, 2}, {4, 3, 0, 4, 0, 0, 1, 4, 5}, {7, 6, 4, 7, 8, 7, 3, 8, 3}};

/// short-narrow, min row 7.3 -> 65.7.
inline const std::vector<std::vector<int>> kShortNarrowBest = {
    {6, 5, 7, 0, 7, 0, 7, 0, 7}, {1, 0, 2, 2, 6, 7, 4, 1, 3}, {0, 1, 0, 4, 5, 8, 8, 3, 5},
    {5, 7, 3, 5, 3, 5, 0, 7, 6}, {3, 8, 1, 1, 1, 4, 5, 6, 1}, {8, 4, 5, 3, 2, 1, 1, 2, 8},
    {7, 2, 8, 6, 4, 2, 2, 4, 0}, {4, 3, 4, 8, 0, 6, 3, 5, 2}, {2, 6, 6, 7, 8, 3, 6, 8, 4}};

/// long-wide, min row 5.5 -> 49.5.
inline const std::vector<std::vector<int>> kLongWideBest = {
    {6, 3, 5, 4, 7, 4, 7, 1, 3}, {1, 7, 2, 6, 6, 0, 4, 6, 7}, {7, 1, 0, 0, 4, 8, 8, 3, 5},
    {5, 5, 3, 5, 5, 5, 1, 0, 6}, {8, 8, 1, 1, 1, 7, 2, 5, 1}, {3, 2, 7, 3, 3, 3, 3, 2, 8},
    {0, 4, 8, 8, 2, 2, 5, 4, 0}, {4, 0, 4, 7, 0, 6, 6, 7, 2}, {2, 6, 6, 2, 8, 1, 0, 8, 4}};

}  // namespace pvreconf::testing
