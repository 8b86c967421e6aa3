#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "field.hpp"
#include "fixed.hpp"

// Array quantities in idealized nominal units: currents in multiples of I_m,
// voltages in multiples of V_m, powers in multiples of V_m*I_m.

namespace pvreconf {

/// I_i = sum_j k_ij (modules of a row are in parallel).
inline std::vector<Fixed> row_currents(const IrradianceField& field) {
    std::vector<Fixed> out(field.rows());
    for (std::size_t i = 0; i < field.rows(); ++i)
        for (std::size_t j = 0; j < field.cols(); ++j) out[i] += field.at(i, j);
    return out;
}

/// Row currents of the reconfigured array without materializing the effective field.
inline std::vector<Fixed> row_currents(const IrradianceField& field, const Reconfiguration& cfg) {
    require_same_shape(field, cfg);
    cfg.validate();
    std::vector<Fixed> out(field.rows());
    for (std::size_t i = 0; i < field.rows(); ++i)
        for (std::size_t j = 0; j < field.cols(); ++j) out[i] += field.at(cfg.at(i, j), j);
    return out;
}

/// Adjacent-row current mismatch I_i - I_{i+1}; all zero when the series
/// stack carries a common current without bypass.
inline std::vector<Fixed> kcl_residual(const std::vector<Fixed>& currents) {
    if (currents.size() < 2) throw std::invalid_argument("kcl_residual: need at least two rows");
    std::vector<Fixed> out;
    out.reserve(currents.size() - 1);
    for (std::size_t i = 0; i + 1 < currents.size(); ++i) out.push_back(currents[i] - currents[i + 1]);
    return out;
}

/// Power with every row in the series stack: min_i I_i * r (V_m*I_m).
inline Fixed array_power_wb(const std::vector<Fixed>& currents) {
    if (currents.empty()) throw std::invalid_argument("array_power_wb: no rows");
    return *std::min_element(currents.begin(), currents.end()) * static_cast<std::int64_t>(currents.size());
}

struct GpTableRow {
    std::size_t row = 0;  // electrical row index (0-based)
    Fixed current;
    std::size_t activeRows = 0;
    std::optional<Fixed> power;  // only on the first row of each current level
};

struct GpTable {
    std::vector<GpTableRow> rows;  // ascending-current bypass order
    Fixed globalPeak;
    std::size_t peakActiveRows = 0;
    Fixed peakCurrent;
};

/// Bypass table: rows are removed from the series stack in ascending order of
/// current. At each distinct level I, the surviving rows (I_i >= I) operate at
/// I, giving P = I * #active. Ties at the lowest level keep the higher row
/// index first, mirroring the usual tabulation (R9, R8, R7, ...).
inline GpTable gp_table(const std::vector<Fixed>& currents) {
    if (currents.empty()) throw std::invalid_argument("gp_table: no rows");
    std::vector<std::size_t> order(currents.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (currents[a] != currents[b]) return currents[a] < currents[b];
        return a > b;
    });
    GpTable table;
    bool havePeak = false;
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        GpTableRow row;
        row.row = order[pos];
        row.current = currents[order[pos]];
        row.activeRows = order.size() - pos;
        const bool newLevel = pos == 0 || currents[order[pos - 1]] != row.current;
        if (newLevel) {
            const Fixed p = row.current * static_cast<std::int64_t>(row.activeRows);
            row.power = p;
            if (!havePeak || p > table.globalPeak) {
                table.globalPeak = p;
                table.peakActiveRows = row.activeRows;
                table.peakCurrent = row.current;
                havePeak = true;
            }
        }
        table.rows.push_back(row);
    }
    return table;
}

}  // namespace pvreconf
