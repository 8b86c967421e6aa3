#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fixed.hpp"

namespace pvreconf {

/// r x c grid of irradiance strengths k = G / G0, row-major.
class IrradianceField {
public:
    IrradianceField() = default;

    IrradianceField(std::size_t rows, std::size_t cols, std::vector<Fixed> values)
        : rows_(rows), cols_(cols), k_(std::move(values)) {
        if (rows_ == 0 || cols_ == 0) throw std::invalid_argument("IrradianceField: need r >= 1 and c >= 1");
        if (k_.size() != rows_ * cols_) throw std::invalid_argument("IrradianceField: value count != r*c");
        for (Fixed v : k_) {
            if (v < Fixed{}) throw std::invalid_argument("IrradianceField: negative irradiance strength");
        }
    }

    static IrradianceField uniform(std::size_t rows, std::size_t cols, Fixed k) {
        return {rows, cols, std::vector<Fixed>(rows * cols, k)};
    }

    /// From nested rows of strengths (dimensionless). Rows must be equal length.
    static IrradianceField from_rows(const std::vector<std::vector<double>>& rows) {
        if (rows.empty() || rows.front().empty()) throw std::invalid_argument("IrradianceField: empty grid");
        const std::size_t c = rows.front().size();
        std::vector<Fixed> values;
        values.reserve(rows.size() * c);
        for (const auto& row : rows) {
            if (row.size() != c) throw std::invalid_argument("IrradianceField: ragged rows");
            for (double v : row) values.push_back(Fixed::from_double(v));
        }
        return {rows.size(), c, std::move(values)};
    }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] Fixed at(std::size_t row, std::size_t col) const { return k_[row * cols_ + col]; }
    [[nodiscard]] const std::vector<Fixed>& values() const { return k_; }

    friend bool operator==(const IrradianceField&, const IrradianceField&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Fixed> k_;
};

/// assign(i, j) is the physical row of the module that occupies electrical
/// row i of column j. Every column is a permutation of 0..r-1.
class Reconfiguration {
public:
    using Index = std::uint16_t;

    Reconfiguration() = default;

    Reconfiguration(std::size_t rows, std::size_t cols, std::vector<Index> assign)
        : rows_(rows), cols_(cols), assign_(std::move(assign)) {
        validate();
    }

    /// The TCT baseline.
    static Reconfiguration identity(std::size_t rows, std::size_t cols) {
        std::vector<Index> a(rows * cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] = static_cast<Index>(i);
        return {rows, cols, std::move(a)};
    }

    static Reconfiguration from_rows(const std::vector<std::vector<int>>& rows) {
        if (rows.empty()) throw std::invalid_argument("Reconfiguration: empty grid");
        const std::size_t c = rows.front().size();
        std::vector<Index> a;
        a.reserve(rows.size() * c);
        for (const auto& row : rows) {
            if (row.size() != c) throw std::invalid_argument("Reconfiguration: ragged rows");
            for (int v : row) {
                if (v < 0) throw std::invalid_argument("Reconfiguration: negative row index");
                a.push_back(static_cast<Index>(v));
            }
        }
        return {rows.size(), c, std::move(a)};
    }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] std::size_t at(std::size_t row, std::size_t col) const { return assign_[row * cols_ + col]; }
    [[nodiscard]] const std::vector<Index>& values() const { return assign_; }

    /// Unchecked write access for decoders that construct permutations directly.
    std::vector<Index>& mutable_values() { return assign_; }
    void reshape_unchecked(std::size_t rows, std::size_t cols) {
        rows_ = rows;
        cols_ = cols;
        assign_.resize(rows * cols);
    }

    [[nodiscard]] bool is_valid() const {
        if (rows_ == 0 || cols_ == 0 || assign_.size() != rows_ * cols_) return false;
        std::vector<char> seen(rows_);
        for (std::size_t j = 0; j < cols_; ++j) {
            std::fill(seen.begin(), seen.end(), 0);
            for (std::size_t i = 0; i < rows_; ++i) {
                const std::size_t p = assign_[i * cols_ + j];
                if (p >= rows_ || seen[p]) return false;
                seen[p] = 1;
            }
        }
        return true;
    }

    void validate() const {
        if (!is_valid()) throw std::invalid_argument("Reconfiguration: a column is not a permutation of 0..r-1");
    }

    friend bool operator==(const Reconfiguration&, const Reconfiguration&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Index> assign_;
};

inline void require_same_shape(const IrradianceField& field, const Reconfiguration& cfg) {
    if (field.rows() != cfg.rows() || field.cols() != cfg.cols()) {
        throw std::invalid_argument("field/reconfiguration dimension mismatch");
    }
}

/// out(i, j) = field(cfg(i, j), j)
inline IrradianceField effective_field(const IrradianceField& field, const Reconfiguration& cfg) {
    require_same_shape(field, cfg);
    cfg.validate();
    std::vector<Fixed> out(field.rows() * field.cols());
    for (std::size_t i = 0; i < field.rows(); ++i)
        for (std::size_t j = 0; j < field.cols(); ++j) out[i * field.cols() + j] = field.at(cfg.at(i, j), j);
    return {field.rows(), field.cols(), std::move(out)};
}

inline Fixed total_insolation(const IrradianceField& field) {
    return std::accumulate(field.values().begin(), field.values().end(), Fixed{});
}

/// Parses a shading-pattern CSV: r lines of c comma-separated irradiances in
/// W/m^2, each divided by g0. Blank lines and lines starting with '#' are skipped.
inline IrradianceField parse_pattern_csv(std::istream& in, double g0 = 1000.0) {
    if (!(g0 > 0.0)) throw std::invalid_argument("parse_pattern_csv: g0 must be > 0");
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            std::size_t used = 0;
            double g = 0.0;
            try {
                g = std::stod(cell, &used);
            } catch (const std::exception&) {
                throw std::invalid_argument("pattern line " + std::to_string(lineNo) + ": bad number '" + cell + "'");
            }
            if (cell.find_first_not_of(" \t", used) != std::string::npos) {
                throw std::invalid_argument("pattern line " + std::to_string(lineNo) + ": bad number '" + cell + "'");
            }
            if (!std::isfinite(g) || g < 0.0) {
                throw std::invalid_argument("pattern line " + std::to_string(lineNo) + ": irradiance must be finite and >= 0");
            }
            row.push_back(g / g0);
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw std::invalid_argument("pattern line " + std::to_string(lineNo) + ": column count differs");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument("pattern: no rows");
    return IrradianceField::from_rows(rows);
}

inline IrradianceField load_pattern_csv(const std::string& path, double g0 = 1000.0) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open pattern file '" + path + "'");
    return parse_pattern_csv(in, g0);
}

}  // namespace pvreconf
