#pragma once

#include <fstream>
#include <ostream>
#include <string>

#include "array.hpp"
#include "csv.hpp"
#include "field.hpp"
#include "optimizers/common.hpp"
#include "pv_model.hpp"

namespace pvreconf::report {

/// Columns: row (1-based electrical row), current, activeRows, power (empty
/// for rows that share a current level with the row above).
inline void write_gp_table(std::ostream& os, const GpTable& table) {
    csv::Writer w(os);
    w.row("row", "current", "activeRows", "power");
    for (const auto& r : table.rows)
        w.row(r.row + 1, r.current, r.activeRows, r.power ? r.power->str() : std::string());
}

inline void write_convergence(std::ostream& os, const opt::ConvergenceTrace& trace) {
    csv::Writer w(os);
    w.row("iteration", "bestFitness", "bestPower");
    for (const auto& rec : trace.records) w.row(rec.iteration, rec.bestFitness, rec.bestPower);
}

/// 1-based physical row indices, one line per electrical row.
inline void write_assignment(std::ostream& os, const Reconfiguration& cfg) {
    for (std::size_t i = 0; i < cfg.rows(); ++i) {
        for (std::size_t j = 0; j < cfg.cols(); ++j) os << (j ? "," : "") << cfg.at(i, j) + 1;
        os << '\n';
    }
}

/// Strength grid in units of G0 (one line per row, no header) so the output
/// reads back through parse_pattern_csv with g0 = 1.
inline void write_field(std::ostream& os, const IrradianceField& field) {
    for (std::size_t i = 0; i < field.rows(); ++i) {
        for (std::size_t j = 0; j < field.cols(); ++j) os << (j ? "," : "") << field.at(i, j).str();
        os << '\n';
    }
}

inline void write_row_currents(std::ostream& os, const std::vector<Fixed>& currents) {
    csv::Writer w(os);
    w.row("row", "current");
    for (std::size_t i = 0; i < currents.size(); ++i) w.row(i + 1, currents[i]);
}

inline void write_iv_curve(std::ostream& os, const std::vector<pv::IVPoint>& curve) {
    csv::Writer w(os);
    w.row("v", "i", "p");
    for (const auto& pt : curve) w.row(pt.v, pt.i, pt.p);
}

inline std::ofstream open_output(const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    return os;
}

}  // namespace pvreconf::report
