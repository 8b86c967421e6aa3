#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace pvreconf::pv {

inline constexpr double kElectronCharge = 1.602176634e-19;  // C
inline constexpr double kBoltzmann = 1.380649e-23;          // J/K
inline constexpr double kCelsiusOffset = 273.15;

/// Datasheet constants of one module at standard test conditions.
struct ModuleSpec {
    double pRated = 80.0;  // W
    double vOc = 21.24;    // V
    double iSc = 4.74;     // A
    double vNom = 17.64;   // V_m
    double iNom = 4.54;    // I_m
    double g0 = 1000.0;    // W/m^2
    double tStd = 25.0;    // degC

    [[nodiscard]] double t0_kelvin() const { return tStd + kCelsiusOffset; }

    void validate() const {
        const bool ok = std::isfinite(pRated) && std::isfinite(vOc) && std::isfinite(iSc) &&
                        std::isfinite(vNom) && std::isfinite(iNom) && std::isfinite(g0) &&
                        std::isfinite(tStd);
        if (!ok) throw std::invalid_argument("ModuleSpec: non-finite field");
        if (!(pRated > 0.0)) throw std::invalid_argument("ModuleSpec: pRated must be > 0");
        if (!(vNom > 0.0 && vNom < vOc)) throw std::invalid_argument("ModuleSpec: need 0 < vNom < vOc");
        if (!(iNom > 0.0 && iNom < iSc)) throw std::invalid_argument("ModuleSpec: need 0 < iNom < iSc");
        if (!(g0 > 0.0)) throw std::invalid_argument("ModuleSpec: g0 must be > 0");
        if (!(t0_kelvin() > 0.0)) throw std::invalid_argument("ModuleSpec: tStd below absolute zero");
    }
};

/// Single-diode parameters. Ideal mode is rs == 0 and rsh == +inf.
struct CellParams {
    double i0 = 0.0;
    double n = 1.0;
    double q = kElectronCharge;
    double kB = kBoltzmann;
    double t = 298.15;
    double t0 = 298.15;
    double rs = 0.0;
    double rsh = std::numeric_limits<double>::infinity();
    double alpha1 = 0.0;

    [[nodiscard]] bool ideal() const { return rs == 0.0 && std::isinf(rsh); }
    [[nodiscard]] double thermal_voltage(double tKelvin) const { return n * kB * tKelvin / q; }

    void validate() const {
        if (!(i0 > 0.0) || !std::isfinite(i0)) throw std::invalid_argument("CellParams: i0 must be > 0");
        if (!(n > 0.0)) throw std::invalid_argument("CellParams: n must be > 0");
        if (!(t > 0.0) || !(t0 > 0.0)) throw std::invalid_argument("CellParams: temperatures must be > 0");
        if (!(rs >= 0.0) || !std::isfinite(rs)) throw std::invalid_argument("CellParams: rs must be >= 0");
        if (!(rsh > 0.0)) throw std::invalid_argument("CellParams: rsh must be > 0");
        if (!(thermal_voltage(t) > 0.0)) throw std::invalid_argument("CellParams: thermal voltage <= 0");
    }
};

struct IVPoint {
    double v = 0.0;
    double i = 0.0;
    double p = 0.0;
};

/// Raised when the implicit current solve does not reach tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what + " (residual " + std::to_string(residual) + " A)"), residual_(residual) {}
    [[nodiscard]] double residual() const { return residual_; }

private:
    double residual_;
};

inline void require_finite(double x, const char* name) {
    if (!std::isfinite(x)) throw std::invalid_argument(std::string("non-finite ") + name);
}

/// I_ph = I_sc (G/G0) (1 + alpha1 (T - T0)) (Rs + Rsh) / Rsh
inline double photocurrent(const ModuleSpec& spec, const CellParams& params, double g, double tKelvin) {
    require_finite(g, "irradiance");
    require_finite(tKelvin, "temperature");
    if (g < 0.0) throw std::invalid_argument("photocurrent: irradiance must be >= 0");
    const double resistanceFactor = std::isinf(params.rsh) ? 1.0 : (params.rs + params.rsh) / params.rsh;
    return spec.iSc * (g / spec.g0) * (1.0 + params.alpha1 * (tKelvin - params.t0)) * resistanceFactor;
}

/// Ideal-mode parameters with I0 pinned by the open-circuit condition, so the
/// curve passes through (0, I_sc) and (V_oc, 0) at G0, T0.
inline CellParams calibrate(const ModuleSpec& spec, double n) {
    spec.validate();
    if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("calibrate: n must be > 0");
    CellParams p;
    p.n = n;
    p.t = spec.t0_kelvin();
    p.t0 = spec.t0_kelvin();
    const double vt = p.thermal_voltage(p.t);
    p.i0 = spec.iSc / std::expm1(spec.vOc / vt);
    p.validate();
    return p;
}

namespace detail {

inline double explicit_current(const CellParams& p, double iph, double v, double tKelvin) {
    return iph - p.i0 * std::expm1(v / p.thermal_voltage(tKelvin));
}

/// Residual of the implicit single-diode equation; strictly decreasing in i.
inline double implicit_residual(const CellParams& p, double iph, double v, double i, double tKelvin) {
    const double vd = v + p.rs * i;
    const double shunt = std::isinf(p.rsh) ? 0.0 : vd / p.rsh;
    return iph - p.i0 * std::expm1(vd / p.thermal_voltage(tKelvin)) - shunt - i;
}

}  // namespace detail

inline constexpr double kCurrentTolerance = 1e-9;
inline constexpr int kMaxSolveIterations = 100;

/// Bisection on the implicit equation regardless of mode, bracketed on
/// [0, I_ph]. Where the diode would drive the current negative (v beyond the
/// open-circuit voltage at this irradiance) the module delivers 0.
inline double i_at_voltage_implicit(const CellParams& params, const ModuleSpec& spec, double g, double tKelvin,
                                    double v) {
    require_finite(v, "voltage");
    const double iph = photocurrent(spec, params, g, tKelvin);
    double hi = iph;
    double lo = 0.0;
    if (detail::implicit_residual(params, iph, v, lo, tKelvin) <= 0.0) return 0.0;
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < kMaxSolveIterations; ++it) {
        mid = 0.5 * (lo + hi);
        const double f = detail::implicit_residual(params, iph, v, mid, tKelvin);
        if (f > 0.0) lo = mid;
        else hi = mid;
        if (hi - lo < kCurrentTolerance) return 0.5 * (lo + hi);
    }
    throw ConvergenceError("i_at_voltage: bisection did not converge",
                           detail::implicit_residual(params, iph, v, mid, tKelvin));
}

/// Terminal current at voltage v. Explicit closed form in ideal mode,
/// bracketed solve otherwise. Valid for 0 <= v <= 1.05 V_oc.
inline double i_at_voltage(const CellParams& params, const ModuleSpec& spec, double g, double tKelvin, double v) {
    require_finite(v, "voltage");
    if (v < 0.0 || v > spec.vOc * 1.05) throw std::invalid_argument("i_at_voltage: v outside [0, 1.05 V_oc]");
    if (params.ideal()) {
        return std::max(0.0, detail::explicit_current(params, photocurrent(spec, params, g, tKelvin), v, tKelvin));
    }
    return i_at_voltage_implicit(params, spec, g, tKelvin, v);
}

/// nPoints samples with v uniform on [0, V_oc].
inline std::vector<IVPoint> iv_curve(const CellParams& params, const ModuleSpec& spec, double g, double tKelvin,
                                     std::size_t nPoints) {
    if (nPoints < 2) throw std::invalid_argument("iv_curve: need at least two points");
    std::vector<IVPoint> out;
    out.reserve(nPoints);
    for (std::size_t k = 0; k < nPoints; ++k) {
        const double v = k + 1 == nPoints ? spec.vOc
                                          : spec.vOc * static_cast<double>(k) / static_cast<double>(nPoints - 1);
        const double i = i_at_voltage(params, spec, g, tKelvin, v);
        out.push_back({v, i, v * i});
    }
    return out;
}

/// Ideality factor for which the calibrated ideal model passes through the
/// nominal point (V_m, I_m). Solved by bisection on n; the current at V_m
/// decreases as n grows (the knee softens).
inline double fit_ideality(const ModuleSpec& spec) {
    spec.validate();
    const double t0 = spec.t0_kelvin();
    auto currentAtNominal = [&](double n) {
        const CellParams p = calibrate(spec, n);
        return detail::explicit_current(p, spec.iSc, spec.vNom, t0);
    };
    // Lower end keeps V_oc / (n V_t) well inside the double range of expm1.
    double lo = spec.vOc / (600.0 * kBoltzmann * t0 / kElectronCharge);
    double hi = 1000.0;
    if (!(currentAtNominal(lo) > spec.iNom && currentAtNominal(hi) < spec.iNom)) {
        throw std::invalid_argument("fit_ideality: nominal point not reachable by an ideal single-diode model");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (currentAtNominal(mid) > spec.iNom) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// Ideal-mode calibration with the ideality factor fitted to the nominal point.
inline CellParams calibrate(const ModuleSpec& spec) { return calibrate(spec, fit_ideality(spec)); }

/// Golden-section search for the maximum power point of the calibrated curve.
inline IVPoint max_power_point(const CellParams& params, const ModuleSpec& spec, double g, double tKelvin) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = 0.0;
    double b = spec.vOc;
    auto power = [&](double v) { return v * i_at_voltage(params, spec, g, tKelvin, v); };
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    double fc = power(c);
    double fd = power(d);
    for (int it = 0; it < 200 && b - a > 1e-10; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = power(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = power(d);
        }
    }
    const double v = 0.5 * (a + b);
    const double i = i_at_voltage(params, spec, g, tKelvin, v);
    return {v, i, v * i};
}

}  // namespace pvreconf::pv
