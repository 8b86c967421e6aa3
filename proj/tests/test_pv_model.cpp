#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "pvreconf/pv_model.hpp"

using namespace pvreconf::pv;
using Catch::Approx;

namespace {

const ModuleSpec kSpec{};

CellParams calibrated() { return calibrate(kSpec); }

}  // namespace

TEST_CASE("photocurrent scales with irradiance", "[pv]") {
    const auto p = calibrated();
    const double t0 = kSpec.t0_kelvin();
    REQUIRE(photocurrent(kSpec, p, 1000.0, t0) == Approx(4.74).margin(1e-12));
    REQUIRE(photocurrent(kSpec, p, 0.0, t0) == 0.0);
    REQUIRE(photocurrent(kSpec, p, 500.0, t0) == Approx(2.37).margin(1e-12));
}

TEST_CASE("photocurrent applies temperature and resistance factors", "[pv]") {
    auto p = calibrated();
    p.alpha1 = 0.001;
    p.rs = 0.5;
    p.rsh = 100.0;
    const double t = kSpec.t0_kelvin() + 10.0;
    REQUIRE(photocurrent(kSpec, p, 1000.0, t) == Approx(4.74 * 1.01 * 100.5 / 100.0));
}

TEST_CASE("photocurrent rejects bad inputs", "[pv]") {
    const auto p = calibrated();
    REQUIRE_THROWS_AS(photocurrent(kSpec, p, -1.0, 298.15), std::invalid_argument);
    REQUIRE_THROWS_AS(photocurrent(kSpec, p, std::numeric_limits<double>::quiet_NaN(), 298.15),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(photocurrent(kSpec, p, 1000.0, std::numeric_limits<double>::infinity()),
                      std::invalid_argument);
}

TEST_CASE("calibration pins the datasheet endpoints", "[pv]") {
    for (double n : {20.0, 44.0, 80.0}) {
        const auto p = calibrate(kSpec, n);
        const double t0 = kSpec.t0_kelvin();
        REQUIRE(p.ideal());
        REQUIRE(i_at_voltage(p, kSpec, 1000.0, t0, 0.0) == Approx(4.74).margin(1e-9));
        REQUIRE(std::abs(i_at_voltage(p, kSpec, 1000.0, t0, kSpec.vOc)) < 1e-9);
    }
    REQUIRE_THROWS_AS(calibrate(kSpec, 0.0), std::invalid_argument);
    ModuleSpec bad = kSpec;
    bad.vNom = 30.0;
    REQUIRE_THROWS_AS(calibrate(bad, 40.0), std::invalid_argument);
}

TEST_CASE("fitted ideality passes through the nominal point", "[pv]") {
    const double n = fit_ideality(kSpec);
    const auto p = calibrate(kSpec, n);
    const double t0 = kSpec.t0_kelvin();
    REQUIRE(i_at_voltage(p, kSpec, 1000.0, t0, kSpec.vNom) == Approx(kSpec.iNom).margin(1e-6));
    const double power = kSpec.vNom * i_at_voltage(p, kSpec, 1000.0, t0, kSpec.vNom);
    REQUIRE(std::abs(power - 80.0) / 80.0 < 0.05);
    const auto mpp = max_power_point(p, kSpec, 1000.0, t0);
    REQUIRE(std::abs(mpp.v - kSpec.vNom) / kSpec.vNom < 0.05);
    REQUIRE(std::abs(mpp.p - 80.0) / 80.0 < 0.05);
}

TEST_CASE("current is non-increasing in voltage and non-decreasing in irradiance", "[pv]") {
    const auto p = calibrated();
    const double t0 = kSpec.t0_kelvin();
    for (double g : {0.0, 200.0, 600.0, 1000.0}) {
        double prev = std::numeric_limits<double>::infinity();
        for (int k = 0; k <= 200; ++k) {
            const double v = kSpec.vOc * 1.05 * k / 200.0;
            const double i = i_at_voltage(p, kSpec, g, t0, v);
            REQUIRE(i <= prev);
            REQUIRE(i >= 0.0);
            prev = i;
        }
    }
    for (int k = 0; k < 50; ++k) {
        const double v = kSpec.vOc * k / 50.0;
        double prev = -1.0;
        for (double g = 0.0; g <= 1000.0; g += 100.0) {
            const double i = i_at_voltage(p, kSpec, g, t0, v);
            REQUIRE(i >= prev);
            prev = i;
        }
    }
}

TEST_CASE("explicit and implicit solutions agree in ideal mode", "[pv]") {
    const auto p = calibrated();
    const double t0 = kSpec.t0_kelvin();
    for (double g : {0.0, 350.0, 1000.0}) {
        for (int k = 0; k <= 60; ++k) {
            const double v = kSpec.vOc * 1.05 * k / 60.0;
            REQUIRE(std::abs(i_at_voltage(p, kSpec, g, t0, v) - i_at_voltage_implicit(p, kSpec, g, t0, v)) < 1e-9);
        }
    }
}

TEST_CASE("series and shunt resistance lower the curve", "[pv]") {
    auto p = calibrated();
    p.rs = 0.2;
    p.rsh = 300.0;
    const auto ideal = calibrated();
    const double t0 = kSpec.t0_kelvin();
    REQUIRE_FALSE(p.ideal());
    const double v = kSpec.vNom;
    REQUIRE(i_at_voltage(p, kSpec, 1000.0, t0, v) < i_at_voltage(ideal, kSpec, 1000.0, t0, v));
}

TEST_CASE("i_at_voltage enforces its voltage domain", "[pv]") {
    const auto p = calibrated();
    REQUIRE_THROWS_AS(i_at_voltage(p, kSpec, 1000.0, 298.15, -0.1), std::invalid_argument);
    REQUIRE_THROWS_AS(i_at_voltage(p, kSpec, 1000.0, 298.15, kSpec.vOc * 1.06), std::invalid_argument);
    REQUIRE_NOTHROW(i_at_voltage(p, kSpec, 1000.0, 298.15, kSpec.vOc * 1.05));
}

TEST_CASE("iv_curve samples endpoints and obeys p = v*i", "[pv]") {
    const auto p = calibrated();
    const double t0 = kSpec.t0_kelvin();
    const auto curve = iv_curve(p, kSpec, 1000.0, t0, 101);
    REQUIRE(curve.size() == 101);
    REQUIRE(curve.front().v == 0.0);
    REQUIRE(curve.front().i == Approx(4.74).margin(1e-9));
    REQUIRE(curve.front().p == 0.0);
    REQUIRE(curve.back().v == kSpec.vOc);
    REQUIRE(std::abs(curve.back().i) < 1e-6);
    double best = 0.0;
    for (const auto& pt : curve) {
        REQUIRE(pt.p == pt.v * pt.i);
        best = std::max(best, pt.p);
    }
    REQUIRE(best >= curve.front().p);
    REQUIRE(best >= curve.back().p);
    REQUIRE(std::abs(best - 80.0) / 80.0 < 0.05);

    for (const auto& pt : iv_curve(p, kSpec, 0.0, t0, 20)) REQUIRE(pt.i == 0.0);
    REQUIRE_THROWS_AS(iv_curve(p, kSpec, 1000.0, t0, 1), std::invalid_argument);
}

TEST_CASE("CellParams validation", "[pv]") {
    CellParams p;
    REQUIRE_THROWS_AS(p.validate(), std::invalid_argument);
    p.i0 = 1e-9;
    REQUIRE_NOTHROW(p.validate());
    p.rsh = 0.0;
    REQUIRE_THROWS_AS(p.validate(), std::invalid_argument);
}
