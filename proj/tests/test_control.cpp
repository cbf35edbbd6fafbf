#include <doctest.h>

#include <cmath>

#include "thermex/control.hpp"

using namespace thermex;

TEST_CASE("pi: zero error with empty integral gives zero output") {
    PiConfig cfg;
    PiState st;
    CHECK(pi_step(cfg, st, cfg.setpoint, 900.0) == 0.0);
}

TEST_CASE("pi: large error saturates at 1") {
    PiConfig cfg;
    cfg.kp = 0.5;
    cfg.ki = 0.0;
    PiState st;
    CHECK(pi_step(cfg, st, cfg.setpoint - 10.0, 900.0) == 1.0);
}

TEST_CASE("pi: output always within [0,1]") {
    PiConfig cfg;
    PiState st;
    for (double t_air : {-50.0, 0.0, 21.9, 22.0, 22.1, 80.0}) {
        const double u = pi_step(cfg, st, t_air, 900.0);
        CHECK(u >= 0.0);
        CHECK(u <= 1.0);
    }
}

TEST_CASE("pi anti-windup: integral clamps and recovers within one step") {
    PiConfig cfg;
    PiState st;
    // 100 K persistent error for a long time
    for (int i = 0; i < 10000; ++i)
        (void)pi_step(cfg, st, cfg.setpoint - 100.0, 900.0);
    CHECK(st.integral <= 1.0 / cfg.ki + 1e-9);
    // once the error flips sufficiently negative, output leaves saturation
    const double u = pi_step(cfg, st, cfg.setpoint + 50.0, 900.0);
    CHECK(u < 1.0);
}

TEST_CASE("pi: ki = 0 keeps the integral inert") {
    PiConfig cfg;
    cfg.ki = 0.0;
    PiState st;
    (void)pi_step(cfg, st, 10.0, 900.0);
    CHECK(st.integral == 0.0);
}

TEST_CASE("hysteresis: turns on below the band regardless of prior mode") {
    HysteresisConfig cfg;
    for (bool prior : {false, true}) {
        HysteresisState st{prior};
        CHECK(hysteresis_step(cfg, st, cfg.setpoint - 2.0 * cfg.band) == 1.0);
        CHECK(st.on);
    }
}

TEST_CASE("hysteresis: keeps its mode inside the deadband") {
    HysteresisConfig cfg;
    HysteresisState st{true};
    CHECK(hysteresis_step(cfg, st, cfg.setpoint) == 1.0);
    st.on = false;
    CHECK(hysteresis_step(cfg, st, cfg.setpoint) == 0.0);
}

TEST_CASE("hysteresis: turns off above the band, output is binary") {
    HysteresisConfig cfg;
    HysteresisState st{true};
    const double u = hysteresis_step(cfg, st, cfg.setpoint + cfg.band + 0.1);
    CHECK(u == 0.0);
    CHECK_FALSE(st.on);
    for (double t : {15.0, 21.4, 21.6, 22.4, 22.6, 30.0}) {
        const double v = hysteresis_step(cfg, st, t);
        CHECK((v == 0.0 || v == 1.0));
    }
}

TEST_CASE("hysteresis: no chattering while crossing the deadband slowly") {
    HysteresisConfig cfg;
    HysteresisState st{false};
    int switches = 0;
    bool prev = st.on;
    // up sweep: on below the band, off above it; down sweep: on again at the
    // bottom. Exactly three switches, none inside the deadband.
    for (double t = cfg.setpoint - 1.0; t <= cfg.setpoint + 1.0; t += 0.01) {
        (void)hysteresis_step(cfg, st, t);
        if (st.on != prev) {
            ++switches;
            prev = st.on;
        }
    }
    for (double t = cfg.setpoint + 1.0; t >= cfg.setpoint - 1.0; t -= 0.01) {
        (void)hysteresis_step(cfg, st, t);
        if (st.on != prev) {
            ++switches;
            prev = st.on;
        }
    }
    CHECK(switches == 3);
}
