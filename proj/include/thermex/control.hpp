#pragma once

#include <algorithm>

namespace thermex {

// PI heating controller emitting a fraction in [0,1]. The integral term is
// clamped to [0, 1/ki] so that integral*ki alone can never demand more than
// full power (anti-windup).
struct PiConfig {
    double kp = 0.4;       // fraction per K
    double ki = 1.0e-4;    // fraction per (K*s)
    double setpoint = 22.0; // degC
};

struct PiState {
    double integral = 0.0; // K*s
};

inline double pi_step(const PiConfig& cfg, PiState& st, double t_air,
                      double dt) {
    const double e = cfg.setpoint - t_air;
    if (cfg.ki > 0.0)
        st.integral = std::clamp(st.integral + e * dt, 0.0, 1.0 / cfg.ki);
    else
        st.integral = 0.0;
    return std::clamp(cfg.kp * e + cfg.ki * st.integral, 0.0, 1.0);
}

// On/off controller with a symmetric deadband around the setpoint; keeps its
// previous mode inside the band.
struct HysteresisConfig {
    double setpoint = 22.0; // degC
    double band = 0.5;      // K, half-width
};

struct HysteresisState {
    bool on = false;
};

inline double hysteresis_step(const HysteresisConfig& cfg, HysteresisState& st,
                              double t_air) {
    if (t_air < cfg.setpoint - cfg.band)
        st.on = true;
    else if (t_air > cfg.setpoint + cfg.band)
        st.on = false;
    return st.on ? 1.0 : 0.0;
}

} // namespace thermex
