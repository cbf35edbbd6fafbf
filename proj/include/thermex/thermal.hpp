#pragma once

namespace thermex {

// Envelope and heater parameters of one simulated single-zone building.
// The zone is modeled as two lumped nodes: indoor air (plus fast
// furnishings) and the envelope mass, with the wall conductance split
// equally on either side of the envelope node. Windows and ventilation
// couple the air node directly to the outdoors.
struct BuildingParams {
    double floor_area = 150.0;     // m^2
    double ceiling_height = 2.5;   // m
    double u_ext = 0.8;            // W/(m^2 K), exterior wall U-value
    double envelope_area = 280.0;  // m^2, opaque + glazed
    double window_area = 30.0;     // m^2
    double u_window = 1.3;         // W/(m^2 K)
    double ach = 0.5;              // 1/h, air changes
    double solar_aperture = 0.6;   // fraction of incident irradiance admitted
    double c_air = 1.0e7;          // J/K, air + furnishings
    double c_env = 8.0e7;          // J/K, envelope mass
    double q_nominal = 0.0;        // W, maximum heater power

    double volume() const { return floor_area * ceiling_height; }

    // The standard building: defaults above with the heater sized by
    // size_heater_power at the default margins.
    static BuildingParams standard();
};

// Throws ConfigError naming the offending field.
void validate(const BuildingParams& p);

struct Conductances {
    double ua_env_out; // W/K, envelope node <-> outdoors (half wall, doubled)
    double ua_air_env; // W/K, air node <-> envelope node (other half)
    double ua_window;  // W/K, air <-> outdoors through glazing
    double ua_vent;    // W/K, air <-> outdoors through ventilation
};

Conductances derive_conductances(const BuildingParams& p);

// Design heat load: all air-to-outdoor paths plus the series envelope path
// plus the raw wall conductance, at the design temperature difference.
// size_heater_power applies the safety margin on top of this floor.
double heater_sizing_floor(const BuildingParams& p, double design_delta_t);
double size_heater_power(const BuildingParams& p, double design_delta_t = 35.0,
                         double design_margin = 1.2);

struct ThermalState {
    double t_air = 20.0; // degC
    double t_env = 20.0; // degC
};

struct BoundarySample {
    double t_out = 0.0;         // degC
    double solar = 0.0;         // W/m^2, horizontal irradiance
    double internal_gain = 0.0; // W
};

// Advance one step of length dt seconds with all inputs held constant.
// Uses the closed-form solution of the 2x2 linear system (eigendecomposition
// of the state matrix), so the step is exact for constant inputs and stable
// for any dt.
ThermalState step(const BuildingParams& p, const ThermalState& s,
                  const BoundarySample& b, double u, double dt);

// step plus the time-averaged node temperatures over the interval, for
// energy accounting.
struct StepResult {
    ThermalState state;
    double mean_t_air;
    double mean_t_env;
};

StepResult step_detailed(const BuildingParams& p, const ThermalState& s,
                         const BoundarySample& b, double u, double dt);

// Equilibrium under constant inputs. Throws RunError when the system has no
// steady state (no conductive path to the outdoors).
ThermalState steady_state(const BuildingParams& p, const BoundarySample& b,
                          double u);

} // namespace thermex
