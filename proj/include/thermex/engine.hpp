#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "thermex/control.hpp"
#include "thermex/signals.hpp"
#include "thermex/thermal.hpp"
#include "thermex/variation.hpp"
#include "thermex/weather.hpp"

namespace thermex {

// One simulation step. time_s is the END of the step; t_air_c/t_env_c are
// the state at that instant, while the boundary columns and control_signal
// are the inputs held constant during the preceding dt (sampled at step
// start).
struct TraceRow {
    double time_s;
    double t_out_c;
    double solar_wm2;
    double internal_gain_w;
    double control_signal;
    double heat_power_w;
    double t_air_c;
    double t_env_c;
};

struct TraceMeta {
    BuildingParams building;
    std::uint64_t seed = 0;
    std::string control_kind;
    std::int64_t start_time_s = 0;
    std::int64_t dt_s = 900;
};

struct Trace {
    std::vector<TraceRow> rows;
    TraceMeta meta;
};

// What drives the heater: a feedback controller, a precomputed signal, or a
// walker config expanded with the run's own rng.
struct WalkerSource {
    std::variant<PoissonWalkConfig, SinusoidWalkConfig, RampWalkConfig,
                 MixedWalkConfig>
        config;
};

using ControlSource =
    std::variant<PiConfig, HysteresisConfig, Signal, WalkerSource>;

std::string control_kind_name(const ControlSource& src);

struct RunConfig {
    std::int64_t start_time_s = 0;
    std::int64_t stop_time_s = kSecondsPerYear;
    std::int64_t dt_s = 900;
    BuildingParams building = BuildingParams::standard();
    WeatherModel weather = WeatherModel::synthetic();
    GainSchedule gains = GainSchedule::standard();
    ControlSource control = PiConfig{};
    // Explicit initial state; empty = free-float equilibrium at the start
    // boundary (u = 0).
    std::optional<ThermalState> initial;
    std::uint64_t seed = 0;

    std::size_t num_steps() const {
        return static_cast<std::size_t>((stop_time_s - start_time_s) / dt_s);
    }
};

void validate(const RunConfig& cfg);

// Simulate one run. Walker sources draw from `rng`; the run(cfg) overload
// seeds a fresh stream from cfg.seed.
Trace run(const RunConfig& cfg);
Trace run_with_rng(const RunConfig& cfg, RngStream& rng);

// One entry of a batch; failed runs carry the error text instead of a trace.
struct RunOutcome {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    std::optional<Trace> trace;
    std::string error;
};

// n runs with seeds base_seed + i. Each run samples its building from the
// variation spec and then feeds any walker from the same stream, so outputs
// depend only on (template, spec, base_seed), never on worker scheduling.
std::vector<RunOutcome> batch_run(std::size_t n, const RunConfig& tmpl,
                                  const VariationSpec& spec,
                                  std::uint64_t base_seed, int workers = 1);

// CSV with the fixed header
// time_s,t_out_c,solar_wm2,internal_gain_w,control_signal,heat_power_w,t_air_c,t_env_c
// (shortest exact round-trip number formatting) plus a JSON metadata sidecar
// at path + ".meta.json".
void write_trace(const Trace& trace, const std::filesystem::path& path);
Trace read_trace(const std::filesystem::path& path);

} // namespace thermex
