#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "thermex/coverage.hpp"
#include "thermex/engine.hpp"
#include "thermex/eval.hpp"

namespace thermex {

// Whole-project configuration, one namespaced section per module. Parsing is
// strict: unknown keys anywhere are rejected so typos surface immediately.
// Absent keys fall back to the documented defaults (the file emitted by
// `thermex init` spells all of them out).
struct ProjectConfig {
    BuildingParams building = BuildingParams::standard();

    // weather
    bool weather_from_file = false;
    SyntheticWeather synthetic_weather;
    std::filesystem::path weather_path;
    WeatherColumns weather_columns;

    GainSchedule gains = GainSchedule::standard();

    // control.kind in {pi, hysteresis, walker}
    std::string control_kind = "pi";
    PiConfig pi;
    HysteresisConfig hysteresis;

    // walker.kind in {poisson, sinusoid, ramp, mixed}
    std::string walker_kind = "ramp";
    PoissonWalkConfig poisson_walker;
    SinusoidWalkConfig sinusoid_walker;
    RampWalkConfig ramp_walker;
    std::vector<std::string> mixed_components{"poisson", "sinusoid", "ramp"};
    IntDist mixed_segment_len = IntDist::uniform(96, 672);

    // run window
    std::int64_t start_time_s = 0;
    std::int64_t stop_time_s = kSecondsPerYear;
    std::int64_t dt_s = 900;
    std::optional<ThermalState> initial; // empty = steady at start boundary

    VariationSpec variation;
    CoverageGrid coverage;
    EvalSettings eval;

    void validate() const;
};

ProjectConfig parse_config(const nlohmann::json& j);
// Accepts // and /* */ comments in the file.
ProjectConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const ProjectConfig& cfg);

// The fully commented default configuration written by `thermex init`;
// parses back to ProjectConfig{}.
std::string default_config_text();

// Assembles the engine-facing run description (weather model, control
// source, window) from the project config.
RunConfig make_run_config(const ProjectConfig& cfg, std::uint64_t seed);

// The walker selected by walker.kind, as an engine control source.
WalkerSource make_walker_source(const ProjectConfig& cfg);

} // namespace thermex
