#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "thermex/rng.hpp"

namespace thermex {

// A precomputed control sequence; one value per simulation step, each in
// [0,1] (0 = heater off, 1 = full power).
struct Signal {
    std::vector<double> values;
    int step_seconds = 900;
};

// Small distribution descriptors used only by walker configs. Kept separate
// from the building-parameter distributions on purpose: walkers draw step
// counts and amplitudes, nothing more.
struct IntDist {
    enum class Kind { Constant, Uniform, Poisson };
    Kind kind = Kind::Constant;
    std::int64_t value = 0; // Constant
    std::int64_t lo = 0;    // Uniform, inclusive
    std::int64_t hi = 0;
    double lam = 0.0;       // Poisson

    static IntDist constant(std::int64_t v);
    static IntDist uniform(std::int64_t lo, std::int64_t hi);
    static IntDist poisson(double lam);

    std::int64_t sample(RngStream& rng) const;
    // Smallest value the distribution can produce (Poisson: 0).
    std::int64_t min_value() const;
    void validate(const std::string& context) const;
};

struct RealDist {
    enum class Kind { Constant, Uniform };
    Kind kind = Kind::Constant;
    double value = 0.0;
    double lo = 0.0;
    double hi = 0.0;

    static RealDist constant(double v);
    static RealDist uniform(double lo, double hi);

    double sample(RngStream& rng) const;
    double min_value() const;
    double max_value() const;
    void validate(const std::string& context) const;
};

// Piecewise-constant excitation: hold a uniformly drawn level for a
// Poisson-distributed number of steps.
struct PoissonWalkConfig {
    double lam = 8.0;        // mean hold duration in steps (2 h at 900 s)
    double level_low = 0.0;  // uniform sampling range for the level
    double level_high = 1.0;
};

// Chained sinusoid segments with per-segment frequency/amplitude and a hold
// after each segment. The phase accumulates across segments (never reset).
struct SinusoidWalkConfig {
    IntDist freq_dist = IntDist::uniform(8, 96);     // steps per period, >= 2
    RealDist amp_dist = RealDist::uniform(0.2, 1.0); // in [0,1]
    IntDist steady_dist = IntDist::poisson(4.0);     // hold steps, >= 0
};

// Triangular sweeps 0 -> 1 -> 0 with holds at both extrema.
struct RampWalkConfig {
    IntDist freq_dist = IntDist::uniform(4, 48); // steps per ramp leg, >= 2
    IntDist steady_dist = IntDist::poisson(8.0); // hold steps, >= 0
};

using WalkerConfig =
    std::variant<PoissonWalkConfig, SinusoidWalkConfig, RampWalkConfig>;

// Concatenation of segments, each generated by a uniformly chosen component
// walker. Per segment the draw order is: component index, segment length,
// then the component's own draws.
struct MixedWalkConfig {
    std::vector<WalkerConfig> components;
    IntDist segment_len_dist = IntDist::uniform(96, 672); // 1..7 days at 900 s

    static MixedWalkConfig all_defaults();
};

void validate(const PoissonWalkConfig& cfg);
void validate(const SinusoidWalkConfig& cfg);
void validate(const RampWalkConfig& cfg);
void validate(const MixedWalkConfig& cfg);

Signal poisson_walk(const PoissonWalkConfig& cfg, std::size_t num_steps,
                    RngStream& rng, int step_seconds = 900);
Signal sinusoid_walk(const SinusoidWalkConfig& cfg, std::size_t num_steps,
                     RngStream& rng, int step_seconds = 900);
Signal ramp_walk(const RampWalkConfig& cfg, std::size_t num_steps,
                 RngStream& rng, int step_seconds = 900);
Signal mixed_walk(const MixedWalkConfig& cfg, std::size_t num_steps,
                  RngStream& rng, int step_seconds = 900);

// Dispatch over a single component config.
Signal generate_walk(const WalkerConfig& cfg, std::size_t num_steps,
                     RngStream& rng, int step_seconds = 900);

} // namespace thermex
