#include "thermex/signals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "thermex/errors.hpp"

namespace thermex {

IntDist IntDist::constant(std::int64_t v) {
    IntDist d;
    d.kind = Kind::Constant;
    d.value = v;
    return d;
}

IntDist IntDist::uniform(std::int64_t lo, std::int64_t hi) {
    IntDist d;
    d.kind = Kind::Uniform;
    d.lo = lo;
    d.hi = hi;
    return d;
}

IntDist IntDist::poisson(double lam) {
    IntDist d;
    d.kind = Kind::Poisson;
    d.lam = lam;
    return d;
}

std::int64_t IntDist::sample(RngStream& rng) const {
    switch (kind) {
    case Kind::Constant: return value;
    case Kind::Uniform: return rng.uniform_int(lo, hi);
    case Kind::Poisson: return rng.poisson(lam);
    }
    return 0;
}

std::int64_t IntDist::min_value() const {
    switch (kind) {
    case Kind::Constant: return value;
    case Kind::Uniform: return lo;
    case Kind::Poisson: return 0;
    }
    return 0;
}

void IntDist::validate(const std::string& context) const {
    if (kind == Kind::Uniform && lo > hi)
        throw ConfigError(context + ": uniform range has lo > hi");
    if (kind == Kind::Poisson && !(lam > 0.0 && lam <= 100.0))
        throw ConfigError(context + ": poisson mean must be in (0, 100]");
}

RealDist RealDist::constant(double v) {
    RealDist d;
    d.kind = Kind::Constant;
    d.value = v;
    return d;
}

RealDist RealDist::uniform(double lo, double hi) {
    RealDist d;
    d.kind = Kind::Uniform;
    d.lo = lo;
    d.hi = hi;
    return d;
}

double RealDist::sample(RngStream& rng) const {
    return kind == Kind::Constant ? value : rng.uniform(lo, hi);
}

double RealDist::min_value() const {
    return kind == Kind::Constant ? value : lo;
}

double RealDist::max_value() const {
    return kind == Kind::Constant ? value : hi;
}

void RealDist::validate(const std::string& context) const {
    if (kind == Kind::Uniform && lo > hi)
        throw ConfigError(context + ": uniform range has lo > hi");
}

MixedWalkConfig MixedWalkConfig::all_defaults() {
    MixedWalkConfig cfg;
    cfg.components = {PoissonWalkConfig{}, SinusoidWalkConfig{},
                      RampWalkConfig{}};
    return cfg;
}

void validate(const PoissonWalkConfig& cfg) {
    if (!(cfg.lam > 0.0 && cfg.lam <= 100.0))
        throw ConfigError("poisson walker: lam must be in (0, 100]");
    if (!(cfg.level_low >= 0.0 && cfg.level_low <= cfg.level_high &&
          cfg.level_high <= 1.0))
        throw ConfigError(
            "poisson walker: need 0 <= level_low <= level_high <= 1");
}

void validate(const SinusoidWalkConfig& cfg) {
    cfg.freq_dist.validate("sinusoid walker freq");
    cfg.amp_dist.validate("sinusoid walker amp");
    cfg.steady_dist.validate("sinusoid walker steady");
    if (cfg.freq_dist.kind == IntDist::Kind::Poisson ||
        cfg.freq_dist.min_value() < 2)
        throw ConfigError("sinusoid walker: freq distribution must only "
                          "produce values >= 2");
    if (cfg.amp_dist.min_value() < 0.0 || cfg.amp_dist.max_value() > 1.0)
        throw ConfigError("sinusoid walker: amp distribution must stay in "
                          "[0, 1]");
    if (cfg.steady_dist.min_value() < 0)
        throw ConfigError("sinusoid walker: steady distribution must be "
                          "non-negative");
}

void validate(const RampWalkConfig& cfg) {
    cfg.freq_dist.validate("ramp walker freq");
    cfg.steady_dist.validate("ramp walker steady");
    if (cfg.freq_dist.kind == IntDist::Kind::Poisson ||
        cfg.freq_dist.min_value() < 2)
        throw ConfigError(
            "ramp walker: freq distribution must only produce values >= 2");
    if (cfg.steady_dist.min_value() < 0)
        throw ConfigError(
            "ramp walker: steady distribution must be non-negative");
}

void validate(const MixedWalkConfig& cfg) {
    if (cfg.components.empty())
        throw ConfigError("mixed walker: component list is empty");
    cfg.segment_len_dist.validate("mixed walker segment_len");
    if (cfg.segment_len_dist.min_value() < 1 ||
        cfg.segment_len_dist.kind == IntDist::Kind::Poisson)
        throw ConfigError("mixed walker: segment_len distribution must only "
                          "produce values >= 1");
    for (const auto& c : cfg.components)
        std::visit([](const auto& w) { validate(w); }, c);
}

namespace {

Signal make_signal(std::vector<double> values, std::size_t num_steps,
                   int step_seconds) {
    values.resize(num_steps);
    return Signal{std::move(values), step_seconds};
}

} // namespace

Signal poisson_walk(const PoissonWalkConfig& cfg, std::size_t num_steps,
                    RngStream& rng, int step_seconds) {
    validate(cfg);
    std::vector<double> out;
    out.reserve(num_steps);
    while (out.size() < num_steps) {
        const double v = rng.uniform(cfg.level_low, cfg.level_high);
        const int k = rng.poisson(cfg.lam);
        out.insert(out.end(), static_cast<std::size_t>(k), v);
    }
    return make_signal(std::move(out), num_steps, step_seconds);
}

Signal sinusoid_walk(const SinusoidWalkConfig& cfg, std::size_t num_steps,
                     RngStream& rng, int step_seconds) {
    validate(cfg);
    std::vector<double> out;
    out.reserve(num_steps);
    double phase = 0.0;
    const double mid = 0.5;
    while (out.size() < num_steps) {
        const std::int64_t freq = cfg.freq_dist.sample(rng);
        const double amp = cfg.amp_dist.sample(rng);
        const std::int64_t hold = cfg.steady_dist.sample(rng);
        const double omega = 2.0 * std::numbers::pi / static_cast<double>(freq);
        for (std::int64_t i = 0; i < freq; ++i) {
            const double v = mid + 0.5 * amp * std::sin(phase);
            out.push_back(std::clamp(v, 0.0, 1.0));
            phase += omega;
        }
        out.insert(out.end(), static_cast<std::size_t>(hold), out.back());
    }
    return make_signal(std::move(out), num_steps, step_seconds);
}

Signal ramp_walk(const RampWalkConfig& cfg, std::size_t num_steps,
                 RngStream& rng, int step_seconds) {
    validate(cfg);
    constexpr double kMin = 0.0;
    std::vector<double> out;
    out.reserve(num_steps);
    while (out.size() < num_steps) {
        const std::int64_t freq = cfg.freq_dist.sample(rng);
        const double step = 1.0 / static_cast<double>(freq - 1);
        for (std::int64_t i = 0; i < freq; ++i)
            out.push_back(kMin + step * static_cast<double>(i));
        out.insert(out.end(),
                   static_cast<std::size_t>(cfg.steady_dist.sample(rng)), 1.0);
        for (std::int64_t i = 1; i < freq - 1; ++i)
            out.push_back(1.0 - step * static_cast<double>(i));
        out.insert(out.end(),
                   static_cast<std::size_t>(cfg.steady_dist.sample(rng)), 0.0);
    }
    return make_signal(std::move(out), num_steps, step_seconds);
}

Signal generate_walk(const WalkerConfig& cfg, std::size_t num_steps,
                     RngStream& rng, int step_seconds) {
    return std::visit(
        [&](const auto& c) -> Signal {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, PoissonWalkConfig>)
                return poisson_walk(c, num_steps, rng, step_seconds);
            else if constexpr (std::is_same_v<T, SinusoidWalkConfig>)
                return sinusoid_walk(c, num_steps, rng, step_seconds);
            else
                return ramp_walk(c, num_steps, rng, step_seconds);
        },
        cfg);
}

Signal mixed_walk(const MixedWalkConfig& cfg, std::size_t num_steps,
                  RngStream& rng, int step_seconds) {
    validate(cfg);
    std::vector<double> out;
    out.reserve(num_steps);
    while (out.size() < num_steps) {
        const auto idx = static_cast<std::size_t>(rng.uniform_int(
            0, static_cast<std::int64_t>(cfg.components.size()) - 1));
        const auto seg_len =
            static_cast<std::size_t>(cfg.segment_len_dist.sample(rng));
        const Signal seg =
            generate_walk(cfg.components[idx], seg_len, rng, step_seconds);
        out.insert(out.end(), seg.values.begin(), seg.values.end());
    }
    return make_signal(std::move(out), num_steps, step_seconds);
}

} // namespace thermex
