#include "thermex/variation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "thermex/errors.hpp"

namespace thermex {

namespace {
constexpr int kTruncationCap = 10000;
}

Distribution Distribution::gauss(double mu, double sigma) {
    Distribution d;
    d.kind_ = Kind::Gauss;
    d.mu = mu;
    d.sigma = sigma;
    return d;
}

Distribution Distribution::uniform(double lo, double hi) {
    Distribution d;
    d.kind_ = Kind::Uniform;
    d.lo = lo;
    d.hi = hi;
    return d;
}

Distribution Distribution::mixture(
    std::vector<std::pair<double, Distribution>> components) {
    Distribution d;
    d.kind_ = Kind::Mixture;
    d.components = std::move(components);
    return d;
}

Distribution Distribution::piecewise_pdf(std::vector<double> breakpoints,
                                         std::vector<double> densities) {
    Distribution d;
    d.kind_ = Kind::PiecewisePdf;
    d.breakpoints = std::move(breakpoints);
    d.densities = std::move(densities);
    return d;
}

Distribution Distribution::grid(std::vector<double> values) {
    Distribution d;
    d.kind_ = Kind::Grid;
    d.values = std::move(values);
    return d;
}

Distribution Distribution::constant(double v) {
    Distribution d;
    d.kind_ = Kind::Constant;
    d.value = v;
    return d;
}

Distribution Distribution::truncated(double lo, double hi) const {
    Distribution d = *this;
    d.bounds_ = std::make_pair(lo, hi);
    return d;
}

bool Distribution::is_discrete() const {
    return kind_ == Kind::Grid || kind_ == Kind::Constant;
}

std::vector<double> Distribution::discrete_values() const {
    if (kind_ == Kind::Constant)
        return {value};
    if (kind_ == Kind::Grid)
        return values;
    throw ConfigError("distribution: not a grid/constant distribution");
}

void Distribution::validate() const {
    if (bounds_ && !(bounds_->first < bounds_->second))
        throw ConfigError("distribution: truncation bounds must satisfy "
                          "lo < hi");
    switch (kind_) {
    case Kind::Gauss:
        if (!(sigma > 0.0))
            throw ConfigError("gauss distribution: sigma must be positive");
        break;
    case Kind::Uniform:
        if (!(lo <= hi))
            throw ConfigError("uniform distribution: lo must be <= hi");
        break;
    case Kind::Mixture: {
        if (components.empty())
            throw ConfigError("mixture distribution: no components");
        double total = 0.0;
        for (const auto& [w, comp] : components) {
            if (!(w > 0.0))
                throw ConfigError(
                    "mixture distribution: weights must be positive");
            total += w;
            comp.validate();
        }
        if (std::abs(total - 1.0) > 1e-9)
            throw ConfigError("mixture distribution: weights must sum to 1");
        break;
    }
    case Kind::PiecewisePdf: {
        if (breakpoints.size() < 2 ||
            densities.size() + 1 != breakpoints.size())
            throw ConfigError("piecewise_pdf: need n+1 breakpoints for n "
                              "densities and n >= 1");
        if (!std::is_sorted(breakpoints.begin(), breakpoints.end()) ||
            std::adjacent_find(breakpoints.begin(), breakpoints.end()) !=
                breakpoints.end())
            throw ConfigError(
                "piecewise_pdf: breakpoints must be strictly increasing");
        double mass = 0.0;
        for (std::size_t i = 0; i < densities.size(); ++i) {
            if (!(densities[i] >= 0.0))
                throw ConfigError(
                    "piecewise_pdf: densities must be non-negative");
            mass += densities[i] * (breakpoints[i + 1] - breakpoints[i]);
        }
        if (!(mass > 0.0))
            throw ConfigError("piecewise_pdf: total mass must be positive");
        break;
    }
    case Kind::Grid:
        if (values.empty())
            throw ConfigError("grid distribution: no values");
        break;
    case Kind::Constant:
        break;
    }
}

double Distribution::sample_raw(RngStream& rng) const {
    switch (kind_) {
    case Kind::Gauss:
        return rng.gauss(mu, sigma);
    case Kind::Uniform:
        return rng.uniform(lo, hi);
    case Kind::Mixture: {
        const double u = rng.uniform();
        double acc = 0.0;
        for (const auto& [w, comp] : components) {
            acc += w;
            if (u < acc)
                return comp.sample(rng);
        }
        return components.back().second.sample(rng);
    }
    case Kind::PiecewisePdf: {
        // Inverse CDF of the piecewise-constant density: pick the segment by
        // cumulative mass, interpolate linearly inside it.
        double mass = 0.0;
        for (std::size_t i = 0; i < densities.size(); ++i)
            mass += densities[i] * (breakpoints[i + 1] - breakpoints[i]);
        double target = rng.uniform() * mass;
        for (std::size_t i = 0; i < densities.size(); ++i) {
            const double seg =
                densities[i] * (breakpoints[i + 1] - breakpoints[i]);
            if (target <= seg && seg > 0.0)
                return breakpoints[i] +
                       (target / seg) * (breakpoints[i + 1] - breakpoints[i]);
            target -= seg;
        }
        return breakpoints.back();
    }
    case Kind::Grid:
        return values[static_cast<std::size_t>(rng.uniform_int(
            0, static_cast<std::int64_t>(values.size()) - 1))];
    case Kind::Constant:
        return value;
    }
    return value;
}

double Distribution::sample(RngStream& rng) const {
    if (!bounds_)
        return sample_raw(rng);
    for (int attempt = 0; attempt < kTruncationCap; ++attempt) {
        const double v = sample_raw(rng);
        if (v >= bounds_->first && v <= bounds_->second)
            return v;
    }
    throw RunError("distribution: truncation rejected " +
                   std::to_string(kTruncationCap) +
                   " consecutive draws; the bounds carry near-zero "
                   "probability mass");
}

void VariationSpec::validate() const {
    if (!(sizing.design_delta_t > 0.0))
        throw ConfigError("variation.sizing.design_delta_t must be positive");
    if (!(sizing.design_margin >= 1.0))
        throw ConfigError("variation.sizing.design_margin must be >= 1");
    const auto& known = builtin_converters();
    for (const auto& name : converters)
        if (std::find(known.begin(), known.end(), name) == known.end())
            throw ConfigError("variation.converters: unknown converter '" +
                              name + "'");
    for (const auto& [name, dist] : distributions) {
        resolve_parameter(name);
        dist.validate();
    }
}

const std::vector<std::string>& builtin_converters() {
    static const std::vector<std::string> names{"volume", "size_heater"};
    return names;
}

double BuildingParams::*resolve_parameter(const std::string& name) {
    static const std::map<std::string, double BuildingParams::*> registry{
        {"UExt", &BuildingParams::u_ext},
        {"u_ext", &BuildingParams::u_ext},
        {"floor_area", &BuildingParams::floor_area},
        {"ceiling_height", &BuildingParams::ceiling_height},
        {"envelope_area", &BuildingParams::envelope_area},
        {"window_area", &BuildingParams::window_area},
        {"u_window", &BuildingParams::u_window},
        {"ach", &BuildingParams::ach},
        {"solar_aperture", &BuildingParams::solar_aperture},
        {"c_air", &BuildingParams::c_air},
        {"c_env", &BuildingParams::c_env},
        {"q_nominal", &BuildingParams::q_nominal},
    };
    const auto it = registry.find(name);
    if (it == registry.end())
        throw ConfigError("variation: unknown building parameter '" + name +
                          "'");
    return it->second;
}

BuildingParams apply_converters(BuildingParams p,
                                const std::vector<std::string>& chain,
                                const SizingConfig& sizing) {
    for (const auto& name : chain) {
        if (name == "volume") {
            // Volume is derived from floor_area * ceiling_height wherever it
            // is used, so there is nothing stored to refresh. The converter
            // stays registered so chains can declare the dependency.
        } else if (name == "size_heater") {
            p.q_nominal = size_heater_power(p, sizing.design_delta_t,
                                            sizing.design_margin);
        } else {
            throw ConfigError("apply_converters: unknown converter '" + name +
                              "'");
        }
    }
    return p;
}

namespace {

void validate_sampled(const BuildingParams& p, const VariationSpec& spec) {
    validate(p); // names the offending field
    const double floor = heater_sizing_floor(p, spec.sizing.design_delta_t);
    if (p.q_nominal < floor * (1.0 - 1e-9))
        throw ConfigError(
            "building.q_nominal: " + std::to_string(p.q_nominal) +
            " W is below the sizing floor " + std::to_string(floor) +
            " W; add the size_heater converter or widen the bounds");
}

} // namespace

BuildingParams sample_building(const VariationSpec& spec,
                               const BuildingParams& base, RngStream& rng) {
    spec.validate();
    BuildingParams p = base;
    for (const auto& [name, dist] : spec.distributions)
        p.*resolve_parameter(name) = dist.sample(rng);
    p = apply_converters(p, spec.converters, spec.sizing);
    validate_sampled(p, spec);
    return p;
}

std::vector<BuildingParams> grid_variations(const VariationSpec& spec,
                                            const BuildingParams& base) {
    spec.validate();
    std::vector<std::string> names;
    std::vector<std::vector<double>> axes;
    std::size_t total = 1;
    for (const auto& [name, dist] : spec.distributions) {
        if (!dist.is_discrete())
            throw ConfigError("grid_variations: parameter '" + name +
                              "' is not a grid/constant distribution");
        names.push_back(name);
        axes.push_back(dist.discrete_values());
        total *= axes.back().size();
        if (total > spec.grid_cap)
            throw ConfigError("grid_variations: product size " +
                              std::to_string(total) + " exceeds the cap of " +
                              std::to_string(spec.grid_cap));
    }

    std::vector<BuildingParams> out;
    out.reserve(total);
    std::vector<std::size_t> idx(axes.size(), 0);
    for (std::size_t n = 0; n < total; ++n) {
        BuildingParams p = base;
        for (std::size_t k = 0; k < axes.size(); ++k)
            p.*resolve_parameter(names[k]) = axes[k][idx[k]];
        p = apply_converters(p, spec.converters, spec.sizing);
        validate_sampled(p, spec);
        out.push_back(p);
        // odometer: first (lexicographically smallest) name most significant
        for (std::size_t k = axes.size(); k-- > 0;) {
            if (++idx[k] < axes[k].size())
                break;
            idx[k] = 0;
        }
    }
    return out;
}

} // namespace thermex
