#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thermex/rng.hpp"
#include "thermex/thermal.hpp"

namespace thermex {

// User-definable probability distribution over a scalar building parameter.
// Optional truncation bounds apply to the whole distribution and are
// enforced by rejection sampling (capped, so near-empty intervals surface as
// errors instead of hangs).
class Distribution {
public:
    enum class Kind { Gauss, Uniform, Mixture, PiecewisePdf, Grid, Constant };

    static Distribution gauss(double mu, double sigma);
    static Distribution uniform(double lo, double hi);
    static Distribution mixture(
        std::vector<std::pair<double, Distribution>> components);
    // breakpoints: n+1 ascending values; densities: n non-negative weights.
    static Distribution piecewise_pdf(std::vector<double> breakpoints,
                                      std::vector<double> densities);
    static Distribution grid(std::vector<double> values);
    static Distribution constant(double v);

    Distribution truncated(double lo, double hi) const;

    void validate() const; // throws ConfigError
    double sample(RngStream& rng) const;

    Kind kind() const { return kind_; }
    bool is_discrete() const; // grid or constant
    // Enumerates the support of a grid/constant distribution.
    std::vector<double> discrete_values() const;
    const std::optional<std::pair<double, double>>& bounds() const {
        return bounds_;
    }

    double mu = 0.0, sigma = 1.0;       // Gauss
    double lo = 0.0, hi = 1.0;          // Uniform
    std::vector<std::pair<double, Distribution>> components; // Mixture
    std::vector<double> breakpoints, densities;              // PiecewisePdf
    std::vector<double> values;          // Grid
    double value = 0.0;                  // Constant

private:
    double sample_raw(RngStream& rng) const;

    Kind kind_ = Kind::Constant;
    std::optional<std::pair<double, double>> bounds_;
};

struct SizingConfig {
    double design_delta_t = 35.0; // K
    double design_margin = 1.2;
};

// Which parameters to vary and how, plus the dependent-update chain applied
// after sampling. Parameter names follow the building fields; "UExt" is
// accepted as an alias for the wall U-value.
struct VariationSpec {
    std::map<std::string, Distribution> distributions;
    std::vector<std::string> converters{"volume", "size_heater"};
    SizingConfig sizing;
    std::size_t grid_cap = 100000;

    void validate() const;
};

// Names of the built-in converters, in no particular order.
const std::vector<std::string>& builtin_converters();

// Resolves a parameter name to a BuildingParams member; throws ConfigError
// for unknown names.
double BuildingParams::*resolve_parameter(const std::string& name);

// Applies the named converters in order. "volume" recomputes volume-derived
// quantities (a no-op here: volume is always derived from floor_area and
// ceiling_height on demand); "size_heater" sets q_nominal from the envelope
// conductances and the sizing config.
BuildingParams apply_converters(BuildingParams p,
                                const std::vector<std::string>& chain,
                                const SizingConfig& sizing = {});

// Copies base, overwrites each varied parameter with one draw (parameters in
// lexicographic name order so the draw sequence is well-defined), applies
// the converter chain, and validates the result.
BuildingParams sample_building(const VariationSpec& spec,
                               const BuildingParams& base, RngStream& rng);

// Full Cartesian product over grid/constant distributions, converters
// applied to every element. Order: lexicographic by parameter name, first
// name most significant, values in declared order.
std::vector<BuildingParams> grid_variations(const VariationSpec& spec,
                                            const BuildingParams& base);

} // namespace thermex
