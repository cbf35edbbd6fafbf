#include "thermex/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "thermex/errors.hpp"

namespace thermex {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
    if (!j.is_object())
        throw ConfigError(where + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) {
                return key == a;
            }) == allowed.end())
            throw ConfigError(where + ": unknown key '" + key + "'");
    }
}

double get_double(const json& j, const std::string& where, const char* key,
                  double fallback) {
    if (!j.contains(key))
        return fallback;
    const json& v = j.at(key);
    if (!v.is_number())
        throw ConfigError(where + "." + key + ": expected a number");
    return v.get<double>();
}

std::int64_t get_int(const json& j, const std::string& where, const char* key,
                     std::int64_t fallback) {
    if (!j.contains(key))
        return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer())
        throw ConfigError(where + "." + key + ": expected an integer");
    return v.get<std::int64_t>();
}

std::string get_string(const json& j, const std::string& where,
                       const char* key, const std::string& fallback) {
    if (!j.contains(key))
        return fallback;
    const json& v = j.at(key);
    if (!v.is_string())
        throw ConfigError(where + "." + key + ": expected a string");
    return v.get<std::string>();
}

IntDist parse_int_dist(const json& j, const std::string& where) {
    check_keys(j, where, {"kind", "value", "lo", "hi", "lam"});
    const std::string kind = get_string(j, where, "kind", "");
    if (kind == "constant") {
        check_keys(j, where, {"kind", "value"});
        return IntDist::constant(get_int(j, where, "value", 0));
    }
    if (kind == "uniform") {
        check_keys(j, where, {"kind", "lo", "hi"});
        return IntDist::uniform(get_int(j, where, "lo", 0),
                                get_int(j, where, "hi", 0));
    }
    if (kind == "poisson") {
        check_keys(j, where, {"kind", "lam"});
        return IntDist::poisson(get_double(j, where, "lam", 0.0));
    }
    throw ConfigError(where + ".kind: expected constant|uniform|poisson");
}

json int_dist_to_json(const IntDist& d) {
    switch (d.kind) {
    case IntDist::Kind::Constant:
        return json{{"kind", "constant"}, {"value", d.value}};
    case IntDist::Kind::Uniform:
        return json{{"kind", "uniform"}, {"lo", d.lo}, {"hi", d.hi}};
    case IntDist::Kind::Poisson:
        return json{{"kind", "poisson"}, {"lam", d.lam}};
    }
    return {};
}

RealDist parse_real_dist(const json& j, const std::string& where) {
    check_keys(j, where, {"kind", "value", "lo", "hi"});
    const std::string kind = get_string(j, where, "kind", "");
    if (kind == "constant") {
        check_keys(j, where, {"kind", "value"});
        return RealDist::constant(get_double(j, where, "value", 0.0));
    }
    if (kind == "uniform") {
        check_keys(j, where, {"kind", "lo", "hi"});
        return RealDist::uniform(get_double(j, where, "lo", 0.0),
                                 get_double(j, where, "hi", 0.0));
    }
    throw ConfigError(where + ".kind: expected constant|uniform");
}

json real_dist_to_json(const RealDist& d) {
    if (d.kind == RealDist::Kind::Constant)
        return json{{"kind", "constant"}, {"value", d.value}};
    return json{{"kind", "uniform"}, {"lo", d.lo}, {"hi", d.hi}};
}

Distribution parse_distribution(const json& j, const std::string& where) {
    check_keys(j, where,
               {"kind", "mu", "sigma", "lo", "hi", "value", "values",
                "breakpoints", "densities", "components", "bounds"});
    const std::string kind = get_string(j, where, "kind", "");
    Distribution d = Distribution::constant(0.0);
    if (kind == "gauss") {
        d = Distribution::gauss(get_double(j, where, "mu", 0.0),
                                get_double(j, where, "sigma", 1.0));
    } else if (kind == "uniform") {
        d = Distribution::uniform(get_double(j, where, "lo", 0.0),
                                  get_double(j, where, "hi", 1.0));
    } else if (kind == "constant") {
        d = Distribution::constant(get_double(j, where, "value", 0.0));
    } else if (kind == "grid") {
        if (!j.contains("values") || !j.at("values").is_array())
            throw ConfigError(where + ".values: expected an array");
        d = Distribution::grid(j.at("values").get<std::vector<double>>());
    } else if (kind == "piecewise_pdf") {
        if (!j.contains("breakpoints") || !j.contains("densities"))
            throw ConfigError(where +
                              ": piecewise_pdf needs breakpoints and "
                              "densities");
        d = Distribution::piecewise_pdf(
            j.at("breakpoints").get<std::vector<double>>(),
            j.at("densities").get<std::vector<double>>());
    } else if (kind == "mixture") {
        if (!j.contains("components") || !j.at("components").is_array())
            throw ConfigError(where + ".components: expected an array");
        std::vector<std::pair<double, Distribution>> comps;
        std::size_t i = 0;
        for (const json& cj : j.at("components")) {
            const std::string cw =
                where + ".components[" + std::to_string(i++) + "]";
            check_keys(cj, cw, {"weight", "dist"});
            if (!cj.contains("weight") || !cj.contains("dist"))
                throw ConfigError(cw + ": needs weight and dist");
            comps.emplace_back(cj.at("weight").get<double>(),
                               parse_distribution(cj.at("dist"), cw + ".dist"));
        }
        d = Distribution::mixture(std::move(comps));
    } else {
        throw ConfigError(where + ".kind: expected gauss|uniform|mixture|"
                                  "piecewise_pdf|grid|constant");
    }
    if (j.contains("bounds")) {
        const json& b = j.at("bounds");
        if (!b.is_array() || b.size() != 2)
            throw ConfigError(where + ".bounds: expected [lo, hi]");
        d = d.truncated(b[0].get<double>(), b[1].get<double>());
    }
    d.validate();
    return d;
}

json distribution_to_json(const Distribution& d) {
    json j;
    switch (d.kind()) {
    case Distribution::Kind::Gauss:
        j = json{{"kind", "gauss"}, {"mu", d.mu}, {"sigma", d.sigma}};
        break;
    case Distribution::Kind::Uniform:
        j = json{{"kind", "uniform"}, {"lo", d.lo}, {"hi", d.hi}};
        break;
    case Distribution::Kind::Constant:
        j = json{{"kind", "constant"}, {"value", d.value}};
        break;
    case Distribution::Kind::Grid:
        j = json{{"kind", "grid"}, {"values", d.values}};
        break;
    case Distribution::Kind::PiecewisePdf:
        j = json{{"kind", "piecewise_pdf"},
                 {"breakpoints", d.breakpoints},
                 {"densities", d.densities}};
        break;
    case Distribution::Kind::Mixture: {
        json comps = json::array();
        for (const auto& [w, comp] : d.components)
            comps.push_back(
                json{{"weight", w}, {"dist", distribution_to_json(comp)}});
        j = json{{"kind", "mixture"}, {"components", comps}};
        break;
    }
    }
    if (d.bounds())
        j["bounds"] = {d.bounds()->first, d.bounds()->second};
    return j;
}

template <std::size_t N>
std::array<double, N> parse_profile(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != N)
        throw ConfigError(where + ": expected an array of " +
                          std::to_string(N) + " hourly values");
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i)
        out[i] = j[i].get<double>();
    return out;
}

} // namespace

ProjectConfig parse_config(const json& root) {
    check_keys(root, "config",
               {"building", "weather", "gains", "control", "walker", "run",
                "variation", "coverage", "eval"});
    ProjectConfig cfg;

    if (root.contains("building")) {
        const json& b = root.at("building");
        check_keys(b, "building",
                   {"floor_area_m2", "ceiling_height_m", "u_ext_w_m2k",
                    "envelope_area_m2", "window_area_m2", "u_window_w_m2k",
                    "ach_per_h", "solar_aperture", "c_air_j_k", "c_env_j_k",
                    "q_nominal_w"});
        BuildingParams& p = cfg.building;
        p.floor_area = get_double(b, "building", "floor_area_m2", p.floor_area);
        p.ceiling_height =
            get_double(b, "building", "ceiling_height_m", p.ceiling_height);
        p.u_ext = get_double(b, "building", "u_ext_w_m2k", p.u_ext);
        p.envelope_area =
            get_double(b, "building", "envelope_area_m2", p.envelope_area);
        p.window_area =
            get_double(b, "building", "window_area_m2", p.window_area);
        p.u_window = get_double(b, "building", "u_window_w_m2k", p.u_window);
        p.ach = get_double(b, "building", "ach_per_h", p.ach);
        p.solar_aperture =
            get_double(b, "building", "solar_aperture", p.solar_aperture);
        p.c_air = get_double(b, "building", "c_air_j_k", p.c_air);
        p.c_env = get_double(b, "building", "c_env_j_k", p.c_env);
        p.q_nominal = get_double(b, "building", "q_nominal_w", p.q_nominal);
    }

    if (root.contains("weather")) {
        const json& w = root.at("weather");
        const std::string kind = get_string(w, "weather", "kind", "synthetic");
        if (kind == "synthetic") {
            check_keys(w, "weather",
                       {"kind", "t_mean_c", "t_annual_amp_k", "t_diurnal_amp_k",
                        "solar_peak_wm2", "coldest_day"});
            cfg.weather_from_file = false;
            SyntheticWeather& s = cfg.synthetic_weather;
            s.t_mean = get_double(w, "weather", "t_mean_c", s.t_mean);
            s.t_annual_amp =
                get_double(w, "weather", "t_annual_amp_k", s.t_annual_amp);
            s.t_diurnal_amp =
                get_double(w, "weather", "t_diurnal_amp_k", s.t_diurnal_amp);
            s.solar_peak =
                get_double(w, "weather", "solar_peak_wm2", s.solar_peak);
            s.coldest_day = static_cast<int>(
                get_int(w, "weather", "coldest_day", s.coldest_day));
        } else if (kind == "file") {
            check_keys(w, "weather", {"kind", "path", "columns"});
            cfg.weather_from_file = true;
            cfg.weather_path = get_string(w, "weather", "path", "");
            if (cfg.weather_path.empty())
                throw ConfigError("weather.path: required for file weather");
            if (w.contains("columns")) {
                const json& c = w.at("columns");
                check_keys(c, "weather.columns", {"time", "t_out", "solar"});
                cfg.weather_columns.time = get_string(
                    c, "weather.columns", "time", cfg.weather_columns.time);
                cfg.weather_columns.t_out = get_string(
                    c, "weather.columns", "t_out", cfg.weather_columns.t_out);
                cfg.weather_columns.solar = get_string(
                    c, "weather.columns", "solar", cfg.weather_columns.solar);
            }
        } else {
            throw ConfigError("weather.kind: expected synthetic|file");
        }
    }

    if (root.contains("gains")) {
        const json& g = root.at("gains");
        check_keys(g, "gains", {"weekday_w", "weekend_w"});
        if (g.contains("weekday_w"))
            cfg.gains.weekday_w =
                parse_profile<24>(g.at("weekday_w"), "gains.weekday_w");
        if (g.contains("weekend_w"))
            cfg.gains.weekend_w =
                parse_profile<24>(g.at("weekend_w"), "gains.weekend_w");
        cfg.gains.validate();
    }

    if (root.contains("control")) {
        const json& c = root.at("control");
        check_keys(c, "control", {"kind", "setpoint_c", "kp", "ki", "band_k"});
        cfg.control_kind = get_string(c, "control", "kind", cfg.control_kind);
        if (cfg.control_kind != "pi" && cfg.control_kind != "hysteresis" &&
            cfg.control_kind != "walker")
            throw ConfigError("control.kind: expected pi|hysteresis|walker");
        const double setpoint =
            get_double(c, "control", "setpoint_c", cfg.pi.setpoint);
        cfg.pi.setpoint = setpoint;
        cfg.hysteresis.setpoint = setpoint;
        cfg.pi.kp = get_double(c, "control", "kp", cfg.pi.kp);
        cfg.pi.ki = get_double(c, "control", "ki", cfg.pi.ki);
        cfg.hysteresis.band =
            get_double(c, "control", "band_k", cfg.hysteresis.band);
        if (cfg.pi.kp < 0.0 || cfg.pi.ki < 0.0)
            throw ConfigError("control.kp/control.ki must be >= 0");
        if (!(cfg.hysteresis.band > 0.0))
            throw ConfigError("control.band_k must be positive");
    }

    if (root.contains("walker")) {
        const json& w = root.at("walker");
        check_keys(w, "walker",
                   {"kind", "poisson", "sinusoid", "ramp", "mixed"});
        cfg.walker_kind = get_string(w, "walker", "kind", cfg.walker_kind);
        if (cfg.walker_kind != "poisson" && cfg.walker_kind != "sinusoid" &&
            cfg.walker_kind != "ramp" && cfg.walker_kind != "mixed")
            throw ConfigError(
                "walker.kind: expected poisson|sinusoid|ramp|mixed");
        if (w.contains("poisson")) {
            const json& p = w.at("poisson");
            check_keys(p, "walker.poisson", {"lam", "level_low", "level_high"});
            cfg.poisson_walker.lam =
                get_double(p, "walker.poisson", "lam", cfg.poisson_walker.lam);
            cfg.poisson_walker.level_low = get_double(
                p, "walker.poisson", "level_low", cfg.poisson_walker.level_low);
            cfg.poisson_walker.level_high =
                get_double(p, "walker.poisson", "level_high",
                           cfg.poisson_walker.level_high);
        }
        if (w.contains("sinusoid")) {
            const json& s = w.at("sinusoid");
            check_keys(s, "walker.sinusoid", {"freq", "amp", "steady"});
            if (s.contains("freq"))
                cfg.sinusoid_walker.freq_dist =
                    parse_int_dist(s.at("freq"), "walker.sinusoid.freq");
            if (s.contains("amp"))
                cfg.sinusoid_walker.amp_dist =
                    parse_real_dist(s.at("amp"), "walker.sinusoid.amp");
            if (s.contains("steady"))
                cfg.sinusoid_walker.steady_dist =
                    parse_int_dist(s.at("steady"), "walker.sinusoid.steady");
        }
        if (w.contains("ramp")) {
            const json& r = w.at("ramp");
            check_keys(r, "walker.ramp", {"freq", "steady"});
            if (r.contains("freq"))
                cfg.ramp_walker.freq_dist =
                    parse_int_dist(r.at("freq"), "walker.ramp.freq");
            if (r.contains("steady"))
                cfg.ramp_walker.steady_dist =
                    parse_int_dist(r.at("steady"), "walker.ramp.steady");
        }
        if (w.contains("mixed")) {
            const json& m = w.at("mixed");
            check_keys(m, "walker.mixed", {"components", "segment_len"});
            if (m.contains("components")) {
                cfg.mixed_components =
                    m.at("components").get<std::vector<std::string>>();
                if (cfg.mixed_components.empty())
                    throw ConfigError(
                        "walker.mixed.components must not be empty");
                for (const auto& name : cfg.mixed_components)
                    if (name != "poisson" && name != "sinusoid" &&
                        name != "ramp")
                        throw ConfigError("walker.mixed.components: unknown "
                                          "walker '" +
                                          name + "'");
            }
            if (m.contains("segment_len"))
                cfg.mixed_segment_len = parse_int_dist(
                    m.at("segment_len"), "walker.mixed.segment_len");
        }
    }

    if (root.contains("run")) {
        const json& r = root.at("run");
        check_keys(r, "run", {"start_time_s", "stop_time_s", "dt_s", "initial"});
        cfg.start_time_s =
            get_int(r, "run", "start_time_s", cfg.start_time_s);
        cfg.stop_time_s = get_int(r, "run", "stop_time_s", cfg.stop_time_s);
        cfg.dt_s = get_int(r, "run", "dt_s", cfg.dt_s);
        if (r.contains("initial")) {
            const json& init = r.at("initial");
            if (init.is_string()) {
                if (init.get<std::string>() != "steady")
                    throw ConfigError("run.initial: expected \"steady\" or an "
                                      "object with t_air_c/t_env_c");
                cfg.initial.reset();
            } else {
                check_keys(init, "run.initial", {"t_air_c", "t_env_c"});
                cfg.initial = ThermalState{
                    get_double(init, "run.initial", "t_air_c", 20.0),
                    get_double(init, "run.initial", "t_env_c", 20.0)};
            }
        }
    }

    if (root.contains("variation")) {
        const json& v = root.at("variation");
        check_keys(v, "variation",
                   {"distributions", "converters", "sizing", "grid_cap"});
        if (v.contains("distributions")) {
            const json& d = v.at("distributions");
            if (!d.is_object())
                throw ConfigError("variation.distributions: expected an "
                                  "object keyed by parameter name");
            for (const auto& [name, dj] : d.items()) {
                resolve_parameter(name); // rejects unknown names
                cfg.variation.distributions.emplace(
                    name, parse_distribution(
                              dj, "variation.distributions." + name));
            }
        }
        if (v.contains("converters"))
            cfg.variation.converters =
                v.at("converters").get<std::vector<std::string>>();
        if (v.contains("sizing")) {
            const json& s = v.at("sizing");
            check_keys(s, "variation.sizing",
                       {"design_delta_t_k", "design_margin"});
            cfg.variation.sizing.design_delta_t =
                get_double(s, "variation.sizing", "design_delta_t_k",
                           cfg.variation.sizing.design_delta_t);
            cfg.variation.sizing.design_margin =
                get_double(s, "variation.sizing", "design_margin",
                           cfg.variation.sizing.design_margin);
        }
        cfg.variation.grid_cap = static_cast<std::size_t>(get_int(
            v, "variation", "grid_cap",
            static_cast<std::int64_t>(cfg.variation.grid_cap)));
        cfg.variation.validate();
    }

    if (root.contains("coverage")) {
        const json& c = root.at("coverage");
        check_keys(c, "coverage",
                   {"temp_min_c", "temp_max_c", "n_temp_bins", "n_signal_bins"});
        cfg.coverage.temp_min =
            get_double(c, "coverage", "temp_min_c", cfg.coverage.temp_min);
        cfg.coverage.temp_max =
            get_double(c, "coverage", "temp_max_c", cfg.coverage.temp_max);
        cfg.coverage.n_temp_bins = static_cast<int>(
            get_int(c, "coverage", "n_temp_bins", cfg.coverage.n_temp_bins));
        cfg.coverage.n_signal_bins = static_cast<int>(get_int(
            c, "coverage", "n_signal_bins", cfg.coverage.n_signal_bins));
    }

    if (root.contains("eval")) {
        const json& e = root.at("eval");
        check_keys(e, "eval",
                   {"lookback", "channels", "ridge_lambda", "actions",
                    "eps_k", "precondition_hold_h"});
        cfg.eval.features.lookback = static_cast<int>(
            get_int(e, "eval", "lookback", cfg.eval.features.lookback));
        if (e.contains("channels")) {
            cfg.eval.features.channels.clear();
            for (const auto& name :
                 e.at("channels").get<std::vector<std::string>>())
                cfg.eval.features.channels.push_back(channel_from_name(name));
        }
        cfg.eval.ridge_lambda =
            get_double(e, "eval", "ridge_lambda", cfg.eval.ridge_lambda);
        if (e.contains("actions"))
            cfg.eval.actions = e.at("actions").get<std::vector<double>>();
        cfg.eval.eps_k = get_double(e, "eval", "eps_k", cfg.eval.eps_k);
        cfg.eval.precondition_hold_h = get_double(
            e, "eval", "precondition_hold_h", cfg.eval.precondition_hold_h);
        cfg.eval.validate();
    }

    cfg.validate();
    return cfg;
}

void ProjectConfig::validate() const {
    thermex::validate(building);
    gains.validate();
    eval.validate();
    variation.validate();
    thermex::validate(poisson_walker);
    thermex::validate(sinusoid_walker);
    thermex::validate(ramp_walker);
    if (dt_s <= 0)
        throw ConfigError("run.dt_s must be positive");
    if (stop_time_s <= start_time_s)
        throw ConfigError("run.stop_time_s must be after run.start_time_s");
    if ((stop_time_s - start_time_s) % dt_s != 0)
        throw ConfigError("run window must be divisible by run.dt_s");
    if (!(coverage.temp_min < coverage.temp_max) ||
        coverage.n_temp_bins < 1 || coverage.n_signal_bins < 1)
        throw ConfigError("coverage: invalid grid");
}

ProjectConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open " + path.string());
    json root;
    try {
        root = json::parse(in, nullptr, /*allow_exceptions=*/true,
                           /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError("config: " + path.string() + ": " + e.what());
    }
    return parse_config(root);
}

json to_json(const ProjectConfig& cfg) {
    json root;
    root["building"] = json{{"floor_area_m2", cfg.building.floor_area},
                            {"ceiling_height_m", cfg.building.ceiling_height},
                            {"u_ext_w_m2k", cfg.building.u_ext},
                            {"envelope_area_m2", cfg.building.envelope_area},
                            {"window_area_m2", cfg.building.window_area},
                            {"u_window_w_m2k", cfg.building.u_window},
                            {"ach_per_h", cfg.building.ach},
                            {"solar_aperture", cfg.building.solar_aperture},
                            {"c_air_j_k", cfg.building.c_air},
                            {"c_env_j_k", cfg.building.c_env},
                            {"q_nominal_w", cfg.building.q_nominal}};
    if (cfg.weather_from_file) {
        root["weather"] =
            json{{"kind", "file"},
                 {"path", cfg.weather_path.string()},
                 {"columns", json{{"time", cfg.weather_columns.time},
                                  {"t_out", cfg.weather_columns.t_out},
                                  {"solar", cfg.weather_columns.solar}}}};
    } else {
        root["weather"] =
            json{{"kind", "synthetic"},
                 {"t_mean_c", cfg.synthetic_weather.t_mean},
                 {"t_annual_amp_k", cfg.synthetic_weather.t_annual_amp},
                 {"t_diurnal_amp_k", cfg.synthetic_weather.t_diurnal_amp},
                 {"solar_peak_wm2", cfg.synthetic_weather.solar_peak},
                 {"coldest_day", cfg.synthetic_weather.coldest_day}};
    }
    root["gains"] = json{{"weekday_w", cfg.gains.weekday_w},
                         {"weekend_w", cfg.gains.weekend_w}};
    root["control"] = json{{"kind", cfg.control_kind},
                           {"setpoint_c", cfg.pi.setpoint},
                           {"kp", cfg.pi.kp},
                           {"ki", cfg.pi.ki},
                           {"band_k", cfg.hysteresis.band}};
    root["walker"] =
        json{{"kind", cfg.walker_kind},
             {"poisson", json{{"lam", cfg.poisson_walker.lam},
                              {"level_low", cfg.poisson_walker.level_low},
                              {"level_high", cfg.poisson_walker.level_high}}},
             {"sinusoid",
              json{{"freq", int_dist_to_json(cfg.sinusoid_walker.freq_dist)},
                   {"amp", real_dist_to_json(cfg.sinusoid_walker.amp_dist)},
                   {"steady",
                    int_dist_to_json(cfg.sinusoid_walker.steady_dist)}}},
             {"ramp",
              json{{"freq", int_dist_to_json(cfg.ramp_walker.freq_dist)},
                   {"steady", int_dist_to_json(cfg.ramp_walker.steady_dist)}}},
             {"mixed", json{{"components", cfg.mixed_components},
                            {"segment_len",
                             int_dist_to_json(cfg.mixed_segment_len)}}}};
    json run{{"start_time_s", cfg.start_time_s},
             {"stop_time_s", cfg.stop_time_s},
             {"dt_s", cfg.dt_s}};
    if (cfg.initial)
        run["initial"] = json{{"t_air_c", cfg.initial->t_air},
                              {"t_env_c", cfg.initial->t_env}};
    else
        run["initial"] = "steady";
    root["run"] = run;

    json dists = json::object();
    for (const auto& [name, dist] : cfg.variation.distributions)
        dists[name] = distribution_to_json(dist);
    root["variation"] =
        json{{"distributions", dists},
             {"converters", cfg.variation.converters},
             {"sizing",
              json{{"design_delta_t_k", cfg.variation.sizing.design_delta_t},
                   {"design_margin", cfg.variation.sizing.design_margin}}},
             {"grid_cap", cfg.variation.grid_cap}};
    root["coverage"] = json{{"temp_min_c", cfg.coverage.temp_min},
                            {"temp_max_c", cfg.coverage.temp_max},
                            {"n_temp_bins", cfg.coverage.n_temp_bins},
                            {"n_signal_bins", cfg.coverage.n_signal_bins}};
    json channels = json::array();
    for (const Channel c : cfg.eval.features.channels)
        channels.push_back(channel_name(c));
    root["eval"] = json{{"lookback", cfg.eval.features.lookback},
                        {"channels", channels},
                        {"ridge_lambda", cfg.eval.ridge_lambda},
                        {"actions", cfg.eval.actions},
                        {"eps_k", cfg.eval.eps_k},
                        {"precondition_hold_h",
                         cfg.eval.precondition_hold_h}};
    return root;
}

namespace {

std::string number_text(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string profile_text(const std::array<double, 24>& profile) {
    std::string out = "[";
    for (std::size_t i = 0; i < profile.size(); ++i) {
        if (i)
            out += ", ";
        out += number_text(profile[i]);
    }
    out += "]";
    return out;
}

} // namespace

std::string default_config_text() {
    const BuildingParams p = BuildingParams::standard();
    const GainSchedule g = GainSchedule::standard();
    std::ostringstream out;
    out <<
        "{\n"
        "  // Single-zone building envelope and heater. The heater size below\n"
        "  // equals what the size_heater converter computes for these values.\n"
        "  \"building\": {\n"
        "    \"floor_area_m2\": 150.0,\n"
        "    \"ceiling_height_m\": 2.5,\n"
        "    \"u_ext_w_m2k\": 0.8,        // exterior wall U-value (alias: UExt)\n"
        "    \"envelope_area_m2\": 280.0, // opaque + glazed envelope\n"
        "    \"window_area_m2\": 30.0,\n"
        "    \"u_window_w_m2k\": 1.3,\n"
        "    \"ach_per_h\": 0.5,          // ventilation air changes per hour\n"
        "    \"solar_aperture\": 0.6,     // fraction of irradiance admitted\n"
        "    \"c_air_j_k\": 1e7,          // zone air + furnishings capacitance\n"
        "    \"c_env_j_k\": 8e7,          // envelope mass capacitance\n"
        "    \"q_nominal_w\": " << number_text(p.q_nominal) << "\n"
        "  },\n"
        "\n"
        "  // Boundary conditions: two-sinusoid synthetic climate (annual +\n"
        "  // diurnal cycle). Midnight on day 32 (Feb 1) sits at ~0 degC with\n"
        "  // no sun. Switch kind to \"file\" and give path/columns for CSV\n"
        "  // weather (header: time_s,t_out_c,solar_wm2).\n"
        "  \"weather\": {\n"
        "    \"kind\": \"synthetic\",\n"
        "    \"t_mean_c\": 9.0,\n"
        "    \"t_annual_amp_k\": 7.0,\n"
        "    \"t_diurnal_amp_k\": 3.0,\n"
        "    \"solar_peak_wm2\": 600.0,\n"
        "    \"coldest_day\": 32\n"
        "  },\n"
        "\n"
        "  // Hourly internal gains (W), weekday and weekend profiles.\n"
        "  \"gains\": {\n"
        "    \"weekday_w\": " << profile_text(g.weekday_w) << ",\n"
        "    \"weekend_w\": " << profile_text(g.weekend_w) << "\n"
        "  },\n"
        "\n"
        "  // kind: pi | hysteresis | walker. kp/ki apply to pi, band_k to\n"
        "  // hysteresis; walker picks the excitation configured below.\n"
        "  \"control\": {\n"
        "    \"kind\": \"pi\",\n"
        "    \"setpoint_c\": 22.0,\n"
        "    \"kp\": 0.4,\n"
        "    \"ki\": 1e-4,\n"
        "    \"band_k\": 0.5\n"
        "  },\n"
        "\n"
        "  // Excitation walkers. kind: poisson | sinusoid | ramp | mixed.\n"
        "  // Distributions: {\"kind\":\"constant\",\"value\":n} |\n"
        "  // {\"kind\":\"uniform\",\"lo\":a,\"hi\":b} | {\"kind\":\"poisson\",\"lam\":m}.\n"
        "  \"walker\": {\n"
        "    \"kind\": \"ramp\",\n"
        "    \"poisson\": {\n"
        "      \"lam\": 8.0,        // mean hold, steps (2 h at 900 s)\n"
        "      \"level_low\": 0.0,\n"
        "      \"level_high\": 1.0\n"
        "    },\n"
        "    \"sinusoid\": {\n"
        "      \"freq\": {\"kind\": \"uniform\", \"lo\": 8, \"hi\": 96},  // steps/period\n"
        "      \"amp\": {\"kind\": \"uniform\", \"lo\": 0.2, \"hi\": 1.0},\n"
        "      \"steady\": {\"kind\": \"poisson\", \"lam\": 4.0}        // hold steps\n"
        "    },\n"
        "    \"ramp\": {\n"
        "      \"freq\": {\"kind\": \"uniform\", \"lo\": 4, \"hi\": 48},  // steps/leg\n"
        "      \"steady\": {\"kind\": \"poisson\", \"lam\": 8.0}\n"
        "    },\n"
        "    \"mixed\": {\n"
        "      \"components\": [\"poisson\", \"sinusoid\", \"ramp\"],\n"
        "      \"segment_len\": {\"kind\": \"uniform\", \"lo\": 96, \"hi\": 672}\n"
        "    }\n"
        "  },\n"
        "\n"
        "  // Simulation window, seconds since Jan 1 of year 1 (365-day\n"
        "  // years). The default covers one full year at 15-minute steps.\n"
        "  // initial: \"steady\" (free-float equilibrium at the start\n"
        "  // boundary) or {\"t_air_c\": .., \"t_env_c\": ..}.\n"
        "  \"run\": {\n"
        "    \"start_time_s\": 0,\n"
        "    \"stop_time_s\": 31536000,\n"
        "    \"dt_s\": 900,\n"
        "    \"initial\": \"steady\"\n"
        "  },\n"
        "\n"
        "  // Population sampling for `thermex batch`. Example distribution:\n"
        "  // \"distributions\": {\"UExt\": {\"kind\": \"gauss\", \"mu\": 0.8,\n"
        "  //                            \"sigma\": 0.5, \"bounds\": [0.1, 2.5]}}\n"
        "  // Converters run in order after sampling; size_heater recomputes\n"
        "  // q_nominal_w from the sampled envelope.\n"
        "  \"variation\": {\n"
        "    \"distributions\": {},\n"
        "    \"converters\": [\"volume\", \"size_heater\"],\n"
        "    \"sizing\": {\"design_delta_t_k\": 35.0, \"design_margin\": 1.2},\n"
        "    \"grid_cap\": 100000\n"
        "  },\n"
        "\n"
        "  // State-space coverage grid: indoor temperature x heating signal,\n"
        "  // 0.25 K bins spanning the range excitation actually reaches.\n"
        "  \"coverage\": {\n"
        "    \"temp_min_c\": 5.0,\n"
        "    \"temp_max_c\": 85.0,\n"
        "    \"n_temp_bins\": 320,\n"
        "    \"n_signal_bins\": 21\n"
        "  },\n"
        "\n"
        "  // Next-step predictor: lookback window, input channels, ridge\n"
        "  // strength, evaluation action grid, direction deadband (K), and\n"
        "  // how long the Feb-1 preconditioning runs hold each constant\n"
        "  // level before the evaluation instant.\n"
        "  \"eval\": {\n"
        "    \"lookback\": 96,\n"
        "    \"channels\": [\"t_air\", \"control_signal\", \"t_out\", \"solar\"],\n"
        "    \"ridge_lambda\": 10.0,\n"
        "    \"actions\": [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0],\n"
        "    \"eps_k\": 0.01,\n"
        "    \"precondition_hold_h\": 12.0\n"
        "  }\n"
        "}\n";
    return out.str();
}

RunConfig make_run_config(const ProjectConfig& cfg, std::uint64_t seed) {
    RunConfig run;
    run.start_time_s = cfg.start_time_s;
    run.stop_time_s = cfg.stop_time_s;
    run.dt_s = cfg.dt_s;
    run.building = cfg.building;
    run.weather = cfg.weather_from_file
                      ? WeatherModel::from_csv(cfg.weather_path,
                                               cfg.weather_columns)
                      : WeatherModel::synthetic(cfg.synthetic_weather);
    run.gains = cfg.gains;
    run.initial = cfg.initial;
    run.seed = seed;
    if (cfg.control_kind == "pi")
        run.control = cfg.pi;
    else if (cfg.control_kind == "hysteresis")
        run.control = cfg.hysteresis;
    else
        run.control = make_walker_source(cfg);
    return run;
}

WalkerSource make_walker_source(const ProjectConfig& cfg) {
    if (cfg.walker_kind == "poisson")
        return WalkerSource{cfg.poisson_walker};
    if (cfg.walker_kind == "sinusoid")
        return WalkerSource{cfg.sinusoid_walker};
    if (cfg.walker_kind == "ramp")
        return WalkerSource{cfg.ramp_walker};
    MixedWalkConfig mixed;
    mixed.segment_len_dist = cfg.mixed_segment_len;
    for (const auto& name : cfg.mixed_components) {
        if (name == "poisson")
            mixed.components.emplace_back(cfg.poisson_walker);
        else if (name == "sinusoid")
            mixed.components.emplace_back(cfg.sinusoid_walker);
        else
            mixed.components.emplace_back(cfg.ramp_walker);
    }
    return WalkerSource{mixed};
}

} // namespace thermex
