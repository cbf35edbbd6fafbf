#include "thermex/engine.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>
#include <thread>

#include <nlohmann/json.hpp>

#include "thermex/errors.hpp"

namespace thermex {

using nlohmann::json;

std::string control_kind_name(const ControlSource& src) {
    struct Visitor {
        std::string operator()(const PiConfig&) const { return "pi"; }
        std::string operator()(const HysteresisConfig&) const {
            return "hysteresis";
        }
        std::string operator()(const Signal&) const { return "signal"; }
        std::string operator()(const WalkerSource& w) const {
            struct Inner {
                std::string operator()(const PoissonWalkConfig&) const {
                    return "walker:poisson";
                }
                std::string operator()(const SinusoidWalkConfig&) const {
                    return "walker:sinusoid";
                }
                std::string operator()(const RampWalkConfig&) const {
                    return "walker:ramp";
                }
                std::string operator()(const MixedWalkConfig&) const {
                    return "walker:mixed";
                }
            };
            return std::visit(Inner{}, w.config);
        }
    };
    return std::visit(Visitor{}, src);
}

void validate(const RunConfig& cfg) {
    if (cfg.dt_s <= 0)
        throw ConfigError("run.dt_s must be positive");
    if (cfg.stop_time_s <= cfg.start_time_s)
        throw ConfigError("run.stop_time_s must be after run.start_time_s");
    if ((cfg.stop_time_s - cfg.start_time_s) % cfg.dt_s != 0)
        throw ConfigError("run window must be divisible by run.dt_s");
    if (cfg.start_time_s < 0)
        throw ConfigError("run.start_time_s must be >= 0");
    validate(cfg.building);
    cfg.gains.validate();
    if (const auto* sig = std::get_if<Signal>(&cfg.control)) {
        if (sig->values.size() < cfg.num_steps())
            throw ConfigError("control signal is shorter than the run: " +
                              std::to_string(sig->values.size()) + " < " +
                              std::to_string(cfg.num_steps()) + " steps");
        if (sig->step_seconds != cfg.dt_s)
            throw ConfigError("control signal step_seconds does not match "
                              "run.dt_s");
        for (double v : sig->values)
            if (!(v >= 0.0 && v <= 1.0))
                throw ConfigError("control signal values must lie in [0,1]");
    }
}

Trace run(const RunConfig& cfg) {
    RngStream rng(cfg.seed);
    return run_with_rng(cfg, rng);
}

Trace run_with_rng(const RunConfig& cfg, RngStream& rng) {
    validate(cfg);
    const std::size_t n = cfg.num_steps();
    const auto dt = static_cast<double>(cfg.dt_s);

    // Expand a walker source into a concrete signal for this run.
    const Signal* signal = std::get_if<Signal>(&cfg.control);
    Signal generated;
    if (const auto* walker = std::get_if<WalkerSource>(&cfg.control)) {
        generated = std::visit(
            [&](const auto& w) {
                return [&] {
                    using T = std::decay_t<decltype(w)>;
                    if constexpr (std::is_same_v<T, MixedWalkConfig>)
                        return mixed_walk(w, n, rng,
                                          static_cast<int>(cfg.dt_s));
                    else
                        return generate_walk(WalkerConfig{w}, n, rng,
                                             static_cast<int>(cfg.dt_s));
                }();
            },
            walker->config);
        signal = &generated;
    }

    PiState pi_state;
    HysteresisState hyst_state;

    auto boundary_at = [&](double t) {
        const WeatherPoint w = cfg.weather.sample(t);
        return BoundarySample{w.t_out, w.solar, cfg.gains.sample(t)};
    };

    ThermalState state;
    if (cfg.initial) {
        state = *cfg.initial;
    } else {
        state = steady_state(cfg.building,
                             boundary_at(static_cast<double>(cfg.start_time_s)),
                             0.0);
    }

    Trace trace;
    trace.rows.reserve(n);
    trace.meta = TraceMeta{cfg.building, cfg.seed,
                           control_kind_name(cfg.control), cfg.start_time_s,
                           cfg.dt_s};

    for (std::size_t i = 0; i < n; ++i) {
        const double t0 = static_cast<double>(cfg.start_time_s) +
                          static_cast<double>(i) * dt;
        const BoundarySample b = boundary_at(t0);

        double u = 0.0;
        if (signal) {
            u = signal->values[i];
        } else if (const auto* pi = std::get_if<PiConfig>(&cfg.control)) {
            u = pi_step(*pi, pi_state, state.t_air, dt);
        } else if (const auto* hy =
                       std::get_if<HysteresisConfig>(&cfg.control)) {
            u = hysteresis_step(*hy, hyst_state, state.t_air);
        }

        state = step(cfg.building, state, b, u, dt);
        trace.rows.push_back(TraceRow{t0 + dt, b.t_out, b.solar,
                                      b.internal_gain, u,
                                      u * cfg.building.q_nominal, state.t_air,
                                      state.t_env});
    }
    return trace;
}

std::vector<RunOutcome> batch_run(std::size_t n, const RunConfig& tmpl,
                                  const VariationSpec& spec,
                                  std::uint64_t base_seed, int workers) {
    if (n < 1)
        throw ConfigError("batch_run: n must be >= 1");
    if (workers < 1)
        throw ConfigError("batch_run: workers must be >= 1");
    spec.validate();

    std::vector<RunOutcome> out(n);
    std::atomic<std::size_t> next{0};

    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n)
                return;
            RunOutcome& slot = out[i];
            slot.index = i;
            slot.seed = base_seed + i;
            try {
                RngStream rng(slot.seed);
                RunConfig cfg = tmpl;
                cfg.seed = slot.seed;
                cfg.building = sample_building(spec, tmpl.building, rng);
                slot.trace = run_with_rng(cfg, rng);
            } catch (const std::exception& e) {
                slot.error =
                    "run " + std::to_string(i) + ": " + e.what();
            }
        }
    };

    if (workers == 1 || n == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        const int count = std::min<int>(workers, static_cast<int>(n));
        pool.reserve(static_cast<std::size_t>(count));
        for (int w = 0; w < count; ++w)
            pool.emplace_back(work);
        for (auto& th : pool)
            th.join();
    }
    return out;
}

namespace {

void append_number(std::string& out, double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

constexpr const char* kTraceHeader =
    "time_s,t_out_c,solar_wm2,internal_gain_w,control_signal,heat_power_w,"
    "t_air_c,t_env_c";

json building_to_json(const BuildingParams& p) {
    return json{{"floor_area_m2", p.floor_area},
                {"ceiling_height_m", p.ceiling_height},
                {"u_ext_w_m2k", p.u_ext},
                {"envelope_area_m2", p.envelope_area},
                {"window_area_m2", p.window_area},
                {"u_window_w_m2k", p.u_window},
                {"ach_per_h", p.ach},
                {"solar_aperture", p.solar_aperture},
                {"c_air_j_k", p.c_air},
                {"c_env_j_k", p.c_env},
                {"q_nominal_w", p.q_nominal}};
}

BuildingParams building_from_json(const json& j) {
    BuildingParams p;
    p.floor_area = j.at("floor_area_m2").get<double>();
    p.ceiling_height = j.at("ceiling_height_m").get<double>();
    p.u_ext = j.at("u_ext_w_m2k").get<double>();
    p.envelope_area = j.at("envelope_area_m2").get<double>();
    p.window_area = j.at("window_area_m2").get<double>();
    p.u_window = j.at("u_window_w_m2k").get<double>();
    p.ach = j.at("ach_per_h").get<double>();
    p.solar_aperture = j.at("solar_aperture").get<double>();
    p.c_air = j.at("c_air_j_k").get<double>();
    p.c_env = j.at("c_env_j_k").get<double>();
    p.q_nominal = j.at("q_nominal_w").get<double>();
    return p;
}

} // namespace

void write_trace(const Trace& trace, const std::filesystem::path& path) {
    std::string buf;
    buf.reserve(trace.rows.size() * 96 + 128);
    buf += kTraceHeader;
    buf += '\n';
    for (const TraceRow& r : trace.rows) {
        append_number(buf, r.time_s);
        buf += ',';
        append_number(buf, r.t_out_c);
        buf += ',';
        append_number(buf, r.solar_wm2);
        buf += ',';
        append_number(buf, r.internal_gain_w);
        buf += ',';
        append_number(buf, r.control_signal);
        buf += ',';
        append_number(buf, r.heat_power_w);
        buf += ',';
        append_number(buf, r.t_air_c);
        buf += ',';
        append_number(buf, r.t_env_c);
        buf += '\n';
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw RunError("write_trace: cannot open " + path.string());
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out)
        throw RunError("write_trace: short write to " + path.string());

    const json meta{{"building", building_to_json(trace.meta.building)},
                    {"seed", trace.meta.seed},
                    {"control_kind", trace.meta.control_kind},
                    {"start_time_s", trace.meta.start_time_s},
                    {"dt_s", trace.meta.dt_s},
                    {"rows", trace.rows.size()}};
    std::ofstream mout(path.string() + ".meta.json",
                       std::ios::binary | std::ios::trunc);
    if (!mout)
        throw RunError("write_trace: cannot open metadata sidecar for " +
                       path.string());
    mout << meta.dump(2) << '\n';
}

Trace read_trace(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw RunError("read_trace: cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line))
        throw RunError("read_trace: " + path.string() + " is empty");
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
        line.pop_back();
    if (line != kTraceHeader) {
        // Report which expected column is missing for a readable error.
        std::stringstream expected(kTraceHeader);
        std::string col;
        while (std::getline(expected, col, ','))
            if (line.find(col) == std::string::npos)
                throw RunError("read_trace: " + path.string() +
                               " is missing column '" + col + "'");
        throw RunError("read_trace: " + path.string() +
                       " has an unexpected column order; expected header '" +
                       kTraceHeader + "'");
    }

    Trace trace;
    std::size_t row_no = 1;
    while (std::getline(in, line)) {
        ++row_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        TraceRow r{};
        double* fields[8] = {&r.time_s,       &r.t_out_c,
                             &r.solar_wm2,    &r.internal_gain_w,
                             &r.control_signal, &r.heat_power_w,
                             &r.t_air_c,      &r.t_env_c};
        const char* ptr = line.data();
        const char* end = ptr + line.size();
        for (int f = 0; f < 8; ++f) {
            const auto res = std::from_chars(ptr, end, *fields[f]);
            if (res.ec != std::errc{})
                throw RunError("read_trace: row " + std::to_string(row_no) +
                               ": cannot parse field " + std::to_string(f + 1));
            ptr = res.ptr;
            const bool last = f == 7;
            if (!last) {
                if (ptr == end || *ptr != ',')
                    throw RunError("read_trace: row " + std::to_string(row_no) +
                                   ": expected 8 comma-separated fields");
                ++ptr;
            } else if (ptr != end) {
                throw RunError("read_trace: row " + std::to_string(row_no) +
                               ": trailing characters");
            }
        }
        trace.rows.push_back(r);
    }

    const auto meta_path = path.string() + ".meta.json";
    std::ifstream min(meta_path);
    if (min) {
        json meta = json::parse(min);
        trace.meta.building = building_from_json(meta.at("building"));
        trace.meta.seed = meta.at("seed").get<std::uint64_t>();
        trace.meta.control_kind = meta.at("control_kind").get<std::string>();
        trace.meta.start_time_s = meta.at("start_time_s").get<std::int64_t>();
        trace.meta.dt_s = meta.at("dt_s").get<std::int64_t>();
    } else if (trace.rows.size() >= 2) {
        trace.meta.dt_s = static_cast<std::int64_t>(
            std::llround(trace.rows[1].time_s - trace.rows[0].time_s));
        trace.meta.start_time_s = static_cast<std::int64_t>(
            std::llround(trace.rows[0].time_s)) - trace.meta.dt_s;
    }
    return trace;
}

} // namespace thermex
