#include <doctest.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "thermex/engine.hpp"
#include "thermex/errors.hpp"

using namespace thermex;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunConfig small_run(std::int64_t steps = 4) {
    RunConfig cfg;
    cfg.stop_time_s = cfg.start_time_s + steps * cfg.dt_s;
    return cfg;
}

} // namespace

TEST_CASE("run: a window of one dt yields exactly one row") {
    RunConfig cfg = small_run(1);
    const Trace t = run(cfg);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0].time_s == double(cfg.start_time_s + cfg.dt_s));
}

TEST_CASE("run: row times advance by dt and heat power tracks the signal") {
    RunConfig cfg = small_run(8);
    cfg.control = Signal{std::vector<double>(8, 0.25), 900};
    const Trace t = run(cfg);
    REQUIRE(t.rows.size() == 8);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (i > 0)
            CHECK(t.rows[i].time_s - t.rows[i - 1].time_s ==
                  doctest::Approx(900.0));
        CHECK(t.rows[i].control_signal == 0.25);
        CHECK(std::abs(t.rows[i].heat_power_w -
                       0.25 * cfg.building.q_nominal) < 1e-9);
    }
}

TEST_CASE("run: signal shorter than the run fails before stepping") {
    RunConfig cfg = small_run(10);
    cfg.control = Signal{std::vector<double>(5, 0.0), 900};
    CHECK_THROWS_AS((void)run(cfg), ConfigError);
}

TEST_CASE("run: constant boundary free float converges monotonically to "
          "steady state") {
    RunConfig cfg = small_run(2000); // ~500 h, several envelope time constants
    // constant boundary: flat weather, no sun, no gains
    cfg.weather = WeatherModel::synthetic(
        SyntheticWeather{5.0, 0.0, 0.0, 0.0, 32});
    cfg.gains = GainSchedule{}; // all zero
    cfg.initial = ThermalState{25.0, 25.0};
    cfg.control = Signal{std::vector<double>(2000, 0.0), 900};
    const Trace t = run(cfg);
    const ThermalState ss =
        steady_state(cfg.building, BoundarySample{5.0, 0.0, 0.0}, 0.0);
    double prev = t.rows.front().t_air_c;
    for (std::size_t i = 1; i < t.rows.size(); ++i) {
        CHECK(t.rows[i].t_air_c <= prev + 1e-12); // cooling toward ambient
        prev = t.rows[i].t_air_c;
    }
    CHECK(std::abs(t.rows.back().t_air_c - ss.t_air) < 0.05);
}

TEST_CASE("run: default initial state is the free-float equilibrium") {
    RunConfig cfg = small_run(1);
    cfg.weather = WeatherModel::synthetic(
        SyntheticWeather{5.0, 0.0, 0.0, 0.0, 32});
    cfg.gains = GainSchedule{};
    cfg.control = Signal{std::vector<double>(1, 0.0), 900};
    const Trace t = run(cfg);
    // started at equilibrium with u = 0, so nothing moves
    CHECK(t.rows[0].t_air_c == doctest::Approx(5.0).epsilon(1e-9));
    CHECK(t.rows[0].t_env_c == doctest::Approx(5.0).epsilon(1e-9));
}

TEST_CASE("run: walker control regenerates deterministically from the seed") {
    RunConfig cfg = small_run(200);
    cfg.control = WalkerSource{RampWalkConfig{}};
    cfg.seed = 42;
    const Trace a = run(cfg);
    const Trace b = run(cfg);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].control_signal == b.rows[i].control_signal);
        CHECK(a.rows[i].t_air_c == b.rows[i].t_air_c);
    }
    CHECK(a.meta.control_kind == "walker:ramp");
}

TEST_CASE("energy audit: stored energy equals integrated net flux") {
    // constant boundary window, mixed control levels
    const BuildingParams p = BuildingParams::standard();
    const BoundarySample b{2.0, 150.0, 400.0};
    const Conductances c = derive_conductances(p);
    ThermalState s{12.0, 8.0};
    const double dt = 900.0;
    double energy_in = 0.0;
    const ThermalState s0 = s;
    RngStream rng(5);
    for (int i = 0; i < 200; ++i) {
        const double u = rng.uniform(0.0, 1.0);
        const StepResult r = step_detailed(p, s, b, u, dt);
        const double p_air = u * p.q_nominal + b.internal_gain +
                             p.solar_aperture * p.window_area * b.solar;
        energy_in += dt * (p_air +
                           (c.ua_window + c.ua_vent) * (b.t_out - r.mean_t_air) +
                           c.ua_env_out * (b.t_out - r.mean_t_env));
        s = r.state;
    }
    const double stored =
        p.c_air * (s.t_air - s0.t_air) + p.c_env * (s.t_env - s0.t_env);
    CHECK(std::abs(stored - energy_in) <=
          1e-6 * std::max({std::abs(stored), std::abs(energy_in), 1.0}));
}

TEST_CASE("closed loop: PI settles at the setpoint within 48 h") {
    RunConfig cfg;
    cfg.weather = WeatherModel::synthetic(
        SyntheticWeather{0.0, 0.0, 0.0, 0.0, 32}); // constant 0 degC, no sun
    cfg.gains = GainSchedule{};
    cfg.stop_time_s = 4 * kSecondsPerDay;
    cfg.control = PiConfig{};
    cfg.initial = ThermalState{15.0, 10.0};
    const Trace t = run(cfg);
    // after 48 h every sample stays inside [21.8, 22.2]
    for (const TraceRow& r : t.rows) {
        if (r.time_s <= 2.0 * kSecondsPerDay)
            continue;
        CHECK(r.t_air_c >= 21.8);
        CHECK(r.t_air_c <= 22.2);
    }
}

TEST_CASE("closed loop: hysteresis cycles around the setpoint") {
    RunConfig cfg;
    cfg.weather = WeatherModel::synthetic(
        SyntheticWeather{0.0, 0.0, 0.0, 0.0, 32});
    cfg.gains = GainSchedule{};
    cfg.stop_time_s = 6 * kSecondsPerDay;
    cfg.control = HysteresisConfig{};
    cfg.initial = ThermalState{15.0, 10.0};
    const Trace t = run(cfg);
    double lo = 100.0, hi = -100.0;
    bool saw_on = false, saw_off = false;
    for (const TraceRow& r : t.rows) {
        if (r.time_s <= 2.0 * kSecondsPerDay)
            continue;
        lo = std::min(lo, r.t_air_c);
        hi = std::max(hi, r.t_air_c);
        saw_on = saw_on || r.control_signal == 1.0;
        saw_off = saw_off || r.control_signal == 0.0;
    }
    CHECK(saw_on);
    CHECK(saw_off);
    // the ring must straddle the deadband and stay within the envelope
    // frozen from the closed-loop reference run ([20.948, 23.746]: band 0.5
    // plus the swing a full 900 s step produces at these capacitances)
    CHECK(lo < 21.5);
    CHECK(hi > 22.5);
    CHECK(lo >= 20.9);
    CHECK(hi <= 23.8);
}

TEST_CASE("trace csv round trip is exact; schema errors name the column") {
    RunConfig cfg = small_run(50);
    cfg.control = WalkerSource{PoissonWalkConfig{}};
    cfg.seed = 9;
    const Trace t = run(cfg);

    const fs::path path = fs::temp_directory_path() / "thermex_trace.csv";
    write_trace(t, path);
    const Trace back = read_trace(path);
    REQUIRE(back.rows.size() == t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        CHECK(back.rows[i].time_s == t.rows[i].time_s);
        CHECK(back.rows[i].t_air_c == t.rows[i].t_air_c);
        CHECK(back.rows[i].t_env_c == t.rows[i].t_env_c);
        CHECK(back.rows[i].control_signal == t.rows[i].control_signal);
        CHECK(back.rows[i].heat_power_w == t.rows[i].heat_power_w);
    }
    CHECK(back.meta.seed == 9);
    CHECK(back.meta.control_kind == "walker:poisson");
    CHECK(back.meta.building.q_nominal ==
          doctest::Approx(t.meta.building.q_nominal));

    const fs::path bad = fs::temp_directory_path() / "thermex_bad.csv";
    {
        std::ofstream out(bad, std::ios::binary | std::ios::trunc);
        out << "time_s,t_out_c,solar_wm2,internal_gain_w,control_signal,"
               "heat_power_w,t_air_c\n"; // t_env_c missing
        out << "900,0,0,0,0,0,20\n";
    }
    CHECK_THROWS_WITH_AS((void)read_trace(bad), doctest::Contains("t_env_c"),
                         RunError);
}

TEST_CASE("write_trace twice produces byte-identical files") {
    RunConfig cfg = small_run(300);
    cfg.control = WalkerSource{SinusoidWalkConfig{}};
    cfg.seed = 4;
    const Trace t = run(cfg);
    const fs::path p1 = fs::temp_directory_path() / "thermex_det1.csv";
    const fs::path p2 = fs::temp_directory_path() / "thermex_det2.csv";
    write_trace(t, p1);
    write_trace(run(cfg), p2);
    CHECK(slurp(p1) == slurp(p2));
    CHECK(slurp(fs::path(p1.string() + ".meta.json")) ==
          slurp(fs::path(p2.string() + ".meta.json")));
}

TEST_CASE("a year-long trace round-trips losslessly and quickly") {
    RunConfig cfg; // full year, PI
    cfg.seed = 0;
    const Trace t = run(cfg);
    REQUIRE(t.rows.size() == 35040);
    const fs::path path = fs::temp_directory_path() / "thermex_year.csv";
    const auto start = std::chrono::steady_clock::now();
    write_trace(t, path);
    const Trace back = read_trace(path);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    REQUIRE(back.rows.size() == t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); i += 997) {
        CHECK(back.rows[i].t_air_c == t.rows[i].t_air_c);
        CHECK(back.rows[i].heat_power_w == t.rows[i].heat_power_w);
    }
    // intended to be well under a second; generous bound to avoid flakes
    CHECK(elapsed < 5.0);
}

TEST_CASE("batch: n = 1 matches a single run built the same way") {
    VariationSpec spec;
    spec.distributions.emplace(
        "UExt", Distribution::gauss(0.8, 0.5).truncated(0.1, 2.5));
    RunConfig tmpl = small_run(20);
    tmpl.control = WalkerSource{RampWalkConfig{}};

    const auto outcomes = batch_run(1, tmpl, spec, 123, 1);
    REQUIRE(outcomes.size() == 1);
    REQUIRE(outcomes[0].trace.has_value());

    RngStream rng(123);
    RunConfig cfg = tmpl;
    cfg.seed = 123;
    cfg.building = sample_building(spec, tmpl.building, rng);
    const Trace expect = run_with_rng(cfg, rng);
    CHECK(outcomes[0].trace->rows.size() == expect.rows.size());
    for (std::size_t i = 0; i < expect.rows.size(); ++i)
        CHECK(outcomes[0].trace->rows[i].t_air_c == expect.rows[i].t_air_c);
}

TEST_CASE("batch: 40 sampled buildings have 40 distinct u_ext values") {
    VariationSpec spec;
    spec.distributions.emplace(
        "UExt", Distribution::gauss(0.8, 0.5).truncated(0.1, 2.5));
    RunConfig tmpl = small_run(4);
    const auto outcomes = batch_run(40, tmpl, spec, 7, 4);
    REQUIRE(outcomes.size() == 40);
    std::set<double> u_values;
    for (const auto& o : outcomes) {
        REQUIRE(o.trace.has_value());
        u_values.insert(o.trace->meta.building.u_ext);
    }
    CHECK(u_values.size() == 40);
}

TEST_CASE("batch: outputs are independent of the worker count") {
    VariationSpec spec;
    spec.distributions.emplace("floor_area",
                               Distribution::uniform(80.0, 260.0));
    RunConfig tmpl = small_run(30);
    tmpl.control = WalkerSource{MixedWalkConfig::all_defaults()};

    const auto one = batch_run(8, tmpl, spec, 2000, 1);
    const auto eight = batch_run(8, tmpl, spec, 2000, 8);
    REQUIRE(one.size() == eight.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        REQUIRE(one[i].trace.has_value());
        REQUIRE(eight[i].trace.has_value());
        CHECK(one[i].seed == eight[i].seed);
        REQUIRE(one[i].trace->rows.size() == eight[i].trace->rows.size());
        for (std::size_t r = 0; r < one[i].trace->rows.size(); ++r) {
            CHECK(one[i].trace->rows[r].t_air_c ==
                  eight[i].trace->rows[r].t_air_c);
            CHECK(one[i].trace->rows[r].control_signal ==
                  eight[i].trace->rows[r].control_signal);
        }
    }
}

TEST_CASE("batch: per-run failures carry the index, others are unaffected") {
    VariationSpec spec;
    // half the draws produce a u_ext above the physical cap
    spec.distributions.emplace("UExt", Distribution::grid({0.8, 9.0}));
    RunConfig tmpl = small_run(4);
    const auto outcomes = batch_run(12, tmpl, spec, 1, 4);
    std::size_t ok = 0, failed = 0;
    for (const auto& o : outcomes) {
        if (o.trace)
            ++ok;
        else {
            ++failed;
            CHECK(o.error.find("run " + std::to_string(o.index)) !=
                  std::string::npos);
            CHECK(o.error.find("u_ext") != std::string::npos);
        }
    }
    CHECK(ok + failed == 12);
    CHECK(ok > 0);
    CHECK(failed > 0);
}
