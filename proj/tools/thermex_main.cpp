// thermex: simulate single-zone building thermal dynamics under feedback
// control or excitation signals, sample building populations, and score
// next-step temperature predictors trained on the generated traces.

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "thermex/config.hpp"
#include "thermex/coverage.hpp"
#include "thermex/engine.hpp"
#include "thermex/errors.hpp"
#include "thermex/eval.hpp"

namespace fs = std::filesystem;
using namespace thermex;

namespace {

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag)
        return *flag;
    if (const char* env = std::getenv("THERMEX_SEED")) {
        std::uint64_t v = 0;
        const char* end = env + std::string_view(env).size();
        const auto res = std::from_chars(env, end, v);
        if (res.ec != std::errc{} || res.ptr != end)
            throw ConfigError(
                "THERMEX_SEED must be a non-negative integer, got '" +
                std::string(env) + "'");
        return v;
    }
    return 0;
}

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

int cmd_init(const std::string& path, bool force) {
    if (fs::exists(path) && !force)
        throw ConfigError("refusing to overwrite existing " + path +
                          " (use --force)");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw RunError("cannot open " + path + " for writing");
    out << default_config_text();
    std::cout << "wrote " << path << "\n";
    return 0;
}

int cmd_generate(const std::string& config_path,
                 const std::optional<std::uint64_t>& seed_flag,
                 const std::string& out_path) {
    const ProjectConfig cfg = load_config(config_path);
    const std::uint64_t seed = resolve_seed(seed_flag);
    RunConfig run_cfg = make_run_config(cfg, seed);
    // A single generate uses the configured building as-is, with only the
    // converter chain applied; population sampling belongs to `batch`.
    run_cfg.building = apply_converters(cfg.building, cfg.variation.converters,
                                        cfg.variation.sizing);
    const Trace trace = run(run_cfg);
    write_trace(trace, out_path);
    std::cout << "wrote " << out_path << " (" << trace.rows.size()
              << " rows, control=" << trace.meta.control_kind
              << ", seed=" << seed << ")\n";
    return 0;
}

int cmd_batch(const std::string& config_path, std::size_t n,
              const std::optional<std::uint64_t>& seed_flag,
              const std::string& out_dir, int workers) {
    const ProjectConfig cfg = load_config(config_path);
    const std::uint64_t base_seed = resolve_seed(seed_flag);
    const RunConfig tmpl = make_run_config(cfg, base_seed);

    fs::create_directories(out_dir);
    const auto outcomes =
        batch_run(n, tmpl, cfg.variation, base_seed, workers);

    std::string index = "index,seed,file,status,u_ext_w_m2k,floor_area_m2,"
                        "q_nominal_w\n";
    std::size_t failed = 0;
    for (const RunOutcome& o : outcomes) {
        const std::string name = "trace_" + std::to_string(o.index) + ".csv";
        index += std::to_string(o.index);
        index += ',';
        index += std::to_string(o.seed);
        index += ',';
        index += name;
        if (o.trace) {
            write_trace(*o.trace, fs::path(out_dir) / name);
            index += ",ok,";
            index += format_double(o.trace->meta.building.u_ext);
            index += ',';
            index += format_double(o.trace->meta.building.floor_area);
            index += ',';
            index += format_double(o.trace->meta.building.q_nominal);
        } else {
            ++failed;
            std::cerr << "error: " << o.error << "\n";
            index += ",failed,,,";
        }
        index += '\n';
    }
    std::ofstream idx(fs::path(out_dir) / "index.csv",
                      std::ios::binary | std::ios::trunc);
    idx << index;
    std::cout << "wrote " << (n - failed) << "/" << n << " traces to "
              << out_dir << "\n";
    if (failed)
        throw RunError(std::to_string(failed) + " of " + std::to_string(n) +
                       " runs failed");
    return 0;
}

int cmd_coverage(const std::optional<std::string>& config_path,
                 const std::vector<std::string>& trace_paths,
                 const std::optional<std::string>& bins,
                 const std::optional<std::string>& temp_range,
                 const std::string& out_dir) {
    CoverageGrid grid;
    if (config_path)
        grid = load_config(*config_path).coverage;
    if (bins) {
        const auto x = bins->find('x');
        int t = 0, s = 0;
        bool ok = x != std::string::npos;
        if (ok) {
            const char* b = bins->data();
            auto r1 = std::from_chars(b, b + x, t);
            auto r2 = std::from_chars(b + x + 1, b + bins->size(), s);
            ok = r1.ec == std::errc{} && r2.ec == std::errc{} &&
                 r1.ptr == b + x && r2.ptr == b + bins->size();
        }
        if (!ok || t < 1 || s < 1)
            throw ConfigError("--bins: expected TxS, e.g. 80x21");
        grid.n_temp_bins = t;
        grid.n_signal_bins = s;
    }
    if (temp_range) {
        const auto c = temp_range->find(':');
        double lo = 0, hi = 0;
        bool ok = c != std::string::npos;
        if (ok) {
            const char* b = temp_range->data();
            auto r1 = std::from_chars(b, b + c, lo);
            auto r2 = std::from_chars(b + c + 1, b + temp_range->size(), hi);
            ok = r1.ec == std::errc{} && r2.ec == std::errc{} && lo < hi;
        }
        if (!ok)
            throw ConfigError("--temp-range: expected LO:HI, e.g. 10:30");
        grid.temp_min = lo;
        grid.temp_max = hi;
    }

    fs::create_directories(out_dir);
    std::vector<std::string> names;
    std::vector<CoverageMap> maps;
    for (const auto& path : trace_paths) {
        const Trace trace = read_trace(path);
        maps.push_back(bin_trace(trace, grid));
        names.push_back(fs::path(path).stem().string());
        const auto out = fs::path(out_dir) / (names.back() + ".coverage.csv");
        write_coverage_csv(maps.back(), out);
        std::cout << names.back()
                  << ": occupied_fraction=" << occupied_fraction(maps.back())
                  << " signal_axis=" << signal_axis_fraction(maps.back())
                  << " overflow=" << maps.back().overflow << "\n";
    }

    if (maps.size() > 1) {
        std::string table = "a,b,jaccard,histogram_intersection\n";
        for (std::size_t i = 0; i < maps.size(); ++i)
            for (std::size_t j = i + 1; j < maps.size(); ++j) {
                table += names[i] + ',' + names[j] + ',' +
                         format_double(overlap(maps[i], maps[j])) + ',' +
                         format_double(
                             histogram_intersection(maps[i], maps[j])) +
                         '\n';
            }
        std::ofstream out(fs::path(out_dir) / "overlap.csv",
                          std::ios::binary | std::ios::trunc);
        out << table;
        std::cout << "wrote pairwise overlaps to " << out_dir
                  << "/overlap.csv\n";
    }
    return 0;
}

int cmd_eval(const std::string& config_path, const std::string& trace_path,
             const std::string& out_dir) {
    const ProjectConfig cfg = load_config(config_path);
    const Trace trace = read_trace(trace_path);

    const Dataset ds = build_dataset(trace, cfg.eval.features);
    const LinearPredictor model =
        fit(ds.x_train, ds.y_train, cfg.eval.ridge_lambda, ds.column_group,
            ds.group_names);

    const RunConfig base = make_run_config(cfg, 0);
    const EvalScenario scenario = precondition_states(base, cfg.eval);
    EvalReport report = evaluate(model, cfg.eval.features, scenario,
                                 base.building, cfg.eval.eps_k);

    write_eval_report(report, out_dir);
    double val_rmse = 0.0;
    if (ds.x_val.rows() > 0) {
        double sq = 0.0;
        for (Eigen::Index i = 0; i < ds.x_val.rows(); ++i) {
            const double err =
                model.predict(ds.x_val.row(i).transpose()) - ds.y_val(i);
            sq += err * err;
        }
        val_rmse = std::sqrt(sq / static_cast<double>(ds.x_val.rows()));
    }
    std::cout << "train_samples=" << ds.x_train.rows()
              << " val_samples=" << ds.x_val.rows()
              << " val_rmse=" << val_rmse << "\n";
    if (!model.dropped_channels.empty()) {
        std::cout << "dropped constant channels:";
        for (const auto& name : model.dropped_channels)
            std::cout << ' ' << name;
        std::cout << "\n";
    }
    std::cout << "arc=" << report.arc << " arc_pairwise=" << report.arc_pairwise
              << " mean_ae=" << report.mean_ae << "\n";
    std::cout << "wrote report to " << out_dir << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Building thermal dynamics data generation and excitation "
                 "toolkit"};
    app.require_subcommand(1);

    // init
    auto* init = app.add_subcommand("init", "Write a commented default config");
    std::string init_path = "thermex.json";
    bool init_force = false;
    init->add_option("path", init_path, "Config file to create");
    init->add_flag("--force", init_force, "Overwrite an existing file");

    // shared options
    std::string config_path;
    std::optional<std::uint64_t> seed;

    // generate
    auto* generate =
        app.add_subcommand("generate", "Simulate one trace from the config");
    std::string gen_out = "trace.csv";
    generate->add_option("--config", config_path, "Project config file")
        ->required();
    generate->add_option("--seed", seed,
                         "Random seed (default: $THERMEX_SEED or 0)");
    generate->add_option("--out", gen_out, "Output trace CSV");

    // batch
    auto* batch = app.add_subcommand(
        "batch", "Sample n buildings from the variation spec and simulate "
                 "each");
    std::size_t batch_n = 1;
    std::string batch_dir = "batch";
    int batch_workers = 4;
    batch->add_option("--config", config_path, "Project config file")
        ->required();
    batch->add_option("--n", batch_n, "Number of runs")->required();
    batch->add_option("--seed", seed,
                      "Base seed; run i uses seed+i (default: $THERMEX_SEED "
                      "or 0)");
    batch->add_option("--out-dir", batch_dir, "Output directory");
    batch->add_option("--workers", batch_workers,
                      "Parallel workers (outputs are identical for any "
                      "count)");

    // coverage
    auto* coverage = app.add_subcommand(
        "coverage", "Bin traces into (temperature x signal) occupancy maps");
    std::vector<std::string> cov_traces;
    std::optional<std::string> cov_config;
    std::optional<std::string> cov_bins;
    std::optional<std::string> cov_range;
    std::string cov_dir = "coverage";
    coverage->add_option("--traces", cov_traces, "Trace CSV files")
        ->required()
        ->expected(-1);
    coverage->add_option("--config", cov_config,
                         "Optional config supplying the coverage grid");
    coverage->add_option("--bins", cov_bins, "Grid override, TxS (e.g. 80x21)");
    coverage->add_option("--temp-range", cov_range,
                         "Temperature range override, LO:HI degC");
    coverage->add_option("--out-dir", cov_dir, "Output directory");

    // eval
    auto* eval = app.add_subcommand(
        "eval", "Train a next-step predictor on a trace and score it on the "
                "Feb-1 action sweep");
    std::string eval_trace;
    std::string eval_dir = "eval";
    eval->add_option("--config", config_path, "Project config file")
        ->required();
    eval->add_option("--train-trace", eval_trace, "Training trace CSV")
        ->required();
    eval->add_option("--out-dir", eval_dir, "Output directory");

    try {
        app.parse(argc, argv);
        if (init->parsed())
            return cmd_init(init_path, init_force);
        if (generate->parsed())
            return cmd_generate(config_path, seed, gen_out);
        if (batch->parsed())
            return cmd_batch(config_path, batch_n, seed, batch_dir,
                             batch_workers);
        if (coverage->parsed())
            return cmd_coverage(cov_config, cov_traces, cov_bins, cov_range,
                                cov_dir);
        if (eval->parsed())
            return cmd_eval(config_path, eval_trace, eval_dir);
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // bad flags are config errors
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
