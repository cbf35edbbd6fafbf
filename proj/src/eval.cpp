#include "thermex/eval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "thermex/errors.hpp"

namespace thermex {

std::string channel_name(Channel c) {
    switch (c) {
    case Channel::TAir: return "t_air";
    case Channel::ControlSignal: return "control_signal";
    case Channel::TOut: return "t_out";
    case Channel::Solar: return "solar";
    case Channel::InternalGain: return "internal_gain";
    }
    return "?";
}

Channel channel_from_name(const std::string& name) {
    if (name == "t_air") return Channel::TAir;
    if (name == "control_signal") return Channel::ControlSignal;
    if (name == "t_out") return Channel::TOut;
    if (name == "solar") return Channel::Solar;
    if (name == "internal_gain") return Channel::InternalGain;
    throw ConfigError("eval.channels: unknown channel '" + name + "'");
}

void FeatureSpec::validate() const {
    if (lookback < 1)
        throw ConfigError("eval.lookback must be >= 1");
    auto has = [&](Channel c) {
        return std::find(channels.begin(), channels.end(), c) !=
               channels.end();
    };
    if (!has(Channel::TAir) || !has(Channel::ControlSignal))
        throw ConfigError(
            "eval.channels must include t_air and control_signal");
    for (std::size_t i = 0; i < channels.size(); ++i)
        for (std::size_t j = i + 1; j < channels.size(); ++j)
            if (channels[i] == channels[j])
                throw ConfigError("eval.channels contains '" +
                                  channel_name(channels[i]) + "' twice");
}

void EvalSettings::validate() const {
    features.validate();
    if (!(ridge_lambda >= 0.0))
        throw ConfigError("eval.ridge_lambda must be >= 0");
    if (actions.empty())
        throw ConfigError("eval.actions must not be empty");
    for (std::size_t i = 0; i < actions.size(); ++i) {
        if (!(actions[i] >= 0.0 && actions[i] <= 1.0))
            throw ConfigError("eval.actions must lie in [0,1]");
        if (i > 0 && !(actions[i] > actions[i - 1]))
            throw ConfigError("eval.actions must be strictly ascending");
    }
    if (!(eps_k > 0.0))
        throw ConfigError("eval.eps_k must be positive");
    if (!(precondition_hold_h > 0.0))
        throw ConfigError("eval.precondition_hold_h must be positive");
}

namespace {

double channel_value(const TraceRow& r, Channel c) {
    switch (c) {
    case Channel::TAir: return r.t_air_c;
    case Channel::ControlSignal: return r.control_signal;
    case Channel::TOut: return r.t_out_c;
    case Channel::Solar: return r.solar_wm2;
    case Channel::InternalGain: return r.internal_gain_w;
    }
    return 0.0;
}

void fill_features(const TraceRow* window, const FeatureSpec& spec,
                   double action, double* out) {
    const auto lb = static_cast<std::size_t>(spec.lookback);
    std::size_t k = 0;
    for (const Channel c : spec.channels)
        for (std::size_t lag = 0; lag < lb; ++lag)
            out[k++] = channel_value(window[lag], c);
    out[k] = action;
}

} // namespace

Eigen::VectorXd features_from_history(const std::vector<TraceRow>& history,
                                      double action, const FeatureSpec& spec) {
    spec.validate();
    if (history.size() != static_cast<std::size_t>(spec.lookback))
        throw RunError("features_from_history: expected exactly " +
                       std::to_string(spec.lookback) + " history rows, got " +
                       std::to_string(history.size()));
    Eigen::VectorXd out(static_cast<Eigen::Index>(spec.feature_count()));
    fill_features(history.data(), spec, action, out.data());
    return out;
}

Dataset build_dataset(const Trace& trace, const FeatureSpec& spec) {
    spec.validate();
    const std::size_t n_rows = trace.rows.size();
    const auto lb = static_cast<std::size_t>(spec.lookback);
    if (n_rows < lb + 2)
        throw RunError("build_dataset: trace has " + std::to_string(n_rows) +
                       " rows but needs at least lookback + 2 = " +
                       std::to_string(lb + 2));

    // Sample t: window rows t-lookback+1..t, action + target from row t+1.
    const std::size_t n_samples = n_rows - lb;
    const auto n_features = static_cast<Eigen::Index>(spec.feature_count());

    // Validation: targets falling in the final month of the first year.
    const double val_begin = static_cast<double>(
        (kDaysPerYear - 31) * kSecondsPerDay);
    const double val_end = static_cast<double>(kSecondsPerYear);
    auto is_validation = [&](std::size_t t) {
        const double target_time = trace.rows[t + 1].time_s;
        return target_time > val_begin && target_time <= val_end;
    };

    std::size_t n_val = 0;
    for (std::size_t s = 0; s < n_samples; ++s)
        n_val += is_validation(lb - 1 + s) ? 1u : 0u;

    Dataset ds;
    ds.x_train.resize(static_cast<Eigen::Index>(n_samples - n_val),
                      n_features);
    ds.y_train.resize(static_cast<Eigen::Index>(n_samples - n_val));
    ds.x_val.resize(static_cast<Eigen::Index>(n_val), n_features);
    ds.y_val.resize(static_cast<Eigen::Index>(n_val));

    Eigen::Index it = 0;
    Eigen::Index iv = 0;
    std::vector<double> buf(static_cast<std::size_t>(n_features));
    for (std::size_t s = 0; s < n_samples; ++s) {
        const std::size_t t = lb - 1 + s;
        const TraceRow* window = trace.rows.data() + (t + 1 - lb);
        fill_features(window, spec, trace.rows[t + 1].control_signal,
                      buf.data());
        const double target = trace.rows[t + 1].t_air_c;
        if (is_validation(t)) {
            for (Eigen::Index j = 0; j < n_features; ++j)
                ds.x_val(iv, j) = buf[static_cast<std::size_t>(j)];
            ds.y_val(iv++) = target;
        } else {
            for (Eigen::Index j = 0; j < n_features; ++j)
                ds.x_train(it, j) = buf[static_cast<std::size_t>(j)];
            ds.y_train(it++) = target;
        }
    }

    ds.group_names.reserve(spec.channels.size());
    for (const Channel c : spec.channels)
        ds.group_names.push_back(channel_name(c));
    ds.column_group.assign(static_cast<std::size_t>(n_features), 0);
    std::size_t col = 0;
    for (std::size_t ci = 0; ci < spec.channels.size(); ++ci)
        for (std::size_t lag = 0; lag < lb; ++lag)
            ds.column_group[col++] = static_cast<int>(ci);
    // The action is a control value; it shares the control channel's stats.
    const auto ctrl_it = std::find(spec.channels.begin(), spec.channels.end(),
                                   Channel::ControlSignal);
    ds.column_group[col] =
        static_cast<int>(ctrl_it - spec.channels.begin());
    return ds;
}

double LinearPredictor::predict(const Eigen::VectorXd& raw_features) const {
    if (raw_features.size() != col_mean.size())
        throw RunError("predict: feature count mismatch: expected " +
                       std::to_string(col_mean.size()) + ", got " +
                       std::to_string(raw_features.size()));
    double acc = bias;
    Eigen::Index k = 0;
    for (Eigen::Index j = 0; j < raw_features.size(); ++j) {
        if (!kept[static_cast<std::size_t>(j)])
            continue;
        acc += weights(k++) * (raw_features(j) - col_mean(j)) / col_std(j);
    }
    return acc;
}

Eigen::VectorXd LinearPredictor::raw_coefficients() const {
    Eigen::VectorXd coef = Eigen::VectorXd::Zero(col_mean.size());
    Eigen::Index k = 0;
    for (Eigen::Index j = 0; j < col_mean.size(); ++j)
        if (kept[static_cast<std::size_t>(j)])
            coef(j) = weights(k++) / col_std(j);
    return coef;
}

double LinearPredictor::raw_intercept() const {
    return bias - raw_coefficients().dot(col_mean);
}

LinearPredictor fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                    double lambda, const std::vector<int>& column_group,
                    const std::vector<std::string>& group_names) {
    if (x.rows() < 1 || x.rows() != y.size())
        throw RunError("fit: need at least one sample and matching x/y rows");
    if (!(lambda >= 0.0))
        throw ConfigError("fit: lambda must be >= 0");

    const Eigen::Index d = x.cols();
    std::vector<int> groups = column_group;
    if (groups.empty()) {
        groups.resize(static_cast<std::size_t>(d));
        for (Eigen::Index j = 0; j < d; ++j)
            groups[static_cast<std::size_t>(j)] = static_cast<int>(j);
    }
    if (groups.size() != static_cast<std::size_t>(d))
        throw RunError("fit: column_group size does not match feature count");

    const int n_groups =
        1 + *std::max_element(groups.begin(), groups.end());
    const auto n = static_cast<double>(x.rows());

    // Pooled first/second moments per group.
    std::vector<double> g_sum(static_cast<std::size_t>(n_groups), 0.0);
    std::vector<double> g_sq(static_cast<std::size_t>(n_groups), 0.0);
    std::vector<double> g_count(static_cast<std::size_t>(n_groups), 0.0);
    for (Eigen::Index j = 0; j < d; ++j) {
        const auto g = static_cast<std::size_t>(groups[static_cast<std::size_t>(j)]);
        g_sum[g] += x.col(j).sum();
        g_sq[g] += x.col(j).squaredNorm();
        g_count[g] += n;
    }

    LinearPredictor model;
    model.lambda = lambda;
    model.col_mean.resize(d);
    model.col_std.resize(d);
    model.kept.assign(static_cast<std::size_t>(d), 1);

    std::vector<char> group_kept(static_cast<std::size_t>(n_groups), 1);
    for (std::size_t g = 0; g < static_cast<std::size_t>(n_groups); ++g) {
        const double mean = g_sum[g] / g_count[g];
        const double var =
            std::max(g_sq[g] / g_count[g] - mean * mean, 0.0);
        const double sd = std::sqrt(var);
        if (sd < 1e-12 * std::max(1.0, std::abs(mean))) {
            group_kept[g] = 0;
            if (!group_names.empty() &&
                g < group_names.size())
                model.dropped_channels.push_back(group_names[g]);
            else
                model.dropped_channels.push_back("column_group_" +
                                                 std::to_string(g));
        }
    }

    Eigen::Index n_kept = 0;
    for (Eigen::Index j = 0; j < d; ++j) {
        const auto g = static_cast<std::size_t>(groups[static_cast<std::size_t>(j)]);
        const double mean = g_sum[g] / g_count[g];
        const double sd = std::sqrt(
            std::max(g_sq[g] / g_count[g] - mean * mean, 0.0));
        model.col_mean(j) = mean;
        model.col_std(j) = group_kept[g] ? sd : 1.0;
        model.kept[static_cast<std::size_t>(j)] = group_kept[g];
        n_kept += group_kept[g] ? 1 : 0;
    }

    model.bias = y.mean();
    model.weights.resize(n_kept);
    if (n_kept == 0)
        return model; // constant predictor

    Eigen::MatrixXd z(x.rows(), n_kept);
    Eigen::Index k = 0;
    for (Eigen::Index j = 0; j < d; ++j) {
        if (!model.kept[static_cast<std::size_t>(j)])
            continue;
        z.col(k++) =
            (x.col(j).array() - model.col_mean(j)) / model.col_std(j);
    }

    const Eigen::VectorXd yc = y.array() - model.bias;
    Eigen::MatrixXd gram = z.transpose() * z;
    gram.diagonal().array() += lambda;
    const Eigen::VectorXd rhs = z.transpose() * yc;
    const auto ldlt = gram.ldlt();
    if (lambda == 0.0) {
        // A rank-deficient gram matrix can still yield a consistent system,
        // so check definiteness directly.
        const Eigen::VectorXd d = ldlt.vectorD();
        if (d.minCoeff() <= 1e-12 * std::max(d.maxCoeff(), 1e-300))
            throw RunError("fit: normal equations are singular with "
                           "lambda = 0; use lambda > 0");
    }
    const Eigen::VectorXd w = ldlt.solve(rhs);

    const double rhs_scale = rhs.cwiseAbs().maxCoeff() + 1.0;
    const double residual = (gram * w - rhs).cwiseAbs().maxCoeff();
    if (!w.allFinite() || residual > 1e-6 * rhs_scale) {
        if (lambda == 0.0)
            throw RunError("fit: normal equations are singular with "
                           "lambda = 0; use lambda > 0");
        throw RunError("fit: ridge solve failed (residual " +
                       std::to_string(residual) + ")");
    }
    model.weights = w;
    return model;
}

EvalScenario precondition_states(const RunConfig& base,
                                 const EvalSettings& settings) {
    settings.validate();
    const auto lb = static_cast<std::size_t>(settings.features.lookback);

    RunConfig january = base;
    january.start_time_s = kSecondsPerYear;                      // Jan 1, year 2
    january.stop_time_s = kSecondsPerYear + 31 * kSecondsPerDay; // Feb 1, year 2
    january.initial.reset(); // free-float equilibrium; the month washes it out
    const std::size_t n = january.num_steps();
    if (n < lb)
        throw ConfigError("precondition_states: lookback exceeds the January "
                          "preconditioning window");
    const auto hold_steps = std::min<std::size_t>(
        n, static_cast<std::size_t>(std::llround(
               settings.precondition_hold_h * 3600.0 /
               static_cast<double>(base.dt_s))));
    if (hold_steps < 1)
        throw ConfigError("precondition_states: the hold is shorter than one "
                          "step");

    EvalScenario scenario;
    scenario.actions = settings.actions;
    scenario.dt_s = static_cast<double>(base.dt_s);

    const WeatherPoint w =
        base.weather.sample(static_cast<double>(january.stop_time_s));
    scenario.boundary = BoundarySample{
        w.t_out, w.solar,
        base.gains.sample(static_cast<double>(january.stop_time_s))};

    // Shared PI prefix: one run up to the hold start.
    const PiConfig pi = std::holds_alternative<PiConfig>(base.control)
                            ? std::get<PiConfig>(base.control)
                            : PiConfig{};
    const std::int64_t hold_start_s =
        january.stop_time_s -
        static_cast<std::int64_t>(hold_steps) * january.dt_s;
    Trace prefix;
    if (hold_steps < n) {
        RunConfig cfg = january;
        cfg.stop_time_s = hold_start_s;
        cfg.control = pi;
        prefix = run(cfg);
    }

    for (const double level : settings.actions) {
        RunConfig cfg = january;
        cfg.start_time_s = hold_start_s;
        cfg.control = Signal{std::vector<double>(hold_steps, level),
                             static_cast<int>(cfg.dt_s)};
        if (!prefix.rows.empty())
            cfg.initial = ThermalState{prefix.rows.back().t_air_c,
                                       prefix.rows.back().t_env_c};
        else
            cfg.initial = steady_state(
                cfg.building,
                [&] {
                    const WeatherPoint w0 = cfg.weather.sample(
                        static_cast<double>(cfg.start_time_s));
                    return BoundarySample{
                        w0.t_out, w0.solar,
                        cfg.gains.sample(
                            static_cast<double>(cfg.start_time_s))};
                }(),
                level);
        const Trace tail = run(cfg);

        // The lookback window may reach back into the shared PI prefix.
        std::vector<TraceRow> rows;
        rows.reserve(lb);
        if (tail.rows.size() < lb) {
            const std::size_t need = lb - tail.rows.size();
            rows.insert(rows.end(), prefix.rows.end() -
                                        static_cast<std::ptrdiff_t>(need),
                        prefix.rows.end());
        }
        rows.insert(rows.end(),
                    tail.rows.end() -
                        static_cast<std::ptrdiff_t>(
                            std::min(lb, tail.rows.size())),
                    tail.rows.end());

        StateWithHistory s;
        s.state = ThermalState{tail.rows.back().t_air_c,
                               tail.rows.back().t_env_c};
        s.history = std::move(rows);
        scenario.states.push_back(std::move(s));
    }
    return scenario;
}

namespace {

int direction(double delta, double eps) {
    if (std::abs(delta) < eps)
        return 0;
    return delta > 0.0 ? 1 : -1;
}

} // namespace

EvalReport evaluate(const PredictFn& predict, const EvalScenario& scenario,
                    const BuildingParams& building, double eps_k) {
    const auto n_states = static_cast<Eigen::Index>(scenario.states.size());
    const auto n_actions = static_cast<Eigen::Index>(scenario.actions.size());
    if (n_states == 0 || n_actions == 0)
        throw RunError("evaluate: scenario has no states or no actions");

    EvalReport report;
    report.eps_k = eps_k;
    report.actions = scenario.actions;
    report.truth.resize(n_states, n_actions);
    report.prediction.resize(n_states, n_actions);
    report.ae.resize(n_states, n_actions);

    std::size_t correct = 0;
    for (Eigen::Index si = 0; si < n_states; ++si) {
        const StateWithHistory& s =
            scenario.states[static_cast<std::size_t>(si)];
        report.state_t_air.push_back(s.state.t_air);
        for (Eigen::Index ai = 0; ai < n_actions; ++ai) {
            const double action =
                scenario.actions[static_cast<std::size_t>(ai)];
            const double truth =
                step(building, s.state, scenario.boundary, action,
                     scenario.dt_s)
                    .t_air;
            const double pred = predict(s, action);
            report.truth(si, ai) = truth;
            report.prediction(si, ai) = pred;
            report.ae(si, ai) = std::abs(pred - truth);
            const int want = direction(truth - s.state.t_air, eps_k);
            const int got = direction(pred - s.state.t_air, eps_k);
            correct += want == got ? 1u : 0u;
        }
    }
    report.arc = static_cast<double>(correct) /
                 static_cast<double>(n_states * n_actions);
    report.mean_ae = report.ae.mean();

    // Secondary metric: ordering agreement between adjacent actions.
    if (n_actions > 1) {
        std::size_t pair_correct = 0;
        for (Eigen::Index si = 0; si < n_states; ++si)
            for (Eigen::Index ai = 0; ai + 1 < n_actions; ++ai) {
                const int want = direction(
                    report.truth(si, ai + 1) - report.truth(si, ai), eps_k);
                const int got = direction(
                    report.prediction(si, ai + 1) - report.prediction(si, ai),
                    eps_k);
                pair_correct += want == got ? 1u : 0u;
            }
        report.arc_pairwise = static_cast<double>(pair_correct) /
                              static_cast<double>(n_states * (n_actions - 1));
    } else {
        report.arc_pairwise = 1.0;
    }
    return report;
}

EvalReport evaluate(const LinearPredictor& model, const FeatureSpec& spec,
                    const EvalScenario& scenario,
                    const BuildingParams& building, double eps_k) {
    return evaluate(
        [&](const StateWithHistory& s, double action) {
            return model.predict(features_from_history(s.history, action,
                                                       spec));
        },
        scenario, building, eps_k);
}

namespace {

void write_matrix_csv(const Eigen::MatrixXd& m,
                      const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw RunError("write_eval_report: cannot open " + path.string());
    char buf[32];
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j)
                out << ',';
            const auto res = std::to_chars(buf, buf + sizeof buf, m(i, j));
            out.write(buf, res.ptr - buf);
        }
        out << '\n';
    }
}

} // namespace

void write_eval_report(const EvalReport& report,
                       const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_matrix_csv(report.truth, dir / "truth.csv");
    write_matrix_csv(report.prediction, dir / "prediction.csv");
    write_matrix_csv(report.ae, dir / "ae.csv");

    nlohmann::json summary{{"arc", report.arc},
                           {"arc_pairwise", report.arc_pairwise},
                           {"mean_ae", report.mean_ae},
                           {"eps_k", report.eps_k},
                           {"actions", report.actions},
                           {"state_t_air", report.state_t_air}};
    std::ofstream out(dir / "summary.json", std::ios::binary | std::ios::trunc);
    if (!out)
        throw RunError("write_eval_report: cannot open summary.json");
    out << summary.dump(2) << '\n';
}

} // namespace thermex
