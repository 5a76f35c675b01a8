// gascast: daily residential gas demand forecasting toolkit.
//
// Subcommands: generate (seeded synthetic data), features (design-matrix
// dump), backtest (expanding-window evaluation of the five models),
// errorprop (temperature-error propagation analysis).

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gascast/backtest.hpp"
#include "gascast/calendar.hpp"
#include "gascast/datagen.hpp"
#include "gascast/dataset.hpp"
#include "gascast/errorprop.hpp"
#include "gascast/errors.hpp"
#include "gascast/features.hpp"
#include "gascast/rng.hpp"
#include "gascast/svg.hpp"

namespace fs = std::filesystem;
using namespace gascast;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDataError = 1;
constexpr int kExitUsage = 2;

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(tok);
    }
    return out;
}

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<ModelKind> parse_models(const std::string& arg) {
    std::vector<ModelKind> out;
    for (const auto& name : split_list(arg)) {
        const auto kind = model_kind_from_string(name);
        if (!kind) throw UsageError("unknown model '" + name + "' (ridge,gp,knn,mlp,torus)");
        out.push_back(*kind);
    }
    if (out.empty()) throw UsageError("empty model list");
    return out;
}

std::vector<int> parse_years(const std::string& arg) {
    std::vector<int> out;
    for (const auto& tok : split_list(arg)) {
        try {
            out.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw UsageError("bad test year '" + tok + "'");
        }
    }
    if (out.empty()) throw UsageError("empty test-year list");
    return out;
}

std::vector<TempSource> parse_sessions(const std::string& arg) {
    if (arg == "actual") return {TempSource::actual};
    if (arg == "forecast") return {TempSource::forecast};
    if (arg == "both") return {TempSource::actual, TempSource::forecast};
    throw UsageError("--temperature must be actual, forecast or both");
}

fs::path ensure_out_dir(const std::string& dir) {
    const fs::path p = dir.empty() ? fs::path(".") : fs::path(dir);
    fs::create_directories(p);
    return p;
}

// --- generate ---------------------------------------------------------------

int cmd_generate(const std::string& config_path, const std::string& out_csv, bool timestamp) {
    const GeneratorConfig cfg = load_generator_config(config_path);
    const Dataset data = generate(cfg, HolidayCalendar::italian());
    data.save_csv(out_csv, timestamp);
    std::cout << "wrote " << data.size() << " records to " << out_csv << "\n";
    return kExitOk;
}

// --- features ---------------------------------------------------------------

int cmd_features(const std::string& data_path, const std::string& out_csv,
                 const std::string& source_arg, std::string start, std::string end,
                 bool timestamp) {
    if (source_arg != "actual" && source_arg != "forecast") {
        throw UsageError("--temperature must be actual or forecast");
    }
    const TempSource source =
        source_arg == "actual" ? TempSource::actual : TempSource::forecast;
    const Dataset data = Dataset::load_csv(data_path);
    if (data.empty()) throw Error("dataset is empty");
    DateRange range{data.first_date(), data.last_date()};
    if (!start.empty()) {
        const auto d = parse_iso(start);
        if (!d) throw UsageError("bad --start date");
        range.first = *d;
    }
    if (!end.empty()) {
        const auto d = parse_iso(end);
        if (!d) throw UsageError("bad --end date");
        range.last = *d;
    }
    const FeatureMatrix m = build_matrix(data, range, source, HolidayCalendar::italian());
    write_feature_csv(out_csv, m, timestamp);
    std::cout << "wrote " << m.rows() << " rows x " << kFeatureCount << " features to " << out_csv
              << "\n";
    return kExitOk;
}

// --- backtest ---------------------------------------------------------------

int cmd_backtest(const std::string& data_path, const std::string& models_arg,
                 const std::string& years_arg, const std::string& temp_arg,
                 const std::string& out_dir_arg, const std::string& tuning_path,
                 std::uint64_t seed, bool timestamp, bool quiet) {
    const auto models = parse_models(models_arg);
    const auto years = parse_years(years_arg);
    const auto sessions = parse_sessions(temp_arg);

    const Dataset data = Dataset::load_csv(data_path);
    const auto& cal = HolidayCalendar::italian();

    BacktestPlan plan;
    plan.splits = expanding_splits(data, years);
    plan.models = models;
    plan.sessions = sessions;
    plan.seed = seed;
    if (!tuning_path.empty()) plan.tuning = TuningSpec::from_file(tuning_path);

    ProgressFn progress;
    if (!quiet) {
        progress = [](const std::string& msg) { std::cerr << "[backtest] " << msg << "\n"; };
    }
    const BacktestReport rep = run_backtest(plan, data, cal, progress);

    for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";

    const fs::path out = ensure_out_dir(out_dir_arg);
    const CsvOptions opts{timestamp};
    for (TempSource s : sessions) {
        const std::string tag = to_string(s);
        write_metric_table_csv((out / ("rmse_" + tag + ".csv")).string(), rep, s, "rmse", opts);
        write_metric_table_csv((out / ("mae_" + tag + ".csv")).string(), rep, s, "mae", opts);
        write_monthly_csv((out / ("monthly_" + tag + ".csv")).string(), rep, s, opts);
        write_predictions_csv((out / ("predictions_" + tag + ".csv")).string(), rep, s, opts);

        // residual line chart and histograms per test year
        for (int year : rep.test_years) {
            std::vector<svg::Series> lines;
            std::vector<svg::HistogramPanel> panels;
            for (ModelKind m : rep.models) {
                const ModelSessionEval* e = rep.find(m, s);
                if (e == nullptr) continue;
                svg::Series line;
                line.label = to_string(m);
                svg::HistogramPanel panel;
                panel.label = to_string(m);
                for (const auto& p : e->predictions) {
                    if (p.date.year != year) continue;
                    const double resid = p.actual - p.predicted;
                    line.x.push_back(static_cast<double>(yearday(p.date)));
                    line.y.push_back(resid);
                    panel.values.push_back(resid);
                }
                if (!line.x.empty()) {
                    lines.push_back(std::move(line));
                    panels.push_back(std::move(panel));
                }
            }
            if (lines.empty()) continue;
            svg::ChartOptions copts;
            copts.timestamp = timestamp;
            copts.title = "Out-of-sample residuals " + std::to_string(year) + " (" + tag +
                          " temperatures)";
            copts.x_label = "day of year";
            copts.y_label = "residual [MSCM]";
            svg::write_line_chart((out / ("residuals_" + tag + "_" + std::to_string(year) + ".svg"))
                                      .string(),
                                  lines, copts);
            svg::ChartOptions hopts;
            hopts.timestamp = timestamp;
            hopts.title = "Residual distribution " + std::to_string(year) + " (" + tag +
                          " temperatures)";
            hopts.x_label = "residual [MSCM]";
            svg::write_histograms(
                (out / ("residual_hist_" + tag + "_" + std::to_string(year) + ".svg")).string(),
                panels, 40, hopts);
        }
    }
    if (!rep.limits.empty() && rep.find(models.front(), TempSource::actual) != nullptr) {
        write_predicted_rmse_csv((out / "predicted_rmse_forecast.csv").string(), rep, opts);
    }
    if (!rep.comparisons.empty()) {
        write_comparison_csv((out / "comparison_rmse.csv").string(), rep, opts);
        std::vector<svg::Series> pts(1);
        pts[0].label = "model-year";
        for (const auto& c : rep.comparisons) {
            if (c.year == 0) continue;
            pts[0].x.push_back(c.predicted_session2);
            pts[0].y.push_back(c.measured_session2);
        }
        svg::ChartOptions sopts;
        sopts.timestamp = timestamp;
        sopts.title = "Gas forecast RMSE: predicted vs measured";
        sopts.x_label = "predicted RMSE [MSCM]";
        sopts.y_label = "measured RMSE [MSCM]";
        svg::write_scatter((out / "comparison_rmse.svg").string(), pts, sopts, true);
    }

    // summary to stdout
    for (TempSource s : sessions) {
        std::cout << "session " << to_string(s) << " (pooled over test years):\n";
        for (ModelKind m : models) {
            const ModelSessionEval* e = rep.find(m, s);
            if (e == nullptr || e->aggregate.n == 0) continue;
            std::printf("  %-6s rmse=%.4f mae=%.4f mape=%.2f%%\n", to_string(m).c_str(),
                        e->aggregate.rmse, e->aggregate.mae, e->aggregate.mape);
        }
    }
    std::cout << "reports written to " << out.string() << "\n";
    return kExitOk;
}

// --- errorprop ---------------------------------------------------------------

int cmd_errorprop(const std::string& data_path, double sigma0_sq, bool sigma0_given,
                  double alpha_override, double p_cold_override, double s2eps_override,
                  const std::string& curve_arg, const std::string& validate_arg,
                  const std::string& gen_config, const std::string& out_dir_arg,
                  std::uint64_t seed, bool timestamp) {
    const fs::path out = ensure_out_dir(out_dir_arg);
    const auto& cal = HolidayCalendar::italian();

    ErrorPropParams params;
    bool have_params = false;
    if (!data_path.empty()) {
        const Dataset data = Dataset::load_csv(data_path);
        params = estimate_params(data);
        have_params = true;
        std::printf("estimated from %s (%zu days):\n", data_path.c_str(), data.size());
    }
    if (alpha_override > 0.0) {
        params.alpha = alpha_override;
        have_params = true;
    }
    if (p_cold_override >= 0.0) params.p_cold = p_cold_override;
    if (s2eps_override >= 0.0) params.sigma2_eps = s2eps_override;
    if (!have_params && validate_arg.empty()) {
        throw UsageError("errorprop needs --data or explicit --alpha/--p-cold/--sigma2-eps");
    }

    if (have_params) {
        std::printf("  alpha       = %.4f MSCM/degC\n", params.alpha);
        std::printf("  P(T<18)     = %.4f\n", params.p_cold);
        std::printf("  sigma2_eps  = %.6f degC^2\n", params.sigma2_eps);
        std::printf("  performance limit = %.4f MSCM\n", performance_limit(params));
        if (sigma0_given) {
            std::printf("  predicted RMSE at sigma0^2=%.4f: %.4f MSCM\n", sigma0_sq,
                        predicted_rmse(sigma0_sq, params));
            std::printf("  negligibility threshold = %.6f degC^2\n",
                        negligibility_threshold(sigma0_sq, params));
        }
    }

    if (!curve_arg.empty()) {
        if (!sigma0_given) throw UsageError("--curve needs --sigma0");
        double lo = 0.0;
        double hi = 0.0;
        int steps = 0;
        if (std::sscanf(curve_arg.c_str(), "%lf:%lf:%d", &lo, &hi, &steps) != 3 || steps < 2 ||
            hi <= lo || lo < 0.0) {
            throw UsageError("--curve expects min:max:steps over the temperature RMSE in degC");
        }
        std::vector<double> s2;
        for (int i = 0; i < steps; ++i) {
            const double se = lo + (hi - lo) * i / (steps - 1);
            s2.push_back(se * se);
        }
        const auto curve = rmse_curve(sigma0_sq, params, s2);
        std::ofstream csv(out / "rmse_curve.csv");
        if (timestamp) csv << "# gas RMSE vs temperature RMSE\n";
        csv << "sigma2_eps,temp_rmse,gas_rmse\n";
        for (const auto& c : curve) {
            char buf[96];
            std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%.6f\n", c.sigma2_eps, c.temp_rmse,
                          c.gas_rmse);
            csv << buf;
        }
        svg::Series s;
        s.label = "predicted gas RMSE";
        for (const auto& c : curve) {
            s.x.push_back(c.temp_rmse);
            s.y.push_back(c.gas_rmse);
        }
        svg::ChartOptions copts;
        copts.timestamp = timestamp;
        copts.title = "Gas forecast RMSE vs temperature forecast RMSE";
        copts.x_label = "temperature RMSE [degC]";
        copts.y_label = "gas RMSE [MSCM]";
        svg::write_line_chart((out / "rmse_curve.svg").string(), {s}, copts);
        std::cout << "curve written to " << (out / "rmse_curve.csv").string() << "\n";
    }

    if (!validate_arg.empty()) {
        std::size_t days = 0;
        int n_seeds = 0;
        {
            long long d = 0;
            if (std::sscanf(validate_arg.c_str(), "%lld:%d", &d, &n_seeds) != 2 || d < 1 ||
                n_seeds < 1) {
                throw UsageError("--validate expects days:seeds");
            }
            days = static_cast<std::size_t>(d);
        }
        GeneratorConfig cfg;
        if (!gen_config.empty()) cfg = load_generator_config(gen_config);

        std::ofstream csv(out / "mc_validation.csv");
        csv << "sigma_eps_scale,seed,predicted_rmse,empirical_rmse,relative_gap\n";
        svg::Series pts;
        pts.label = "(predicted, empirical)";
        const double scales[] = {0.5, 1.0, 2.0, 4.0};
        for (double scale : scales) {
            GeneratorConfig c = cfg;
            c.sigma_eps = cfg.sigma_eps * scale;
            for (int s = 0; s < n_seeds; ++s) {
                const auto r = monte_carlo_validate(c, days, derive_seed(seed, static_cast<std::uint64_t>(s)), cal);
                char buf[128];
                std::snprintf(buf, sizeof(buf), "%.3f,%d,%.6f,%.6f,%.6f\n", scale, s, r.predicted,
                              r.empirical_rmse, r.relative_gap);
                csv << buf;
                pts.x.push_back(r.predicted);
                pts.y.push_back(r.empirical_rmse);
            }
        }
        svg::ChartOptions sopts;
        sopts.timestamp = timestamp;
        sopts.title = "Error propagation: predicted vs simulated RMSE";
        sopts.x_label = "predicted RMSE [MSCM]";
        sopts.y_label = "simulated RMSE [MSCM]";
        svg::write_scatter((out / "mc_validation.svg").string(), {pts}, sopts, true);
        std::cout << "validation written to " << (out / "mc_validation.csv").string() << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"daily residential gas demand forecasting toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string data_path;
    std::string out_path;
    std::string out_dir;
    std::string models_arg = "ridge,gp,knn,mlp,torus";
    std::string years_arg;
    std::string temp_arg = "forecast";
    std::string tuning_path;
    std::string start_arg;
    std::string end_arg;
    std::string curve_arg;
    std::string validate_arg;
    std::string gen_config_arg;
    std::uint64_t seed = 1;
    bool no_timestamp = false;
    bool quiet = false;
    double sigma0_sq = -1.0;
    double alpha_override = -1.0;
    double p_cold_override = -1.0;
    double s2eps_override = -1.0;

    app.add_flag("--no-timestamp", no_timestamp,
                 "suppress the timestamp header line in output files");

    auto* gen = app.add_subcommand("generate", "write a seeded synthetic dataset CSV");
    gen->add_option("--config", config_path, "generator config file (key = value)")->required();
    gen->add_option("--out", out_path, "output CSV path")->required();

    auto* feat = app.add_subcommand("features", "dump the design matrix for debugging");
    feat->add_option("--data", data_path, "input CSV")->required();
    feat->add_option("--out,--dump-features", out_path, "output CSV path")->required();
    feat->add_option("--temperature", temp_arg, "temperature source: actual|forecast");
    feat->add_option("--start", start_arg, "first date (ISO), default: dataset start");
    feat->add_option("--end", end_arg, "last date (ISO), default: dataset end");

    auto* bt = app.add_subcommand("backtest", "expanding-window evaluation of the models");
    bt->add_option("--data", data_path, "input CSV")->required();
    bt->add_option("--models", models_arg, "comma list: ridge,gp,knn,mlp,torus");
    bt->add_option("--test-years", years_arg, "comma list of test years")->required();
    bt->add_option("--temperature", temp_arg, "session source: actual|forecast|both");
    bt->add_option("--out-dir", out_dir, "report directory")->envname("GASCAST_OUT_DIR");
    bt->add_option("--tuning", tuning_path, "tuning config file");
    bt->add_option("--seed", seed, "base seed for stochastic models");
    bt->add_flag("--quiet", quiet, "suppress progress lines on stderr");

    auto* ep = app.add_subcommand("errorprop", "temperature-error propagation analysis");
    ep->add_option("--data", data_path, "input CSV with both temperature columns");
    ep->add_option("--sigma0", sigma0_sq, "temperature-free forecast MSE sigma0^2 [MSCM^2]");
    ep->add_option("--alpha", alpha_override, "override alpha [MSCM/degC]");
    ep->add_option("--p-cold", p_cold_override, "override P(T<18)");
    ep->add_option("--sigma2-eps", s2eps_override, "override sigma2_eps [degC^2]");
    ep->add_option("--curve", curve_arg, "emit the RMSE curve: min:max:steps over temp RMSE");
    ep->add_option("--validate", validate_arg, "Monte-Carlo validation: days:seeds");
    ep->add_option("--gen-config", gen_config_arg, "generator config for --validate");
    ep->add_option("--out-dir", out_dir, "output directory")->envname("GASCAST_OUT_DIR");
    ep->add_option("--seed", seed, "seed for --validate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_generate(config_path, out_path, !no_timestamp);
        if (feat->parsed()) {
            return cmd_features(data_path, out_path, temp_arg, start_arg, end_arg, !no_timestamp);
        }
        if (bt->parsed()) {
            return cmd_backtest(data_path, models_arg, years_arg, temp_arg, out_dir, tuning_path,
                                seed, !no_timestamp, quiet);
        }
        if (ep->parsed()) {
            return cmd_errorprop(data_path, sigma0_sq, sigma0_sq >= 0.0, alpha_override,
                                 p_cold_override, s2eps_override, curve_arg, validate_arg,
                                 gen_config_arg, out_dir, seed, !no_timestamp);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDataError;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return kExitDataError;
    }
    return kExitUsage;
}
