#include "gascast/backtest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "gascast/errors.hpp"
#include "gascast/models/gp.hpp"
#include "gascast/models/ridge.hpp"
#include "gascast/models/torus.hpp"
#include "gascast/rng.hpp"

namespace gascast {

TuningSpec::TuningSpec() {
    // lambda from 1e-4 to 1e2 in half-decade logarithmic steps
    for (int i = 0; i <= 12; ++i) {
        ridge_lambda_grid.push_back(std::pow(10.0, -4.0 + 0.5 * i));
    }
    mlp_base.hidden = {24, 12, 4};
    mlp_base.learning_rate = 1e-3;
    mlp_base.batch_size = 32;
    mlp_base.epochs = 1000;
}

namespace {

std::string trim_ws(const std::string& s) {
    const std::size_t b = s.find_first_not_of(" \t\r");
    const std::size_t e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

std::vector<double> parse_double_list(const std::string& v, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim_ws(tok);
        char* end = nullptr;
        const double x = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0') {
            throw InvalidConfig("tuning key '" + key + "': bad number '" + tok + "'");
        }
        out.push_back(x);
    }
    if (out.empty()) throw InvalidConfig("tuning key '" + key + "': empty list");
    return out;
}

std::vector<int> parse_int_list(const std::string& v, const std::string& key) {
    std::vector<int> out;
    for (double x : parse_double_list(v, key)) out.push_back(static_cast<int>(x));
    return out;
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw InvalidConfig("tuning key '" + key + "': expected true/false");
}

}  // namespace

TuningSpec TuningSpec::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidConfig("cannot open tuning config " + path);
    TuningSpec spec;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim_ws(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw InvalidConfig(path + ":" + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim_ws(stripped.substr(0, eq));
        const std::string val = trim_ws(stripped.substr(eq + 1));
        auto one_double = [&] { return parse_double_list(val, key).at(0); };
        auto one_int = [&] { return parse_int_list(val, key).at(0); };
        if (key == "folds") spec.folds = one_int();
        else if (key == "ridge.tune") spec.tune_ridge = parse_bool(val, key);
        else if (key == "ridge.lambda_grid") spec.ridge_lambda_grid = parse_double_list(val, key);
        else if (key == "ridge.lambda") spec.ridge_lambda_fixed = one_double();
        else if (key == "knn.tune") spec.tune_knn = parse_bool(val, key);
        else if (key == "knn.k_min") spec.knn_k_min = one_int();
        else if (key == "knn.k_max") spec.knn_k_max = one_int();
        else if (key == "knn.uniform") spec.knn_uniform = parse_bool(val, key);
        else if (key == "knn.inverse") spec.knn_inverse = parse_bool(val, key);
        else if (key == "knn.k") spec.knn_k_fixed = one_int();
        else if (key == "knn.weighting") {
            if (val == "uniform") spec.knn_weighting_fixed = KnnWeighting::uniform;
            else if (val == "inverse_distance") spec.knn_weighting_fixed = KnnWeighting::inverse_distance;
            else throw InvalidConfig("knn.weighting: expected uniform or inverse_distance");
        } else if (key == "gp.tune") spec.tune_gp = parse_bool(val, key);
        else if (key == "gp.nu_grid") spec.gp_nu_grid = parse_double_list(val, key);
        else if (key == "gp.l_grid") spec.gp_l_grid = parse_double_list(val, key);
        else if (key == "gp.sigma2_grid") spec.gp_sigma2_grid = parse_double_list(val, key);
        else if (key == "gp.nu") spec.gp_nu_fixed = one_double();
        else if (key == "gp.l") spec.gp_l_fixed = one_double();
        else if (key == "gp.sigma2") spec.gp_sigma2_fixed = one_double();
        else if (key == "mlp.tune") spec.tune_mlp = parse_bool(val, key);
        else if (key == "mlp.lr_grid") spec.mlp_lr_grid = parse_double_list(val, key);
        else if (key == "mlp.batch_grid") spec.mlp_batch_grid = parse_double_list(val, key);
        else if (key == "mlp.lr") spec.mlp_base.learning_rate = one_double();
        else if (key == "mlp.batch") spec.mlp_base.batch_size = one_int();
        else if (key == "mlp.epochs") spec.mlp_base.epochs = one_int();
        else if (key == "torus.tune") spec.tune_torus = parse_bool(val, key);
        else if (key == "torus.nd_grid") spec.torus_nd_grid = parse_int_list(val, key);
        else if (key == "torus.nw_grid") spec.torus_nw_grid = parse_int_list(val, key);
        else if (key == "torus.nd") spec.torus_nd_fixed = one_int();
        else if (key == "torus.nw") spec.torus_nw_fixed = one_int();
        else throw InvalidConfig(path + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    return spec;
}

std::vector<Split> expanding_splits(const Dataset& data, const std::vector<int>& test_years) {
    if (data.empty()) throw InsufficientHistory("empty dataset");
    if (test_years.empty()) throw InsufficientHistory("no test year requested");
    std::vector<int> years = test_years;
    std::sort(years.begin(), years.end());  // keeps pooled series chronological
    std::set<int> seen;
    std::vector<Split> out;
    for (int year : years) {
        if (!seen.insert(year).second) {
            throw InsufficientHistory("duplicate test year " + std::to_string(year));
        }
        const CivilDate test_first{year, 1, 1};
        const CivilDate test_last{year, 12, 31};

        std::size_t covered = 0;
        for (std::int64_t z = days_from_civil(test_first); z <= days_from_civil(test_last); ++z) {
            if (data.find(civil_from_days(z)) != nullptr) ++covered;
        }
        if (covered != static_cast<std::size_t>(year_length(year))) {
            throw InsufficientHistory("test year " + std::to_string(year) +
                                      " is not fully covered by the dataset");
        }
        if (data.first_date() > CivilDate{year - 1, 1, 1}) {
            throw InsufficientHistory("test year " + std::to_string(year) +
                                      " lacks a full prior year of training data");
        }
        Split s;
        s.train = DateRange{data.first_date(), CivilDate{year - 1, 12, 31}};
        s.test = DateRange{test_first, test_last};
        s.test_year = year;
        out.push_back(s);
    }
    return out;
}

// ---------------------------------------------------------------------------
// forecaster adapters

namespace {

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

// shared wiring of the four feature-matrix models
class FeatureForecaster : public Forecaster {
public:
    void fit(const Dataset& data, const DateRange& train, TempSource source,
             const TuningSpec& tuning, std::uint64_t seed, const HolidayCalendar& cal) final {
        source_ = source;
        const FeatureMatrix m = build_matrix(data, train, source, cal);
        scaler_ = m.scaler;
        fit_inner(m, tuning, seed);
    }

    std::optional<double> predict(const Dataset& data, const CivilDate& t,
                                  const HolidayCalendar& cal) const final {
        const auto raw = build_row(data, t, source_, cal);
        if (!raw) return std::nullopt;
        return predict_inner(scaler_.standardize(*raw));
    }

protected:
    virtual void fit_inner(const FeatureMatrix& m, const TuningSpec& tuning,
                           std::uint64_t seed) = 0;
    virtual double predict_inner(const Eigen::RowVectorXd& x) const = 0;

    TempSource source_ = TempSource::forecast;
    FeatureScaler scaler_;
};

class RidgeForecaster final : public FeatureForecaster {
public:
    ModelKind kind() const override { return ModelKind::ridge; }
    std::string describe() const override {
        return "lambda=" + fmt_g(model_.lambda()) + " df=" + fmt_g(df_);
    }

private:
    void fit_inner(const FeatureMatrix& m, const TuningSpec& tuning, std::uint64_t) override {
        double lambda = tuning.ridge_lambda_fixed;
        if (tuning.tune_ridge) {
            GridSpec grid;
            grid.axes.push_back({"lambda", tuning.ridge_lambda_grid});
            grid.folds = tuning.folds;
            lambda = kfold_grid_search(ModelKind::ridge, m.X, m.y, grid).best_value("lambda");
        }
        model_.fit(m.X, m.y, lambda);
        df_ = ridge_df(m.X, lambda);
    }
    double predict_inner(const Eigen::RowVectorXd& x) const override { return model_.predict(x); }

    RidgeModel model_;
    double df_ = 0.0;
};

class GpForecaster final : public FeatureForecaster {
public:
    ModelKind kind() const override { return ModelKind::gp; }
    std::string describe() const override {
        return "nu=" + fmt_g(model_.nu()) + " l=" + fmt_g(model_.length_scale()) +
               " sigma2=" + fmt_g(model_.sigma2());
    }

private:
    void fit_inner(const FeatureMatrix& m, const TuningSpec& tuning, std::uint64_t) override {
        double nu = tuning.gp_nu_fixed;
        double l = tuning.gp_l_fixed;
        double s2 = tuning.gp_sigma2_fixed;
        if (tuning.tune_gp) {
            const GpTuneResult r =
                tune_gp(m.X, m.y, tuning.gp_nu_grid, tuning.gp_l_grid, tuning.gp_sigma2_grid);
            nu = r.nu;
            l = r.length_scale;
            s2 = r.sigma2;
        }
        model_.fit(m.X, m.y, nu, l, s2);
    }
    double predict_inner(const Eigen::RowVectorXd& x) const override { return model_.predict(x); }

    GpModel model_;
};

class KnnForecaster final : public FeatureForecaster {
public:
    ModelKind kind() const override { return ModelKind::knn; }
    std::string describe() const override {
        return "k=" + std::to_string(model_.k()) + " weights=" + to_string(model_.weighting());
    }

private:
    void fit_inner(const FeatureMatrix& m, const TuningSpec& tuning, std::uint64_t) override {
        int k = tuning.knn_k_fixed;
        KnnWeighting w = tuning.knn_weighting_fixed;
        if (tuning.tune_knn) {
            GridSpec grid;
            std::vector<double> ks;
            for (int i = tuning.knn_k_min; i <= tuning.knn_k_max; ++i) {
                ks.push_back(static_cast<double>(i));
            }
            std::vector<double> ws;
            if (tuning.knn_uniform) ws.push_back(0.0);
            if (tuning.knn_inverse) ws.push_back(1.0);
            grid.axes.push_back({"weighting", ws});
            grid.axes.push_back({"k", ks});
            grid.folds = tuning.folds;
            const auto r = kfold_grid_search(ModelKind::knn, m.X, m.y, grid);
            k = static_cast<int>(r.best_value("k"));
            w = r.best_value("weighting") == 0.0 ? KnnWeighting::uniform
                                                 : KnnWeighting::inverse_distance;
        }
        model_.fit(m.X, m.y, k, w);
    }
    double predict_inner(const Eigen::RowVectorXd& x) const override { return model_.predict(x); }

    KnnModel model_;
};

class MlpForecaster final : public FeatureForecaster {
public:
    ModelKind kind() const override { return ModelKind::mlp; }
    std::string describe() const override {
        return "lr=" + fmt_g(model_.config().learning_rate) +
               " batch=" + std::to_string(model_.config().batch_size) +
               " epochs=" + std::to_string(model_.config().epochs);
    }

private:
    void fit_inner(const FeatureMatrix& m, const TuningSpec& tuning, std::uint64_t seed) override {
        MlpConfig cfg = tuning.mlp_base;
        cfg.seed = seed;
        if (tuning.tune_mlp) {
            GridSpec grid;
            grid.axes.push_back({"lr", tuning.mlp_lr_grid});
            grid.axes.push_back({"batch", tuning.mlp_batch_grid});
            grid.folds = tuning.folds;
            const auto r = kfold_grid_search(ModelKind::mlp, m.X, m.y, grid, cfg);
            cfg.learning_rate = r.best_value("lr");
            cfg.batch_size = static_cast<int>(r.best_value("batch"));
        }
        model_.fit(m.X, m.y, cfg);
    }
    double predict_inner(const Eigen::RowVectorXd& x) const override { return model_.predict(x); }

    MlpModel model_;
};

class TorusForecaster final : public Forecaster {
public:
    ModelKind kind() const override { return ModelKind::torus; }

    void fit(const Dataset& data, const DateRange& train, TempSource source,
             const TuningSpec& tuning, std::uint64_t, const HolidayCalendar& cal) override {
        source_ = source;
        int nd = tuning.torus_nd_fixed;
        int nw = tuning.torus_nw_fixed;
        if (tuning.tune_torus) {
            const auto r =
                tune_torus(data, train, source, tuning.torus_nd_grid, tuning.torus_nw_grid, cal);
            nd = r.n_daily;
            nw = r.n_weekly;
        }
        model_.fit(data, train, source, nd, nw, cal);
    }

    std::optional<double> predict(const Dataset& data, const CivilDate& t,
                                  const HolidayCalendar& cal) const override {
        const auto prev_rgd = data.rgd_at(add_days(t, -1));
        if (!prev_rgd || !(*prev_rgd > 0.0)) return std::nullopt;
        // long-term terms need temperatures through t-2
        for (int back = 0; back <= 2; ++back) {
            if (data.find(add_days(t, -back)) == nullptr) return std::nullopt;
        }
        return model_.predict(data, source_, t, *prev_rgd, cal);
    }

    std::string describe() const override {
        return "Nd=" + std::to_string(model_.n_daily()) + " Nw=" + std::to_string(model_.n_weekly());
    }

private:
    TempSource source_ = TempSource::forecast;
    TorusModel model_;
};

}  // namespace

std::unique_ptr<Forecaster> make_forecaster(ModelKind kind) {
    switch (kind) {
        case ModelKind::ridge: return std::make_unique<RidgeForecaster>();
        case ModelKind::gp: return std::make_unique<GpForecaster>();
        case ModelKind::knn: return std::make_unique<KnnForecaster>();
        case ModelKind::mlp: return std::make_unique<MlpForecaster>();
        case ModelKind::torus: return std::make_unique<TorusForecaster>();
    }
    throw Error("unknown model kind");
}

bool lookahead_audit(const Forecaster& model, const Dataset& data,
                     const std::vector<CivilDate>& days, const HolidayCalendar& cal) {
    for (const CivilDate& t : days) {
        const auto full = model.predict(data, t, cal);

        std::vector<DailyRecord> censored;
        for (const auto& r : data.records()) {
            if (r.date > t) break;
            DailyRecord c = r;
            if (r.date == t) c.rgd = std::numeric_limits<double>::quiet_NaN();
            censored.push_back(c);
        }
        const auto cut = model.predict(Dataset(std::move(censored)), t, cal);

        if (full.has_value() != cut.has_value()) return false;
        if (full && (*full != *cut || !std::isfinite(*cut))) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// report assembly

CellEval evaluate_cell(const std::vector<Prediction>& preds) {
    CellEval c;
    c.n = preds.size();
    if (preds.empty()) return c;
    std::vector<double> actual;
    std::vector<double> predicted;
    std::vector<double> residuals;
    for (const auto& p : preds) {
        actual.push_back(p.actual);
        predicted.push_back(p.predicted);
        residuals.push_back(p.actual - p.predicted);
    }
    c.rmse = rmse(actual, predicted);
    c.mae = mae(actual, predicted);
    c.mape = mape(actual, predicted);
    c.mae_rmse_ratio = c.rmse > 0.0 ? c.mae / c.rmse : 1.0;
    return c;
}

const ModelSessionEval* BacktestReport::find(ModelKind m, TempSource s) const {
    for (const auto& e : evals) {
        if (e.model == m && e.session == s) return &e;
    }
    return nullptr;
}

const LimitRow* BacktestReport::limit_for(int year) const {
    for (const auto& l : limits) {
        if (l.year == year) return &l;
    }
    return nullptr;
}

BacktestReport run_backtest(const BacktestPlan& plan, const Dataset& data,
                            const HolidayCalendar& cal, const ProgressFn& progress) {
    if (plan.splits.empty()) throw InsufficientHistory("backtest plan has no split");
    if (plan.models.empty()) throw Error("backtest plan has no model");
    if (plan.sessions.empty()) throw Error("backtest plan has no session");

    const bool wants_actual = std::any_of(plan.sessions.begin(), plan.sessions.end(),
                                          [](TempSource s) { return s == TempSource::actual; });
    if (wants_actual && !data.has_actual_temperature()) {
        throw MissingActualTemperature(
            "the actual-temperature session needs the temp_actual column");
    }

    BacktestReport rep;
    rep.models = plan.models;
    rep.sessions = plan.sessions;
    for (const auto& s : plan.splits) rep.test_years.push_back(s.test_year);

    for (TempSource session : plan.sessions) {
        for (std::size_t mi = 0; mi < plan.models.size(); ++mi) {
            const ModelKind kind = plan.models[mi];
            ModelSessionEval eval;
            eval.model = kind;
            eval.session = session;

            for (std::size_t si = 0; si < plan.splits.size(); ++si) {
                const Split& split = plan.splits[si];
                // seed depends on model and split only, so coinciding
                // temperature sources give bit-identical sessions
                const std::uint64_t seed = derive_seed(plan.seed, mi * 257 + si);
                if (progress) {
                    progress(to_string(kind) + " / " + to_string(session) + " / " +
                             std::to_string(split.test_year));
                }
                try {
                    auto model = make_forecaster(kind);
                    model->fit(data, split.train, session, plan.tuning, seed, cal);
                    eval.hyperparams[split.test_year] = model->describe();

                    std::vector<Prediction> split_preds;
                    for (std::int64_t z = days_from_civil(split.test.first);
                         z <= days_from_civil(split.test.last); ++z) {
                        const CivilDate t = civil_from_days(z);
                        const DailyRecord* rec = data.find(t);
                        if (rec == nullptr) continue;
                        const auto pred = model->predict(data, t, cal);
                        if (!pred) continue;
                        split_preds.push_back({t, rec->rgd, *pred});
                    }
                    eval.by_year[split.test_year] = evaluate_cell(split_preds);
                    eval.predictions.insert(eval.predictions.end(), split_preds.begin(),
                                            split_preds.end());
                } catch (const Error& e) {
                    rep.warnings.push_back(to_string(kind) + " (" + to_string(session) +
                                           ", test " + std::to_string(split.test_year) +
                                           ") failed: " + e.what());
                }
            }
            eval.aggregate = evaluate_cell(eval.predictions);
            if (!eval.predictions.empty()) {
                std::vector<CivilDate> dates;
                std::vector<double> act;
                std::vector<double> prd;
                for (const auto& p : eval.predictions) {
                    dates.push_back(p.date);
                    act.push_back(p.actual);
                    prd.push_back(p.predicted);
                }
                eval.monthly = monthly_breakdown(dates, act, prd);
            }
            rep.evals.push_back(std::move(eval));
        }
    }

    // performance limits from the test-year records (both temperature
    // columns required)
    if (data.has_actual_temperature()) {
        std::vector<DailyRecord> pooled;
        for (const Split& split : plan.splits) {
            std::vector<DailyRecord> year_recs;
            for (std::int64_t z = days_from_civil(split.test.first);
                 z <= days_from_civil(split.test.last); ++z) {
                const DailyRecord* r = data.find(civil_from_days(z));
                if (r != nullptr) year_recs.push_back(*r);
            }
            pooled.insert(pooled.end(), year_recs.begin(), year_recs.end());
            try {
                LimitRow row;
                row.year = split.test_year;
                row.params = estimate_params(Dataset(std::move(year_recs)));
                row.limit = performance_limit(row.params);
                rep.limits.push_back(row);
            } catch (const Error& e) {
                rep.warnings.push_back("limit for " + std::to_string(split.test_year) +
                                       " unavailable: " + e.what());
            }
        }
        try {
            LimitRow all;
            all.year = 0;
            all.params = estimate_params(Dataset(std::move(pooled)));
            all.limit = performance_limit(all.params);
            rep.limits.push_back(all);
        } catch (const Error& e) {
            rep.warnings.push_back(std::string("pooled limit unavailable: ") + e.what());
        }
    }

    // predicted vs measured degradation when both sessions ran
    const bool both = std::count(plan.sessions.begin(), plan.sessions.end(), TempSource::actual) &&
                      std::count(plan.sessions.begin(), plan.sessions.end(), TempSource::forecast);
    if (both && !rep.limits.empty()) {
        for (ModelKind kind : plan.models) {
            const ModelSessionEval* s1 = rep.find(kind, TempSource::actual);
            const ModelSessionEval* s2 = rep.find(kind, TempSource::forecast);
            if (s1 == nullptr || s2 == nullptr) continue;
            auto add_row = [&](int year, const CellEval& a, const CellEval& b) {
                const LimitRow* lim = rep.limit_for(year);
                if (lim == nullptr || a.n == 0 || b.n == 0) return;
                RmseComparison c;
                c.model = kind;
                c.year = year;
                c.session1_rmse = a.rmse;
                c.predicted_session2 = std::sqrt(a.rmse * a.rmse + lim->limit * lim->limit);
                c.measured_session2 = b.rmse;
                rep.comparisons.push_back(c);
            };
            for (const auto& [year, cell] : s1->by_year) {
                const auto it = s2->by_year.find(year);
                if (it != s2->by_year.end()) add_row(year, cell, it->second);
            }
            add_row(0, s1->aggregate, s2->aggregate);
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// CSV emission

namespace {

std::ofstream open_csv(const std::string& path, const CsvOptions& opts) {
    std::ofstream out(path);
    if (!out) throw CsvError("cannot write " + path);
    if (opts.timestamp) {
        char buf[64];
        const std::time_t now = std::time(nullptr);
        std::tm tm_utc{};
        gmtime_r(&now, &tm_utc);
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
        out << "# generated: " << buf << "\n";
    }
    return out;
}

std::string fmt_cell(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

}  // namespace

void write_metric_table_csv(const std::string& path, const BacktestReport& rep, TempSource session,
                            const std::string& metric, const CsvOptions& opts) {
    auto out = open_csv(path, opts);
    out << "model";
    for (int y : rep.test_years) out << "," << y;
    out << ",all\n";
    for (ModelKind m : rep.models) {
        const ModelSessionEval* e = rep.find(m, session);
        if (e == nullptr) continue;
        out << to_string(m);
        auto value = [&](const CellEval& c) {
            if (metric == "rmse") return c.rmse;
            if (metric == "mae") return c.mae;
            if (metric == "mape") return c.mape;
            throw Error("unknown metric '" + metric + "'");
        };
        for (int y : rep.test_years) {
            const auto it = e->by_year.find(y);
            out << "," << (it == e->by_year.end() ? "" : fmt_cell(value(it->second)));
        }
        out << "," << fmt_cell(value(e->aggregate)) << "\n";
    }
}

void write_predicted_rmse_csv(const std::string& path, const BacktestReport& rep,
                              const CsvOptions& opts) {
    auto out = open_csv(path, opts);
    out << "model";
    for (int y : rep.test_years) out << "," << y;
    out << ",all\n";
    out << "performance_limit";
    for (int y : rep.test_years) {
        const LimitRow* l = rep.limit_for(y);
        out << "," << (l != nullptr ? fmt_cell(l->limit) : "");
    }
    const LimitRow* la = rep.limit_for(0);
    out << "," << (la != nullptr ? fmt_cell(la->limit) : "") << "\n";

    for (ModelKind m : rep.models) {
        const ModelSessionEval* e = rep.find(m, TempSource::actual);
        if (e == nullptr) continue;
        out << to_string(m);
        auto quad = [&](int year, const CellEval& c) -> std::string {
            const LimitRow* l = rep.limit_for(year);
            if (l == nullptr || c.n == 0) return "";
            return fmt_cell(std::sqrt(c.rmse * c.rmse + l->limit * l->limit));
        };
        for (int y : rep.test_years) {
            const auto it = e->by_year.find(y);
            out << "," << (it == e->by_year.end() ? "" : quad(y, it->second));
        }
        out << "," << quad(0, e->aggregate) << "\n";
    }
}

void write_monthly_csv(const std::string& path, const BacktestReport& rep, TempSource session,
                       const CsvOptions& opts) {
    auto out = open_csv(path, opts);
    out << "month";
    for (ModelKind m : rep.models) out << ",mape_" << to_string(m);
    for (ModelKind m : rep.models) out << ",mae_" << to_string(m);
    out << "\n";
    for (int month = 1; month <= 12; ++month) {
        std::string row = std::to_string(month);
        bool any = false;
        auto cell = [&](ModelKind m, bool want_mape) -> std::string {
            const ModelSessionEval* e = rep.find(m, session);
            if (e == nullptr) return "";
            for (const auto& s : e->monthly) {
                if (s.month == month) {
                    any = true;
                    return fmt_cell(want_mape ? s.mape : s.mae);
                }
            }
            return "";
        };
        for (ModelKind m : rep.models) row += "," + cell(m, true);
        for (ModelKind m : rep.models) row += "," + cell(m, false);
        if (any) out << row << "\n";
    }
}

void write_comparison_csv(const std::string& path, const BacktestReport& rep,
                          const CsvOptions& opts) {
    auto out = open_csv(path, opts);
    out << "model,year,session1_rmse,predicted_session2_rmse,measured_session2_rmse\n";
    for (const auto& c : rep.comparisons) {
        out << to_string(c.model) << "," << (c.year == 0 ? "all" : std::to_string(c.year)) << ","
            << fmt_cell(c.session1_rmse) << "," << fmt_cell(c.predicted_session2) << ","
            << fmt_cell(c.measured_session2) << "\n";
    }
}

void write_predictions_csv(const std::string& path, const BacktestReport& rep, TempSource session,
                           const CsvOptions& opts) {
    auto out = open_csv(path, opts);
    out << "date,actual";
    std::vector<const ModelSessionEval*> evals;
    for (ModelKind m : rep.models) {
        const ModelSessionEval* e = rep.find(m, session);
        if (e != nullptr && !e->predictions.empty()) {
            evals.push_back(e);
            out << ",predicted_" << to_string(m);
        }
    }
    out << "\n";
    if (evals.empty()) return;
    // align on the first model's dates; models may skip days they cannot
    // predict, those cells stay empty
    const auto& base = evals.front()->predictions;
    char buf[40];
    for (const auto& p : base) {
        out << to_iso(p.date);
        std::snprintf(buf, sizeof(buf), ",%.6f", p.actual);
        out << buf;
        for (const ModelSessionEval* e : evals) {
            const auto it = std::lower_bound(
                e->predictions.begin(), e->predictions.end(), p.date,
                [](const Prediction& a, const CivilDate& d) { return a.date < d; });
            if (it != e->predictions.end() && it->date == p.date) {
                std::snprintf(buf, sizeof(buf), ",%.6f", it->predicted);
                out << buf;
            } else {
                out << ",";
            }
        }
        out << "\n";
    }
}

}  // namespace gascast
