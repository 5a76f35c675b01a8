#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gascast/calendar.hpp"
#include "gascast/dataset.hpp"
#include "gascast/errorprop.hpp"
#include "gascast/features.hpp"
#include "gascast/metrics.hpp"
#include "gascast/models/kind.hpp"
#include "gascast/models/knn.hpp"
#include "gascast/models/mlp.hpp"
#include "gascast/tuning.hpp"

namespace gascast {

// Per-model hyperparameter policy: cross-validate/optimize on each
// training split, or use the fixed values.
struct TuningSpec {
    int folds = 5;

    bool tune_ridge = true;
    std::vector<double> ridge_lambda_grid;  // default: 1e-4 .. 1e2, half-decade steps
    double ridge_lambda_fixed = 1e-4;

    bool tune_knn = true;
    int knn_k_min = 1;
    int knn_k_max = 30;
    bool knn_uniform = true;   // include uniform weights in the grid
    bool knn_inverse = true;   // include inverse-distance weights
    int knn_k_fixed = 7;
    KnnWeighting knn_weighting_fixed = KnnWeighting::inverse_distance;

    bool tune_gp = true;
    std::vector<double> gp_nu_grid{0.5, 1.5, 2.5};
    std::vector<double> gp_l_grid{3.0, 10.0, 30.0};
    std::vector<double> gp_sigma2_grid{0.01, 0.1, 1.0};
    double gp_nu_fixed = 1.5;
    double gp_l_fixed = 10.0;
    double gp_sigma2_fixed = 0.1;

    // the full MLP grid retrains the network per fold and point; fixed
    // settings are the default
    bool tune_mlp = false;
    std::vector<double> mlp_lr_grid{5e-4, 1e-3, 2e-3};
    std::vector<double> mlp_batch_grid{16, 32, 64};
    MlpConfig mlp_base;  // hidden {24,12,4}, lr 1e-3, batch 32, 1000 epochs

    bool tune_torus = true;
    std::vector<int> torus_nd_grid{0, 1, 2, 3, 4};
    std::vector<int> torus_nw_grid{0, 1, 2, 3, 4};
    int torus_nd_fixed = 1;
    int torus_nw_fixed = 3;

    TuningSpec();

    // plain-text key=value file; unknown keys are errors
    static TuningSpec from_file(const std::string& path);
};

struct Split {
    DateRange train;
    DateRange test;
    int test_year = 0;
};

// For test year Y: train on [dataset start, Dec 31 of Y-1], test on all of
// Y. Each test year must be fully covered and preceded by at least one
// full year of data.
std::vector<Split> expanding_splits(const Dataset& data, const std::vector<int>& test_years);

// Uniform day-ahead contract over the five predictors: fit on a training
// range, then predict single days using only information available the
// previous evening (realized demand lags, the day's temperature from the
// session source).
class Forecaster {
public:
    virtual ~Forecaster() = default;
    virtual ModelKind kind() const = 0;
    virtual void fit(const Dataset& data, const DateRange& train, TempSource source,
                     const TuningSpec& tuning, std::uint64_t seed, const HolidayCalendar& cal) = 0;
    virtual std::optional<double> predict(const Dataset& data, const CivilDate& t,
                                          const HolidayCalendar& cal) const = 0;
    virtual std::string describe() const = 0;  // resolved hyperparameters
};

std::unique_ptr<Forecaster> make_forecaster(ModelKind kind);

// Predictions must not change when every record after t is removed and the
// demand of day t is hidden. Returns false on the first mismatch.
bool lookahead_audit(const Forecaster& model, const Dataset& data,
                     const std::vector<CivilDate>& days, const HolidayCalendar& cal);

struct BacktestPlan {
    std::vector<Split> splits;
    std::vector<ModelKind> models{ModelKind::ridge, ModelKind::gp, ModelKind::knn, ModelKind::mlp,
                                  ModelKind::torus};
    std::vector<TempSource> sessions{TempSource::actual, TempSource::forecast};
    TuningSpec tuning;
    std::uint64_t seed = 1;
};

struct Prediction {
    CivilDate date;
    double actual = 0.0;
    double predicted = 0.0;
};

struct CellEval {
    std::size_t n = 0;
    double rmse = 0.0;
    double mae = 0.0;
    double mape = 0.0;
    double mae_rmse_ratio = 0.0;
};

CellEval evaluate_cell(const std::vector<Prediction>& preds);

struct ModelSessionEval {
    ModelKind model = ModelKind::ridge;
    TempSource session = TempSource::forecast;
    std::map<int, CellEval> by_year;
    CellEval aggregate;  // pooled over all test days
    std::vector<MonthlyStats> monthly;
    std::vector<Prediction> predictions;
    std::map<int, std::string> hyperparams;  // per test year
};

struct LimitRow {
    int year = 0;  // 0 = all test years pooled
    ErrorPropParams params;
    double limit = 0.0;
};

struct RmseComparison {
    ModelKind model = ModelKind::ridge;
    int year = 0;  // 0 = aggregate
    double session1_rmse = 0.0;
    double predicted_session2 = 0.0;  // sqrt(session1^2 + limit^2)
    double measured_session2 = 0.0;
};

struct BacktestReport {
    std::vector<int> test_years;
    std::vector<ModelKind> models;
    std::vector<TempSource> sessions;
    std::vector<ModelSessionEval> evals;
    std::vector<LimitRow> limits;            // only when actual temps exist
    std::vector<RmseComparison> comparisons; // only when both sessions ran
    std::vector<std::string> warnings;

    const ModelSessionEval* find(ModelKind m, TempSource s) const;
    const LimitRow* limit_for(int year) const;
};

using ProgressFn = std::function<void(const std::string&)>;

BacktestReport run_backtest(const BacktestPlan& plan, const Dataset& data,
                            const HolidayCalendar& cal, const ProgressFn& progress = {});

// CSV emission. Tables are models x (years, pooled); the predicted table
// carries the performance-limit row and the quadrature predictions from
// the actual-temperature session.
struct CsvOptions {
    bool timestamp = false;
};
void write_metric_table_csv(const std::string& path, const BacktestReport& rep, TempSource session,
                            const std::string& metric, const CsvOptions& opts = {});
void write_predicted_rmse_csv(const std::string& path, const BacktestReport& rep,
                              const CsvOptions& opts = {});
void write_monthly_csv(const std::string& path, const BacktestReport& rep, TempSource session,
                       const CsvOptions& opts = {});
void write_comparison_csv(const std::string& path, const BacktestReport& rep,
                          const CsvOptions& opts = {});
void write_predictions_csv(const std::string& path, const BacktestReport& rep, TempSource session,
                           const CsvOptions& opts = {});

}  // namespace gascast
