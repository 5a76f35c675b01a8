#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <utility>
#include <vector>

#include "gascast/calendar.hpp"
#include "gascast/dataset.hpp"
#include "gascast/models/kind.hpp"
#include "gascast/models/mlp.hpp"

namespace gascast {

// validation slice [begin, end) of the chronologically ordered rows
struct Fold {
    std::size_t begin = 0;
    std::size_t end = 0;
};

// Contiguous unshuffled folds covering [0, n) exactly; sizes differ by at
// most one. Throws DegenerateFold when a fold would hold fewer than 2 rows.
std::vector<Fold> make_folds(std::size_t n, int k);

// Hyperparameter grid: named axes with candidate values, evaluated as a
// cartesian product in declaration order (first axis slowest). Scoring is
// mean validation MSE across the folds.
struct GridSpec {
    std::vector<std::pair<std::string, std::vector<double>>> axes;
    int folds = 5;
};

struct GridPointScore {
    std::vector<double> values;  // aligned with the axes
    double mean_mse = 0.0;
};

struct GridSearchResult {
    std::vector<std::string> axis_names;
    std::vector<double> best;  // values of the winning point
    double best_score = 0.0;
    std::vector<GridPointScore> table;  // enumeration order

    double best_value(const std::string& axis) const;
};

// K-fold cross-validated grid search for the feature-matrix models.
// Supported kinds: ridge (axis "lambda"), knn (axes "k", "weighting" with
// 0 = uniform, 1 = inverse distance), mlp (axes "lr", "batch"; the
// remaining settings come from mlp_base). Exact score ties resolve to the
// point enumerated first.
GridSearchResult kfold_grid_search(ModelKind kind, const Eigen::MatrixXd& X,
                                   const Eigen::VectorXd& y, const GridSpec& grid,
                                   const MlpConfig& mlp_base = MlpConfig{});

struct GpTuneResult {
    double nu = 1.5;
    double length_scale = 10.0;
    double sigma2 = 0.1;
    double log_marginal_likelihood = 0.0;
    // (nu, l, sigma2, lml) per feasible grid point, enumeration order
    std::vector<std::array<double, 4>> table;
};

// Empirical-Bayes grid search: the point maximizing the log marginal
// likelihood of the standardized targets. Numerically infeasible points
// are skipped; if none survives, AllGridPointsFailed is thrown.
GpTuneResult tune_gp(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                     const std::vector<double>& nu_grid, const std::vector<double>& l_grid,
                     const std::vector<double>& sigma2_grid);

// Akaike information criterion under the concentrated Gaussian likelihood.
double aic_concentrated(std::size_t n, double rss, int k);

struct TorusTuneResult {
    int n_daily = 0;
    int n_weekly = 0;
    double aic = 0.0;
    std::vector<std::array<double, 3>> table;  // (n_d, n_w, aic)
};

// Minimizes AIC of the log-demand fit over the harmonic-count grid.
TorusTuneResult tune_torus(const Dataset& data, const DateRange& train, TempSource source,
                           const std::vector<int>& nd_grid, const std::vector<int>& nw_grid,
                           const HolidayCalendar& cal);

}  // namespace gascast
