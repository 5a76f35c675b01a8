#include "gascast/tuning.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "gascast/errors.hpp"
#include "gascast/models/gp.hpp"
#include "gascast/models/knn.hpp"
#include "gascast/models/ridge.hpp"
#include "gascast/models/torus.hpp"

namespace gascast {

std::vector<Fold> make_folds(std::size_t n, int k) {
    if (k < 2) throw DegenerateFold("fold count must be >= 2");
    if (static_cast<std::size_t>(k) > n) throw DegenerateFold("fold count exceeds row count");
    std::vector<Fold> folds;
    const std::size_t base = n / static_cast<std::size_t>(k);
    const std::size_t extra = n % static_cast<std::size_t>(k);
    std::size_t pos = 0;
    for (int i = 0; i < k; ++i) {
        const std::size_t len = base + (static_cast<std::size_t>(i) < extra ? 1 : 0);
        if (len < 2) throw DegenerateFold("a fold would hold fewer than 2 rows");
        folds.push_back({pos, pos + len});
        pos += len;
    }
    return folds;
}

double GridSearchResult::best_value(const std::string& axis) const {
    for (std::size_t i = 0; i < axis_names.size(); ++i) {
        if (axis_names[i] == axis) return best[i];
    }
    throw Error("grid search result has no axis '" + axis + "'");
}

namespace {

// train/validation split of one fold, chronological order preserved
struct FoldData {
    Eigen::MatrixXd train_X;
    Eigen::VectorXd train_y;
    Eigen::MatrixXd val_X;
    Eigen::VectorXd val_y;
};

FoldData materialize_fold(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const Fold& f) {
    const auto n = static_cast<std::size_t>(X.rows());
    FoldData d;
    const auto val_n = static_cast<Eigen::Index>(f.end - f.begin);
    const auto train_n = static_cast<Eigen::Index>(n) - val_n;
    d.train_X.resize(train_n, X.cols());
    d.train_y.resize(train_n);
    d.val_X.resize(val_n, X.cols());
    d.val_y.resize(val_n);
    Eigen::Index ti = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto ei = static_cast<Eigen::Index>(i);
        if (i >= f.begin && i < f.end) {
            d.val_X.row(ei - static_cast<Eigen::Index>(f.begin)) = X.row(ei);
            d.val_y(ei - static_cast<Eigen::Index>(f.begin)) = y(ei);
        } else {
            d.train_X.row(ti) = X.row(ei);
            d.train_y(ti) = y(ei);
            ++ti;
        }
    }
    return d;
}

std::vector<std::vector<double>> cartesian(const GridSpec& grid) {
    std::vector<std::vector<double>> points{{}};
    for (const auto& [name, values] : grid.axes) {
        if (values.empty()) throw Error("grid axis '" + name + "' is empty");
        std::vector<std::vector<double>> next;
        next.reserve(points.size() * values.size());
        for (const auto& p : points) {
            for (double v : values) {
                auto q = p;
                q.push_back(v);
                next.push_back(std::move(q));
            }
        }
        points = std::move(next);
    }
    return points;
}

double mse_of(const Eigen::VectorXd& truth, const Eigen::VectorXd& pred) {
    return (truth - pred).squaredNorm() / static_cast<double>(truth.size());
}

GridSearchResult search_ridge(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                              const GridSpec& grid) {
    const auto folds = make_folds(static_cast<std::size_t>(X.rows()), grid.folds);
    const auto points = cartesian(grid);
    GridSearchResult res;
    for (const auto& [name, _] : grid.axes) res.axis_names.push_back(name);

    std::vector<FoldData> data;
    data.reserve(folds.size());
    for (const auto& f : folds) data.push_back(materialize_fold(X, y, f));

    for (const auto& p : points) {
        double acc = 0.0;
        for (const auto& d : data) {
            RidgeModel m;
            m.fit(d.train_X, d.train_y, p[0]);
            acc += mse_of(d.val_y, m.predict(d.val_X));
        }
        res.table.push_back({p, acc / static_cast<double>(data.size())});
    }
    return res;
}

GridSearchResult search_mlp(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                            const GridSpec& grid, const MlpConfig& base) {
    const auto folds = make_folds(static_cast<std::size_t>(X.rows()), grid.folds);
    const auto points = cartesian(grid);
    GridSearchResult res;
    for (const auto& [name, _] : grid.axes) res.axis_names.push_back(name);

    for (const auto& p : points) {
        MlpConfig cfg = base;
        for (std::size_t a = 0; a < grid.axes.size(); ++a) {
            if (grid.axes[a].first == "lr") cfg.learning_rate = p[a];
            else if (grid.axes[a].first == "batch") cfg.batch_size = static_cast<int>(p[a]);
            else throw Error("mlp grid: unknown axis '" + grid.axes[a].first + "'");
        }
        double acc = 0.0;
        for (const auto& f : folds) {
            const FoldData d = materialize_fold(X, y, f);
            MlpModel m;
            m.fit(d.train_X, d.train_y, cfg);
            acc += mse_of(d.val_y, m.predict(d.val_X));
        }
        res.table.push_back({p, acc / static_cast<double>(folds.size())});
    }
    return res;
}

// Neighbour lists per fold are computed once up to the largest K and
// reused for every (k, weighting) grid point; the scores are identical to
// refitting per point.
GridSearchResult search_knn(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                            const GridSpec& grid) {
    const auto folds = make_folds(static_cast<std::size_t>(X.rows()), grid.folds);
    const auto points = cartesian(grid);
    GridSearchResult res;
    for (const auto& [name, _] : grid.axes) res.axis_names.push_back(name);

    int k_axis = -1;
    int w_axis = -1;
    for (std::size_t a = 0; a < grid.axes.size(); ++a) {
        if (grid.axes[a].first == "k") k_axis = static_cast<int>(a);
        else if (grid.axes[a].first == "weighting") w_axis = static_cast<int>(a);
        else throw Error("knn grid: unknown axis '" + grid.axes[a].first + "'");
    }
    if (k_axis < 0) throw Error("knn grid: missing axis 'k'");

    int k_max = 0;
    for (const auto& p : points) k_max = std::max(k_max, static_cast<int>(p[static_cast<std::size_t>(k_axis)]));

    // per fold, per validation row: the k_max nearest (distance, target)
    struct Neighbours {
        std::vector<std::vector<std::pair<double, double>>> rows;
        Eigen::VectorXd truth;
    };
    std::vector<Neighbours> per_fold;
    for (const auto& f : folds) {
        const FoldData d = materialize_fold(X, y, f);
        const int kk = std::min<int>(k_max, static_cast<int>(d.train_X.rows()));
        Neighbours nb;
        nb.truth = d.val_y;
        nb.rows.resize(static_cast<std::size_t>(d.val_X.rows()));
        for (Eigen::Index v = 0; v < d.val_X.rows(); ++v) {
            std::vector<std::pair<double, Eigen::Index>> dist(static_cast<std::size_t>(d.train_X.rows()));
            for (Eigen::Index i = 0; i < d.train_X.rows(); ++i) {
                dist[static_cast<std::size_t>(i)] = {(d.train_X.row(i) - d.val_X.row(v)).norm(), i};
            }
            std::partial_sort(dist.begin(), dist.begin() + kk, dist.end());
            auto& row = nb.rows[static_cast<std::size_t>(v)];
            row.reserve(static_cast<std::size_t>(kk));
            for (int j = 0; j < kk; ++j) {
                row.push_back({dist[static_cast<std::size_t>(j)].first,
                               d.train_y(dist[static_cast<std::size_t>(j)].second)});
            }
        }
        per_fold.push_back(std::move(nb));
    }

    for (const auto& p : points) {
        const int k = static_cast<int>(p[static_cast<std::size_t>(k_axis)]);
        const bool inverse = w_axis >= 0 && p[static_cast<std::size_t>(w_axis)] != 0.0;
        if (k < 1) throw Error("knn grid: k must be >= 1");
        double acc = 0.0;
        for (const auto& nb : per_fold) {
            double se = 0.0;
            for (std::size_t v = 0; v < nb.rows.size(); ++v) {
                const auto& row = nb.rows[v];
                const int kk = std::min<int>(k, static_cast<int>(row.size()));
                double pred;
                if (inverse && row[0].first == 0.0) {
                    double s = 0.0;
                    int c = 0;
                    for (const auto& [dd, ty] : row) {
                        if (dd > 0.0) break;
                        s += ty;
                        ++c;
                    }
                    pred = s / c;
                } else {
                    double num = 0.0;
                    double den = 0.0;
                    for (int j = 0; j < kk; ++j) {
                        const double w = inverse ? 1.0 / row[static_cast<std::size_t>(j)].first : 1.0;
                        num += w * row[static_cast<std::size_t>(j)].second;
                        den += w;
                    }
                    pred = num / den;
                }
                const double e = nb.truth(static_cast<Eigen::Index>(v)) - pred;
                se += e * e;
            }
            acc += se / static_cast<double>(nb.rows.size());
        }
        res.table.push_back({p, acc / static_cast<double>(per_fold.size())});
    }
    return res;
}

void pick_best(GridSearchResult& res) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < res.table.size(); ++i) {
        if (res.table[i].mean_mse < res.table[best].mean_mse) best = i;  // first point wins ties
    }
    res.best = res.table[best].values;
    res.best_score = res.table[best].mean_mse;
}

}  // namespace

GridSearchResult kfold_grid_search(ModelKind kind, const Eigen::MatrixXd& X,
                                   const Eigen::VectorXd& y, const GridSpec& grid,
                                   const MlpConfig& mlp_base) {
    if (grid.axes.empty()) throw Error("grid search: no axes");
    GridSearchResult res;
    switch (kind) {
        case ModelKind::ridge: res = search_ridge(X, y, grid); break;
        case ModelKind::knn: res = search_knn(X, y, grid); break;
        case ModelKind::mlp: res = search_mlp(X, y, grid, mlp_base); break;
        case ModelKind::gp:
            throw Error("gp hyperparameters are tuned by marginal likelihood, see tune_gp");
        case ModelKind::torus:
            throw Error("torus hyperparameters are tuned by AIC, see tune_torus");
    }
    pick_best(res);
    return res;
}

GpTuneResult tune_gp(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                     const std::vector<double>& nu_grid, const std::vector<double>& l_grid,
                     const std::vector<double>& sigma2_grid) {
    if (nu_grid.empty() || l_grid.empty() || sigma2_grid.empty()) {
        throw Error("tune_gp: empty grid");
    }
    const double mean = y.mean();
    const double sd_raw = std::sqrt((y.array() - mean).square().mean());
    const double sd = sd_raw > 1e-12 ? sd_raw : 1.0;
    const Eigen::VectorXd ys = (y.array() - mean) / sd;

    GpTuneResult res;
    bool found = false;
    double best = -std::numeric_limits<double>::infinity();
    for (double nu : nu_grid) {
        for (double l : l_grid) {
            // the Gram matrix is shared by all noise levels
            const Eigen::MatrixXd K = matern_gram(X, nu, l);
            for (double s2 : sigma2_grid) {
                double lml;
                try {
                    lml = gp_log_marginal_likelihood_raw(K, ys, s2);
                } catch (const NotPositiveDefinite&) {
                    continue;
                }
                if (!std::isfinite(lml)) continue;
                res.table.push_back({nu, l, s2, lml});
                if (lml > best) {  // strict: earlier points win exact ties
                    best = lml;
                    res.nu = nu;
                    res.length_scale = l;
                    res.sigma2 = s2;
                    res.log_marginal_likelihood = lml;
                    found = true;
                }
            }
        }
    }
    if (!found) throw AllGridPointsFailed("tune_gp: every grid point was numerically infeasible");
    return res;
}

double aic_concentrated(std::size_t n, double rss, int k) {
    const auto dn = static_cast<double>(n);
    return dn * std::log(rss / dn) + 2.0 * static_cast<double>(k);
}

TorusTuneResult tune_torus(const Dataset& data, const DateRange& train, TempSource source,
                           const std::vector<int>& nd_grid, const std::vector<int>& nw_grid,
                           const HolidayCalendar& cal) {
    if (nd_grid.empty() || nw_grid.empty()) throw Error("tune_torus: empty grid");
    TorusTuneResult res;
    bool first = true;
    for (int nd : nd_grid) {
        for (int nw : nw_grid) {
            TorusModel m;
            m.fit(data, train, source, nd, nw, cal);
            // keep ln(RSS/n) finite for numerically exact fits: anything at
            // or below the noise floor scores as the floor, so the penalty
            // term decides among exact models
            const auto n = static_cast<std::size_t>(m.n_rows());
            const double floor = static_cast<double>(n) * 1e-24;
            const double a = aic_concentrated(n, std::max(m.rss(), floor), m.n_regressors());
            res.table.push_back({static_cast<double>(nd), static_cast<double>(nw), a});
            if (first || a < res.aic) {
                res.aic = a;
                res.n_daily = nd;
                res.n_weekly = nw;
                first = false;
            }
        }
    }
    return res;
}

}  // namespace gascast
