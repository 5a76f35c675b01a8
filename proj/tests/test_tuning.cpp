#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "exact_torus.hpp"
#include "gascast/errors.hpp"
#include "gascast/models/gp.hpp"
#include "gascast/models/knn.hpp"
#include "gascast/tuning.hpp"
#include "gascast/rng.hpp"

using namespace gascast;

namespace {

Eigen::MatrixXd random_matrix(Rng& rng, Eigen::Index n, Eigen::Index p) {
    Eigen::MatrixXd X(n, p);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < p; ++j) X(i, j) = rng.normal();
    }
    return X;
}

}  // namespace

TEST_CASE("folds partition the rows exactly") {
    for (std::size_t n : {10u, 23u, 100u, 101u, 104u}) {
        const auto folds = make_folds(n, 5);
        REQUIRE(folds.size() == 5);
        std::size_t covered = 0;
        std::size_t pos = 0;
        for (const auto& f : folds) {
            REQUIRE(f.begin == pos);  // contiguous, chronological
            REQUIRE(f.end > f.begin);
            covered += f.end - f.begin;
            pos = f.end;
        }
        REQUIRE(covered == n);
        // sizes differ by at most one
        std::size_t lo = n;
        std::size_t hi = 0;
        for (const auto& f : folds) {
            lo = std::min(lo, f.end - f.begin);
            hi = std::max(hi, f.end - f.begin);
        }
        REQUIRE(hi - lo <= 1);
    }
    CHECK_THROWS_AS(make_folds(8, 5), DegenerateFold);  // a fold of one row
    CHECK_THROWS_AS(make_folds(10, 1), DegenerateFold);
    CHECK_THROWS_AS(make_folds(3, 4), DegenerateFold);
}

TEST_CASE("single-point grid returns that point with its CV score") {
    Rng rng(71);
    const Eigen::MatrixXd X = random_matrix(rng, 40, 3);
    const Eigen::VectorXd y = X * Eigen::Vector3d(1.0, -2.0, 0.5);

    GridSpec grid;
    grid.axes.push_back({"lambda", {0.25}});
    const auto res = kfold_grid_search(ModelKind::ridge, X, y, grid);
    CHECK(res.best_value("lambda") == 0.25);
    REQUIRE(res.table.size() == 1);
    CHECK(res.best_score == res.table[0].mean_mse);
    CHECK(res.best_score >= 0.0);
}

TEST_CASE("noiseless linear data selects the least regularization") {
    Rng rng(73);
    const Eigen::MatrixXd X = random_matrix(rng, 120, 5);
    Eigen::VectorXd w(5);
    w << 3.0, -1.0, 2.0, 0.5, -2.5;
    const Eigen::VectorXd y = X * w;

    GridSpec grid;
    std::vector<double> lambdas;
    for (int i = 0; i <= 12; ++i) lambdas.push_back(std::pow(10.0, -4.0 + 0.5 * i));
    grid.axes.push_back({"lambda", lambdas});
    const auto res = kfold_grid_search(ModelKind::ridge, X, y, grid);
    CHECK(res.best_value("lambda") == doctest::Approx(1e-4));
}

TEST_CASE("knn grid search: argmin contract and fast path correctness") {
    Rng rng(79);
    const Eigen::MatrixXd X = random_matrix(rng, 60, 2);
    Eigen::VectorXd y(60);
    for (Eigen::Index i = 0; i < 60; ++i) y(i) = std::sin(X(i, 0)) + 0.3 * rng.normal();

    GridSpec grid;
    grid.axes.push_back({"weighting", {0.0, 1.0}});
    std::vector<double> ks;
    for (int k = 1; k <= 12; ++k) ks.push_back(k);
    grid.axes.push_back({"k", ks});
    const auto res = kfold_grid_search(ModelKind::knn, X, y, grid);

    for (const auto& row : res.table) REQUIRE(res.best_score <= row.mean_mse);

    // the reused-neighbour scores equal a naive refit per grid point
    const auto folds = make_folds(60, 5);
    for (const auto& row : res.table) {
        const bool inverse = row.values[0] != 0.0;
        const int k = static_cast<int>(row.values[1]);
        double acc = 0.0;
        for (const auto& f : folds) {
            std::vector<Eigen::Index> train_rows;
            std::vector<Eigen::Index> val_rows;
            for (Eigen::Index i = 0; i < 60; ++i) {
                const auto u = static_cast<std::size_t>(i);
                if (u >= f.begin && u < f.end) val_rows.push_back(i);
                else train_rows.push_back(i);
            }
            Eigen::MatrixXd tx(train_rows.size(), 2);
            Eigen::VectorXd ty(train_rows.size());
            for (std::size_t i = 0; i < train_rows.size(); ++i) {
                tx.row(static_cast<Eigen::Index>(i)) = X.row(train_rows[i]);
                ty(static_cast<Eigen::Index>(i)) = y(train_rows[i]);
            }
            KnnModel m;
            m.fit(tx, ty, k, inverse ? KnnWeighting::inverse_distance : KnnWeighting::uniform);
            double se = 0.0;
            for (Eigen::Index v : val_rows) {
                const Eigen::RowVectorXd q = X.row(v);
                const double e = y(v) - m.predict(q);
                se += e * e;
            }
            acc += se / static_cast<double>(val_rows.size());
        }
        REQUIRE(row.mean_mse == doctest::Approx(acc / 5.0).epsilon(1e-12));
    }
}

TEST_CASE("mlp grid search runs and returns an argmin") {
    Rng rng(83);
    const Eigen::MatrixXd X = random_matrix(rng, 50, 3);
    const Eigen::VectorXd y = X.col(0) * 2.0;

    GridSpec grid;
    grid.axes.push_back({"lr", {1e-3, 1e-2}});
    grid.axes.push_back({"batch", {16}});
    MlpConfig base;
    base.hidden = {6};
    base.epochs = 40;
    base.seed = 4;
    const auto res = kfold_grid_search(ModelKind::mlp, X, y, grid, base);
    REQUIRE(res.table.size() == 2);
    for (const auto& row : res.table) CHECK(res.best_score <= row.mean_mse);
}

TEST_CASE("grid search rejects unsupported kinds and empty grids") {
    Rng rng(89);
    const Eigen::MatrixXd X = random_matrix(rng, 20, 2);
    const Eigen::VectorXd y = X.col(0);
    GridSpec grid;
    grid.axes.push_back({"lambda", {1.0}});
    CHECK_THROWS_AS(kfold_grid_search(ModelKind::gp, X, y, grid), Error);
    CHECK_THROWS_AS(kfold_grid_search(ModelKind::torus, X, y, grid), Error);
    GridSpec empty;
    CHECK_THROWS_AS(kfold_grid_search(ModelKind::ridge, X, y, empty), Error);
}

TEST_CASE("gp tuning: argmax contract and single point") {
    Rng rng(97);
    const Eigen::MatrixXd X = random_matrix(rng, 30, 2);
    Eigen::VectorXd y(30);
    for (Eigen::Index i = 0; i < 30; ++i) y(i) = std::sin(X(i, 0)) + 0.1 * rng.normal();

    const auto single = tune_gp(X, y, {1.5}, {2.0}, {0.1});
    CHECK(single.nu == 1.5);
    CHECK(single.length_scale == 2.0);
    CHECK(single.sigma2 == 0.1);

    const auto res = tune_gp(X, y, {0.5, 1.5, 2.5}, {0.5, 2.0, 8.0}, {0.01, 0.1, 1.0});
    for (const auto& row : res.table) {
        REQUIRE(res.log_marginal_likelihood >= row[3]);
    }
}

TEST_CASE("gp tuning recovers the length scale of sampled data") {
    // sample a 1-D GP path with nu = 1.5, l = 2 through the exact Gram
    // Cholesky, then tune over a log grid
    const Eigen::Index n = 80;
    Eigen::MatrixXd X(n, 1);
    for (Eigen::Index i = 0; i < n; ++i) X(i, 0) = 0.25 * static_cast<double>(i);
    Eigen::MatrixXd K = matern_gram(X, 1.5, 2.0);
    K.diagonal().array() += 1e-10;
    const Eigen::MatrixXd L = Eigen::LLT<Eigen::MatrixXd>(K).matrixL();
    Rng rng(101);
    Eigen::VectorXd z(n);
    for (Eigen::Index i = 0; i < n; ++i) z(i) = rng.normal();
    const Eigen::VectorXd y = L * z;

    const std::vector<double> l_grid{0.5, 1.0, 2.0, 4.0, 8.0};
    const auto res = tune_gp(X, y, {1.5}, l_grid, {1e-6, 1e-4});
    // within one grid step of the truth
    CHECK(res.length_scale >= 1.0);
    CHECK(res.length_scale <= 4.0);
}

TEST_CASE("aic: penalty decides between equal-RSS models") {
    CHECK(aic_concentrated(100, 5.0, 3) < aic_concentrated(100, 5.0, 4));
    // a regressor pays for itself only if it shrinks RSS by e^{2/n}
    const double rss1 = 5.0;
    const double just_enough = rss1 / std::exp(2.0 / 100.0);
    CHECK(aic_concentrated(100, just_enough, 4) ==
          doctest::Approx(aic_concentrated(100, rss1, 3)).epsilon(1e-12));
    CHECK(aic_concentrated(100, just_enough * 0.99, 4) < aic_concentrated(100, rss1, 3));
}

TEST_CASE("torus tuning recovers the harmonic counts under small noise") {
    const auto& cal = HolidayCalendar::italian();
    const auto truth = testutil::random_torus_truth(1, 3, 107);
    const Dataset data = testutil::exact_torus_dataset(truth, 1, 3, {2012, 1, 1},
                                                       {2015, 12, 31}, cal, 0.01, 6);
    const DateRange train{{2012, 1, 1}, {2015, 12, 31}};

    const auto res =
        tune_torus(data, train, TempSource::forecast, {0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}, cal);
    CHECK(res.n_daily == 1);
    CHECK(res.n_weekly == 3);
    REQUIRE(res.table.size() == 25);
    for (const auto& row : res.table) REQUIRE(res.aic <= row[2]);

    // a one-point grid returns that point
    const auto only = tune_torus(data, train, TempSource::forecast, {0}, {0}, cal);
    CHECK(only.n_daily == 0);
    CHECK(only.n_weekly == 0);
}

TEST_CASE("grid ordering does not change the selected point") {
    Rng rng(109);
    const Eigen::MatrixXd X = random_matrix(rng, 80, 4);
    Eigen::VectorXd y(80);
    for (Eigen::Index i = 0; i < 80; ++i) {
        y(i) = 2.0 * X(i, 0) - X(i, 2) + 0.5 * rng.normal();
    }

    GridSpec forward;
    forward.axes.push_back({"lambda", {1e-4, 1e-2, 1.0, 100.0}});
    GridSpec backward;
    backward.axes.push_back({"lambda", {100.0, 1.0, 1e-2, 1e-4}});
    const auto a = kfold_grid_search(ModelKind::ridge, X, y, forward);
    const auto b = kfold_grid_search(ModelKind::ridge, X, y, backward);
    CHECK(a.best_value("lambda") == b.best_value("lambda"));
    CHECK(a.best_score == doctest::Approx(b.best_score).epsilon(1e-14));
}
