#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "gascast/datagen.hpp"
#include "gascast/errors.hpp"
#include "gascast/models/gp.hpp"
#include "gascast/models/knn.hpp"
#include "gascast/models/mlp.hpp"
#include "gascast/models/ridge.hpp"
#include "gascast/models/torus.hpp"
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

TEST_CASE("ridge round trip is prediction-identical") {
    Rng rng(201);
    const Eigen::MatrixXd X = random_matrix(rng, 40, 5);
    const Eigen::VectorXd y = random_matrix(rng, 40, 1).col(0) * 7.0;
    RidgeModel m;
    m.fit(X, y, 0.37);

    std::stringstream ss;
    m.save(ss);
    const RidgeModel back = RidgeModel::load(ss);
    CHECK(back.lambda() == m.lambda());
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        const Eigen::RowVectorXd q = X.row(i);
        REQUIRE(std::abs(back.predict(q) - m.predict(q)) < 1e-12);
    }
}

TEST_CASE("gp round trip is prediction-identical") {
    Rng rng(203);
    const Eigen::MatrixXd X = random_matrix(rng, 25, 3);
    const Eigen::VectorXd y = random_matrix(rng, 25, 1).col(0) * 4.0;
    GpModel m;
    m.fit(X, y, 1.5, 2.0, 0.05);

    std::stringstream ss;
    m.save(ss);
    const GpModel back = GpModel::load(ss);
    for (int t = 0; t < 20; ++t) {
        const Eigen::RowVectorXd q = random_matrix(rng, 1, 3).row(0);
        REQUIRE(std::abs(back.predict(q) - m.predict(q)) < 1e-12);
    }
}

TEST_CASE("knn round trip is prediction-identical") {
    Rng rng(205);
    const Eigen::MatrixXd X = random_matrix(rng, 30, 4);
    const Eigen::VectorXd y = random_matrix(rng, 30, 1).col(0);
    KnnModel m;
    m.fit(X, y, 5, KnnWeighting::inverse_distance);

    std::stringstream ss;
    m.save(ss);
    const KnnModel back = KnnModel::load(ss);
    CHECK(back.k() == 5);
    CHECK(back.weighting() == KnnWeighting::inverse_distance);
    for (int t = 0; t < 20; ++t) {
        const Eigen::RowVectorXd q = random_matrix(rng, 1, 4).row(0);
        REQUIRE(back.predict(q) == m.predict(q));
    }
}

TEST_CASE("mlp round trip is prediction-identical") {
    Rng rng(207);
    const Eigen::MatrixXd X = random_matrix(rng, 50, 6);
    const Eigen::VectorXd y = random_matrix(rng, 50, 1).col(0);
    MlpConfig cfg;
    cfg.hidden = {10, 5};
    cfg.epochs = 40;
    cfg.seed = 3;
    MlpModel m;
    m.fit(X, y, cfg);

    std::stringstream ss;
    m.save(ss);
    const MlpModel back = MlpModel::load(ss);
    for (int t = 0; t < 20; ++t) {
        const Eigen::RowVectorXd q = random_matrix(rng, 1, 6).row(0);
        REQUIRE(back.predict(q) == m.predict(q));
    }
}

TEST_CASE("torus round trip is prediction-identical") {
    GeneratorConfig cfg;
    cfg.start = {2012, 1, 1};
    cfg.end = {2014, 12, 31};
    cfg.seed = 11;
    const auto& cal = HolidayCalendar::italian();
    const Dataset data = generate(cfg, cal);

    TorusModel m;
    m.fit(data, {{2012, 1, 1}, {2013, 12, 31}}, TempSource::forecast, 1, 3, cal);

    std::stringstream ss;
    m.save(ss);
    const TorusModel back = TorusModel::load(ss);
    CHECK(back.n_daily() == 1);
    CHECK(back.n_weekly() == 3);
    for (std::int64_t z = days_from_civil({2014, 1, 5}); z <= days_from_civil({2014, 12, 31});
         z += 17) {
        const CivilDate t = civil_from_days(z);
        const double prev = *data.rgd_at(add_days(t, -1));
        REQUIRE(back.predict(data, TempSource::forecast, t, prev, cal) ==
                m.predict(data, TempSource::forecast, t, prev, cal));
    }
}

TEST_CASE("wrong kind header is rejected") {
    Rng rng(209);
    const Eigen::MatrixXd X = random_matrix(rng, 10, 2);
    const Eigen::VectorXd y = random_matrix(rng, 10, 1).col(0);
    RidgeModel m;
    m.fit(X, y, 1.0);
    std::stringstream ss;
    m.save(ss);
    CHECK_THROWS_AS(GpModel::load(ss), Error);
}
