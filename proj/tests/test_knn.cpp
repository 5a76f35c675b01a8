#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "gascast/errors.hpp"
#include "gascast/models/knn.hpp"
#include "gascast/rng.hpp"

using namespace gascast;

TEST_CASE("k = 1 returns the exact match, k = n the global mean") {
    Eigen::MatrixXd X(4, 2);
    X << 0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 1.0, 1.0;
    Eigen::VectorXd y(4);
    y << 10.0, 20.0, 30.0, 40.0;

    KnnModel one;
    one.fit(X, y, 1, KnnWeighting::uniform);
    for (Eigen::Index i = 0; i < 4; ++i) {
        const Eigen::RowVectorXd q = X.row(i);
        CHECK(one.predict(q) == y(i));
    }

    KnnModel all;
    all.fit(X, y, 4, KnnWeighting::uniform);
    Eigen::RowVectorXd q(2);
    q << 0.2, 0.3;
    CHECK(all.predict(q) == doctest::Approx(25.0));
}

TEST_CASE("hand-computed inverse-distance average on a 4-point set") {
    Eigen::MatrixXd X(4, 2);
    X << 0.0, 0.0,  //
        3.0, 0.0,   //
        0.0, 4.0,   //
        6.0, 8.0;
    Eigen::VectorXd y(4);
    y << 10.0, 20.0, 30.0, 40.0;

    KnnModel m;
    m.fit(X, y, 2, KnnWeighting::inverse_distance);

    // query at (1, 0): d = {1, 2, sqrt(17), sqrt(89)}; neighbours are rows
    // 0 and 1 with weights 1 and 1/2 -> (10 + 10) / 1.5 = 13.333...
    Eigen::RowVectorXd q(2);
    q << 1.0, 0.0;
    CHECK(m.predict(q) == doctest::Approx((1.0 * 10.0 + 0.5 * 20.0) / 1.5).epsilon(1e-12));

    // uniform instead: (10 + 20) / 2
    KnnModel u;
    u.fit(X, y, 2, KnnWeighting::uniform);
    CHECK(u.predict(q) == doctest::Approx(15.0));
}

TEST_CASE("exact feature match short-circuits inverse weighting") {
    Eigen::MatrixXd X(3, 1);
    X << 1.0, 1.0, 5.0;
    Eigen::VectorXd y(3);
    y << 7.0, 9.0, 100.0;

    KnnModel m;
    m.fit(X, y, 2, KnnWeighting::inverse_distance);
    Eigen::RowVectorXd q(1);
    q << 1.0;
    // both zero-distance rows average, the far row is ignored
    CHECK(m.predict(q) == doctest::Approx(8.0));
}

TEST_CASE("zero in-sample error with k = 1 on distinct rows") {
    Rng rng(13);
    Eigen::MatrixXd X(25, 3);
    Eigen::VectorXd y(25);
    for (Eigen::Index i = 0; i < 25; ++i) {
        for (Eigen::Index j = 0; j < 3; ++j) X(i, j) = rng.normal();
        y(i) = rng.normal(10.0, 5.0);
    }
    KnnModel m;
    m.fit(X, y, 1, KnnWeighting::uniform);
    const Eigen::VectorXd pred = m.predict(X);
    CHECK((pred - y).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("fit validates its inputs") {
    Eigen::MatrixXd empty(0, 2);
    Eigen::VectorXd ye(0);
    KnnModel m;
    CHECK_THROWS_AS(m.fit(empty, ye, 1, KnnWeighting::uniform), EmptyTrainingSet);

    Eigen::MatrixXd X(3, 1);
    X << 1, 2, 3;
    Eigen::VectorXd y(3);
    y << 1, 2, 3;
    CHECK_THROWS_AS(m.fit(X, y, 0, KnnWeighting::uniform), Error);
    CHECK_THROWS_AS(m.fit(X, y, 4, KnnWeighting::uniform), Error);
    CHECK_NOTHROW(m.fit(X, y, 3, KnnWeighting::uniform));
}
