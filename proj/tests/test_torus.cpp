#include <doctest.h>

#include <cmath>
#include <vector>

#include "exact_torus.hpp"
#include "gascast/errors.hpp"
#include "gascast/features.hpp"
#include "gascast/models/torus.hpp"
#include "gascast/rng.hpp"

using namespace gascast;
using testutil::exact_torus_dataset;
using testutil::random_torus_truth;
using testutil::TorusTruth;

TEST_CASE("basis size arithmetic") {
    CHECK(torus_basis_size(0, 0) == 1);
    CHECK(torus_basis_size(1, 3) == 21);
    CHECK(torus_basis_size(2, 2) == 25);
    CHECK(torus_basis_size(4, 4) == 81);
}

TEST_CASE("regressor row layout and sizes") {
    const auto& cal = HolidayCalendar::italian();
    const TorusTruth truth = random_torus_truth(1, 3, 71);
    const Dataset data =
        exact_torus_dataset(truth, 1, 3, {2013, 1, 1}, {2014, 12, 31}, cal, 0.0, 1);

    TorusModel m;
    m.fit(data, {{2013, 1, 2}, {2014, 12, 31}}, TempSource::forecast, 0, 0, cal);
    // columns: trend 2 + basis 1 + flags 3 + hdd terms 2
    CHECK(m.n_regressors() == 8);

    TorusModel m13;
    m13.fit(data, {{2013, 1, 2}, {2014, 12, 31}}, TempSource::forecast, 1, 3, cal);
    CHECK(m13.n_regressors() == 2 + 21 + 3 + 2);
}

TEST_CASE("exact-model data is recovered to numerical precision") {
    const auto& cal = HolidayCalendar::italian();
    const TorusTruth truth = random_torus_truth(1, 3, 73);
    const Dataset data =
        exact_torus_dataset(truth, 1, 3, {2012, 1, 1}, {2016, 12, 31}, cal, 0.0, 2);

    TorusModel m;
    // training origin equal to the generator origin keeps the harmonic
    // phases aligned, so individual coefficients are comparable
    const DateRange train{{2012, 1, 1}, {2015, 12, 31}};
    m.fit(data, train, TempSource::forecast, 1, 3, cal);

    // the constant basis column duplicates the trend level, so compare the
    // identifiable quantities: their sum, and every other coefficient
    const Eigen::VectorXd& c = m.coefficients();
    CHECK(c(0) + c(2) == doctest::Approx(truth.trend_level + truth.theta[0]).epsilon(1e-6));
    CHECK(c(1) == doctest::Approx(truth.trend_slope).epsilon(1e-4));
    for (std::size_t i = 1; i < truth.theta.size(); ++i) {
        CHECK(c(2 + static_cast<Eigen::Index>(i)) ==
              doctest::Approx(truth.theta[i]).epsilon(1e-6));
    }
    CHECK(c(23) == doctest::Approx(truth.hol).epsilon(1e-6));
    CHECK(c(24) == doctest::Approx(truth.day_after).epsilon(1e-6));
    CHECK(c(25) == doctest::Approx(truth.bridge).epsilon(1e-6));
    CHECK(c(26) == doctest::Approx(truth.hdd_coef).epsilon(1e-6));
    CHECK(c(27) == doctest::Approx(truth.dhdd_coef).epsilon(1e-6));

    // short-term forecasts reproduce the held-out year to high precision
    double worst = 0.0;
    for (std::int64_t z = days_from_civil({2016, 1, 1}); z <= days_from_civil({2016, 12, 31});
         ++z) {
        const CivilDate t = civil_from_days(z);
        const double pred =
            m.predict(data, TempSource::forecast, t, *data.rgd_at(add_days(t, -1)), cal);
        worst = std::max(worst, std::abs(pred - *data.rgd_at(t)));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("correction factor identity") {
    const auto& cal = HolidayCalendar::italian();
    const TorusTruth truth = random_torus_truth(1, 2, 79);
    const Dataset data =
        exact_torus_dataset(truth, 1, 2, {2013, 1, 1}, {2015, 12, 31}, cal, 0.0, 3);
    TorusModel m;
    m.fit(data, {{2013, 1, 2}, {2015, 6, 30}}, TempSource::forecast, 1, 2, cal);

    const CivilDate t{2015, 8, 12};
    const double lt = m.long_term(data, TempSource::forecast, t, cal);
    const double lt_prev = m.long_term(data, TempSource::forecast, add_days(t, -1), cal);

    // rgd_prev equal to the long-term value makes the correction factor 1
    CHECK(m.predict(data, TempSource::forecast, t, lt_prev, cal) ==
          doctest::Approx(lt).epsilon(1e-12));
    // doubling rgd_prev doubles the forecast
    CHECK(m.predict(data, TempSource::forecast, t, 2.0 * lt_prev, cal) ==
          doctest::Approx(2.0 * lt).epsilon(1e-12));
}

TEST_CASE("non-positive demand is rejected") {
    const auto& cal = HolidayCalendar::italian();
    std::vector<DailyRecord> recs;
    for (std::int64_t z = days_from_civil({2014, 1, 1}); z <= days_from_civil({2014, 6, 30});
         ++z) {
        DailyRecord r;
        r.date = civil_from_days(z);
        r.rgd = 10.0;
        r.temp_forecast = 15.0;
        recs.push_back(r);
    }
    recs[40].rgd = 0.0;
    const Dataset data(std::move(recs));
    TorusModel m;
    CHECK_THROWS_AS(m.fit(data, {{2014, 1, 2}, {2014, 6, 30}}, TempSource::forecast, 1, 1, cal),
                    NonPositiveDemand);

    TorusModel ok;
    std::vector<DailyRecord> recs2;
    for (std::int64_t z = days_from_civil({2014, 1, 1}); z <= days_from_civil({2014, 12, 31});
         ++z) {
        DailyRecord r;
        r.date = civil_from_days(z);
        r.rgd = 10.0 + 0.01 * static_cast<double>(z % 13);
        r.temp_forecast = 15.0 + 0.1 * static_cast<double>(z % 7);
        recs2.push_back(r);
    }
    const Dataset d2(std::move(recs2));
    ok.fit(d2, {{2014, 1, 2}, {2014, 12, 31}}, TempSource::forecast, 1, 1, cal);
    CHECK_THROWS_AS(ok.predict(d2, TempSource::forecast, {2014, 7, 1}, 0.0, cal),
                    NonPositiveDemand);
}
