#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "gascast/datagen.hpp"
#include "gascast/errors.hpp"
#include "gascast/features.hpp"

using namespace gascast;
namespace fs = std::filesystem;

namespace {

// flat synthetic series long enough for every lag
Dataset flat_dataset(CivilDate first, CivilDate last, double rgd_value, double temp_value) {
    std::vector<DailyRecord> recs;
    for (std::int64_t z = days_from_civil(first); z <= days_from_civil(last); ++z) {
        DailyRecord r;
        r.date = civil_from_days(z);
        r.rgd = rgd_value;
        r.temp_forecast = temp_value;
        r.temp_actual = temp_value;
        recs.push_back(r);
    }
    return Dataset(std::move(recs));
}

Dataset small_generated() {
    GeneratorConfig cfg;
    cfg.start = {2014, 1, 1};
    cfg.end = {2016, 12, 31};
    cfg.seed = 7;
    return generate(cfg, HolidayCalendar::italian());
}

}  // namespace

TEST_CASE("hdd: breakpoint, clamp and slope") {
    CHECK(hdd(18.0) == 0.0);
    CHECK(hdd(25.0) == 0.0);
    CHECK(hdd(10.0) == 8.0);
    // piecewise linear: slope -1 below 18, 0 above; continuous at the knee
    for (double t = -20.0; t < 17.0; t += 0.37) {
        CHECK(hdd(t) - hdd(t + 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    }
    for (double t = 18.0; t < 40.0; t += 0.37) CHECK(hdd(t) == 0.0);
    CHECK(hdd(17.999999) == doctest::Approx(1e-6).epsilon(1e-3));
    CHECK(hdd(-5.0) == 23.0);
}

TEST_CASE("build_row: lag wiring and dummy encoding") {
    const auto& cal = HolidayCalendar::italian();
    const Dataset data = small_generated();

    // a mid-series Wednesday has exactly one dummy set
    const CivilDate wed{2016, 7, 13};
    REQUIRE(weekday_of(wed) == Weekday::wednesday);
    const auto row = build_row(data, wed, TempSource::forecast, cal);
    REQUIRE(row.has_value());
    int ones = 0;
    for (const char* name : {"wd_mon", "wd_tue", "wd_wed", "wd_thu", "wd_fri", "wd_sat"}) {
        ones += row->at(name) == 1.0 ? 1 : 0;
    }
    CHECK(ones == 1);
    CHECK(row->at("wd_wed") == 1.0);

    // Sundays are the all-zero reference level
    const CivilDate sun{2016, 7, 10};
    REQUIRE(weekday_of(sun) == Weekday::sunday);
    const auto sun_row = build_row(data, sun, TempSource::forecast, cal);
    REQUIRE(sun_row.has_value());
    for (const char* name : {"wd_mon", "wd_tue", "wd_wed", "wd_thu", "wd_fri", "wd_sat"}) {
        CHECK(sun_row->at(name) == 0.0);
    }

    // first day of the dataset has no lag
    CHECK_FALSE(build_row(data, data.first_date(), TempSource::forecast, cal).has_value());
    // a day in the first year has no similar day in the data
    CHECK_FALSE(build_row(data, {2014, 6, 15}, TempSource::forecast, cal).has_value());
}

TEST_CASE("build_row: hand-traced values on a constructed dataset") {
    const auto& cal = HolidayCalendar::italian();
    // flat base, then plant recognizable values at the lag dates of t
    std::vector<DailyRecord> recs;
    for (std::int64_t z = days_from_civil({2015, 1, 1}); z <= days_from_civil({2016, 12, 31});
         ++z) {
        DailyRecord r;
        r.date = civil_from_days(z);
        r.rgd = 50.0;
        r.temp_forecast = 20.0;
        r.temp_actual = 20.0;
        recs.push_back(r);
    }
    Dataset flat(std::move(recs));

    const CivilDate t{2016, 7, 13};
    std::vector<DailyRecord> recs2;
    for (const auto& r : flat.records()) {
        DailyRecord c = r;
        if (c.date == add_days(t, -1)) c.rgd = 100.0;
        if (c.date == t) c.temp_forecast = 8.0;
        recs2.push_back(c);
    }
    const Dataset data(std::move(recs2));

    const auto row = build_row(data, t, TempSource::forecast, cal);
    REQUIRE(row.has_value());
    CHECK(row->at("rgd_lag1") == 100.0);
    CHECK(row->at("hdd") == 10.0);
    CHECK(row->at("temp") == 8.0);
    CHECK(row->at("rgd_lag7") == 50.0);
    CHECK(row->at("rgd_sim") == 50.0);
    CHECK(row->at("hdd_lag7") == 0.0);
    CHECK(row->at("holiday") == 0.0);
}

TEST_CASE("build_matrix: shape, order, standardization") {
    const auto& cal = HolidayCalendar::italian();
    const Dataset data = small_generated();
    const FeatureMatrix m =
        build_matrix(data, {{2015, 1, 10}, {2016, 12, 31}}, TempSource::forecast, cal);

    CHECK(m.X.cols() == 21);
    CHECK(m.rows() == static_cast<Eigen::Index>(m.dates.size()));
    CHECK(m.rows() == m.y.size());
    for (std::size_t i = 1; i < m.dates.size(); ++i) REQUIRE(m.dates[i - 1] < m.dates[i]);

    // continuous columns have mean ~0 and std ~1 after standardization
    for (int j = 0; j < kFeatureCount; ++j) {
        if (!kFeatureContinuous[static_cast<std::size_t>(j)]) continue;
        const double mean = m.X.col(j).mean();
        const double var = (m.X.col(j).array() - mean).square().mean();
        CHECK(std::abs(mean) < 1e-9);
        CHECK(var == doctest::Approx(1.0).epsilon(1e-9));
    }
    // binary columns untouched
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (int j : {12, 13, 14, 15, 16, 17, 18, 19, 20}) {
            REQUIRE((m.X(i, j) == 0.0 || m.X(i, j) == 1.0));
        }
    }

    // hdd columns recompute from temp columns through the scaler
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const FeatureVector raw = m.scaler.destandardize(m.X.row(i));
        CHECK(raw.at("hdd") == doctest::Approx(hdd(raw.at("temp"))).epsilon(1e-9));
        CHECK(raw.at("hdd_lag1") == doctest::Approx(hdd(raw.at("temp_lag1"))).epsilon(1e-9));
        CHECK(raw.at("hdd_lag7") == doctest::Approx(hdd(raw.at("temp_lag7"))).epsilon(1e-9));
        CHECK(raw.at("hdd_sim") == doctest::Approx(hdd(raw.at("temp_sim"))).epsilon(1e-9));
    }
}

TEST_CASE("standardize/destandardize is an inverse pair") {
    const auto& cal = HolidayCalendar::italian();
    const Dataset data = small_generated();
    const FeatureMatrix m =
        build_matrix(data, {{2015, 2, 1}, {2016, 11, 30}}, TempSource::actual, cal);
    for (Eigen::Index i = 0; i < m.rows(); i += 17) {
        const FeatureVector raw = m.scaler.destandardize(m.X.row(i));
        const Eigen::RowVectorXd again = m.scaler.standardize(raw);
        for (int j = 0; j < kFeatureCount; ++j) {
            const double ref = std::max(1.0, std::abs(m.X(i, j)));
            REQUIRE(std::abs(again(j) - m.X(i, j)) / ref < 1e-12);
        }
    }
}

TEST_CASE("build_matrix error cases") {
    const auto& cal = HolidayCalendar::italian();

    // range entirely within the first week: no feasible row
    const Dataset d1 = small_generated();
    CHECK_THROWS_AS(build_matrix(d1, {{2014, 1, 1}, {2014, 1, 6}}, TempSource::forecast, cal),
                    EmptyMatrix);

    // constant temperature makes the temp columns zero-variance
    const Dataset d2 = flat_dataset({2015, 1, 1}, {2016, 12, 31}, 50.0, 21.5);
    CHECK_THROWS_AS(build_matrix(d2, {{2016, 2, 1}, {2016, 12, 31}}, TempSource::forecast, cal),
                    ZeroVarianceColumn);
}

TEST_CASE("feature csv dump round trips bit-exactly") {
    const auto& cal = HolidayCalendar::italian();
    const Dataset data = small_generated();
    const FeatureMatrix m =
        build_matrix(data, {{2015, 3, 1}, {2015, 9, 30}}, TempSource::forecast, cal);

    const fs::path dir = fs::temp_directory_path() / "gascast_tests";
    fs::create_directories(dir);
    const fs::path p = dir / "features.csv";
    write_feature_csv(p.string(), m);
    const FeatureCsv back = read_feature_csv(p.string());

    REQUIRE(back.X.rows() == m.X.rows());
    REQUIRE(back.X.cols() == m.X.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        REQUIRE(back.dates[static_cast<std::size_t>(i)] == m.dates[static_cast<std::size_t>(i)]);
        REQUIRE(back.y(i) == m.y(i));
        for (int j = 0; j < kFeatureCount; ++j) REQUIRE(back.X(i, j) == m.X(i, j));
    }
}
