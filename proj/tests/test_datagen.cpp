#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <vector>

#include "gascast/datagen.hpp"
#include "gascast/errors.hpp"
#include "gascast/features.hpp"
#include "gascast/metrics.hpp"

using namespace gascast;

TEST_CASE("generation is deterministic per (config, seed)") {
    GeneratorConfig cfg;
    cfg.start = {2010, 1, 1};
    cfg.end = {2012, 12, 31};
    cfg.seed = 99;
    const auto& cal = HolidayCalendar::italian();
    const Dataset a = generate(cfg, cal);
    const Dataset b = generate(cfg, cal);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a.records()[i].rgd == b.records()[i].rgd);
        REQUIRE(a.records()[i].temp_forecast == b.records()[i].temp_forecast);
        REQUIRE(*a.records()[i].temp_actual == *b.records()[i].temp_actual);
    }
    cfg.seed = 100;
    const Dataset c = generate(cfg, cal);
    CHECK(c.records()[0].rgd != a.records()[0].rgd);
}

TEST_CASE("degenerate config gives a constant series") {
    GeneratorConfig cfg;
    cfg.start = {2015, 1, 1};
    cfg.end = {2015, 12, 31};
    cfg.sigma_eps = 0.0;
    cfg.sigma0 = 0.0;
    cfg.temp_ar_std = 0.0;
    cfg.temp_amplitude = 0.0;
    cfg.temp_mean = 25.0;  // always warm: no HDD contribution
    cfg.base_profile = {30, 30, 30, 30, 30, 30, 30};
    cfg.holiday_multiplier = 1.0;
    const Dataset d = generate(cfg, HolidayCalendar::italian());
    for (const auto& r : d.records()) {
        REQUIRE(r.rgd == 30.0);
        REQUIRE(r.temp_forecast == 25.0);
        REQUIRE(*r.temp_actual == 25.0);
    }
}

TEST_CASE("forecast error variance matches sigma_eps^2") {
    GeneratorConfig cfg;
    cfg.start = {2010, 1, 1};
    cfg.end = {2013, 12, 31};
    cfg.sigma_eps = 0.25;
    cfg.seed = 4;
    const Dataset d = generate(cfg, HolidayCalendar::italian());
    double mean = 0.0;
    for (const auto& r : d.records()) mean += r.temp_forecast - *r.temp_actual;
    mean /= static_cast<double>(d.size());
    double var = 0.0;
    for (const auto& r : d.records()) {
        const double e = r.temp_forecast - *r.temp_actual - mean;
        var += e * e;
    }
    var /= static_cast<double>(d.size() - 1);
    CHECK(var == doctest::Approx(0.0625).epsilon(0.05));
}

TEST_CASE("regressing demand on hdd recovers alpha") {
    GeneratorConfig cfg;
    cfg.start = {2010, 1, 1};
    cfg.end = {2013, 12, 31};
    cfg.alpha = 10.5;
    cfg.sigma0 = 0.5;  // small demand noise for a clean slope
    cfg.seed = 12;
    const Dataset d = generate(cfg, HolidayCalendar::italian());

    double mh = 0.0;
    double mg = 0.0;
    for (const auto& r : d.records()) {
        mh += hdd(*r.temp_actual);
        mg += r.rgd;
    }
    mh /= static_cast<double>(d.size());
    mg /= static_cast<double>(d.size());
    double shh = 0.0;
    double shg = 0.0;
    for (const auto& r : d.records()) {
        const double h = hdd(*r.temp_actual) - mh;
        shh += h * h;
        shg += h * (r.rgd - mg);
    }
    CHECK(shg / shh == doctest::Approx(10.5).epsilon(0.02));
}

TEST_CASE("default config shows the expected seasonal structure") {
    GeneratorConfig cfg;  // 2007..2017 defaults
    const Dataset d = generate(cfg, HolidayCalendar::italian());

    std::vector<double> rgd;
    std::vector<double> hdd_series;
    for (const auto& r : d.records()) {
        rgd.push_back(r.rgd);
        hdd_series.push_back(hdd(*r.temp_actual));
    }
    CHECK(pearson(rgd, hdd_series) > 0.9);

    const auto bins = periodogram(rgd);
    std::size_t peak = 0;
    for (std::size_t i = 1; i < bins.size(); ++i) {
        if (bins[i].power > bins[peak].power) peak = i;
    }
    CHECK(bins[peak].period == doctest::Approx(365.25).epsilon(0.01));

    // local peak at the weekly period, well above the background
    double weekly_power = 0.0;
    double background = 0.0;
    std::size_t bg_count = 0;
    for (const auto& b : bins) {
        if (std::abs(b.period - 7.0) < 0.01) weekly_power = b.power;
        if (b.period > 7.5 && b.period < 20.0) {
            background += b.power;
            ++bg_count;
        }
    }
    CHECK(weekly_power > 10.0 * (background / static_cast<double>(bg_count)));

    // temperatures are coldest mid-winter on average
    double jan = 0.0;
    double jul = 0.0;
    int nj = 0;
    int nl = 0;
    for (const auto& r : d.records()) {
        if (r.date.month == 1) {
            jan += *r.temp_actual;
            ++nj;
        } else if (r.date.month == 7) {
            jul += *r.temp_actual;
            ++nl;
        }
    }
    CHECK(jan / nj < 8.0);
    CHECK(jul / nl > 16.0);
}

TEST_CASE("alpha = 0 decouples demand from temperature") {
    GeneratorConfig cfg;
    cfg.start = {2010, 1, 1};
    cfg.end = {2012, 12, 31};
    cfg.alpha = 0.0;
    cfg.seed = 21;
    const Dataset d = generate(cfg, HolidayCalendar::italian());
    std::vector<double> rgd;
    std::vector<double> hs;
    for (const auto& r : d.records()) {
        rgd.push_back(r.rgd);
        hs.push_back(hdd(*r.temp_actual));
    }
    CHECK(std::abs(pearson(rgd, hs)) < 0.1);
}

TEST_CASE("holidays damp the demand") {
    GeneratorConfig cfg;
    cfg.start = {2012, 1, 1};
    cfg.end = {2014, 12, 31};
    cfg.sigma0 = 0.0;
    cfg.holiday_multiplier = 0.5;
    cfg.temp_mean = 25.0;  // keep HDD out of the picture
    cfg.temp_amplitude = 0.0;
    cfg.temp_ar_std = 0.0;
    const auto& cal = HolidayCalendar::italian();
    const Dataset d = generate(cfg, cal);
    for (const auto& r : d.records()) {
        const double base = cfg.base_profile[static_cast<std::size_t>(weekday_of(r.date))];
        if (cal.is_holiday(r.date)) {
            REQUIRE(r.rgd == doctest::Approx(base * 0.5));
        } else {
            REQUIRE(r.rgd == doctest::Approx(base));
        }
    }
}

TEST_CASE("config validation rejects bad values") {
    GeneratorConfig cfg;
    cfg.temp_ar_coeff = 1.0;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg = GeneratorConfig{};
    cfg.base_profile[3] = -1.0;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg = GeneratorConfig{};
    cfg.sigma0 = -0.1;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg = GeneratorConfig{};
    cfg.end = {2006, 1, 1};
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
}

TEST_CASE("generator config file round trip") {
    GeneratorConfig cfg;
    cfg.alpha = 9.25;
    cfg.seed = 777;
    cfg.base_profile = {31, 32, 33, 34, 35, 26, 24};
    const auto dir = std::filesystem::temp_directory_path() / "gascast_tests";
    std::filesystem::create_directories(dir);
    const auto p = (dir / "gen.cfg").string();
    write_generator_config(p, cfg);
    const GeneratorConfig back = load_generator_config(p);
    CHECK(back.alpha == cfg.alpha);
    CHECK(back.seed == cfg.seed);
    CHECK(back.base_profile == cfg.base_profile);
    CHECK(back.start == cfg.start);

    CHECK_THROWS_AS(load_generator_config("/nonexistent.cfg"), InvalidConfig);
}
