#include "gascast/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gascast/errors.hpp"
#include "gascast/features.hpp"
#include "gascast/rng.hpp"

namespace gascast {

namespace {
constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
constexpr double kDemandFloor = 0.1;  // MSCM; keeps log transform and MAPE defined
}  // namespace

void GeneratorConfig::validate() const {
    if (!is_valid(start) || !is_valid(end) || end < start) {
        throw InvalidConfig("generator: bad date range");
    }
    for (double b : base_profile) {
        if (!(b > 0.0)) throw InvalidConfig("generator: base profile must be positive");
    }
    if (!(holiday_multiplier > 0.0)) throw InvalidConfig("generator: holiday multiplier must be positive");
    if (!(std::abs(temp_ar_coeff) < 1.0)) throw InvalidConfig("generator: |AR coefficient| must be < 1");
    if (temp_ar_std < 0.0 || sigma_eps < 0.0 || sigma0 < 0.0) {
        throw InvalidConfig("generator: noise stds must be >= 0");
    }
    if (!(alpha >= 0.0)) throw InvalidConfig("generator: alpha must be >= 0");
}

double deterministic_base(const GeneratorConfig& cfg, const CivilDate& t,
                          const HolidayCalendar& cal) {
    const double base = cfg.base_profile[static_cast<std::size_t>(weekday_of(t))];
    return cal.is_holiday(t) ? base * cfg.holiday_multiplier : base;
}

double seasonal_temperature(const GeneratorConfig& cfg, const CivilDate& t) {
    return cfg.temp_mean +
           cfg.temp_amplitude * std::cos(kTwoPi * static_cast<double>(yearday(t)) / 365.25);
}

Dataset generate(const GeneratorConfig& cfg, const HolidayCalendar& cal) {
    cfg.validate();
    Rng rng(cfg.seed);

    std::vector<DailyRecord> recs;
    recs.reserve(static_cast<std::size_t>(DateRange{cfg.start, cfg.end}.length()));

    // AR(1) state started from its stationary distribution
    const double stat_std =
        cfg.temp_ar_std / std::sqrt(1.0 - cfg.temp_ar_coeff * cfg.temp_ar_coeff);
    double ar = cfg.temp_ar_std > 0.0 ? rng.normal(0.0, stat_std) : 0.0;

    for (std::int64_t z = days_from_civil(cfg.start); z <= days_from_civil(cfg.end); ++z) {
        const CivilDate t = civil_from_days(z);

        ar = cfg.temp_ar_coeff * ar + rng.normal(0.0, cfg.temp_ar_std);
        const double temp = seasonal_temperature(cfg, t) + ar;
        const double temp_fc = temp + rng.normal(0.0, cfg.sigma_eps);

        double demand = deterministic_base(cfg, t, cal) + cfg.alpha * hdd(temp) +
                        rng.normal(0.0, cfg.sigma0);
        demand = std::max(demand, kDemandFloor);

        DailyRecord r;
        r.date = t;
        r.rgd = demand;
        r.temp_forecast = temp_fc;
        r.temp_actual = temp;
        recs.push_back(r);
    }
    return Dataset(std::move(recs));
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    std::size_t e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& v, const std::string& key) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0') {
        throw InvalidConfig("config key '" + key + "': bad number '" + v + "'");
    }
    return x;
}

CivilDate to_date(const std::string& v, const std::string& key) {
    const auto d = parse_iso(v);
    if (!d) throw InvalidConfig("config key '" + key + "': bad ISO date '" + v + "'");
    return *d;
}

}  // namespace

GeneratorConfig load_generator_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidConfig("cannot open config file " + path);
    GeneratorConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw InvalidConfig(path + ":" + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string val = trim(stripped.substr(eq + 1));
        if (key == "start") {
            cfg.start = to_date(val, key);
        } else if (key == "end") {
            cfg.end = to_date(val, key);
        } else if (key == "alpha") {
            cfg.alpha = to_double(val, key);
        } else if (key == "base_profile") {
            std::stringstream ss(val);
            std::string tok;
            std::size_t i = 0;
            while (std::getline(ss, tok, ',')) {
                if (i >= 7) throw InvalidConfig("base_profile: expected exactly 7 values");
                cfg.base_profile[i++] = to_double(trim(tok), key);
            }
            if (i != 7) throw InvalidConfig("base_profile: expected exactly 7 values");
        } else if (key == "holiday_multiplier") {
            cfg.holiday_multiplier = to_double(val, key);
        } else if (key == "temp_mean") {
            cfg.temp_mean = to_double(val, key);
        } else if (key == "temp_amplitude") {
            cfg.temp_amplitude = to_double(val, key);
        } else if (key == "temp_ar_coeff") {
            cfg.temp_ar_coeff = to_double(val, key);
        } else if (key == "temp_ar_std") {
            cfg.temp_ar_std = to_double(val, key);
        } else if (key == "sigma_eps") {
            cfg.sigma_eps = to_double(val, key);
        } else if (key == "sigma0") {
            cfg.sigma0 = to_double(val, key);
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(std::strtoull(val.c_str(), nullptr, 10));
        } else {
            throw InvalidConfig(path + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

void write_generator_config(const std::string& path, const GeneratorConfig& cfg) {
    std::ofstream out(path);
    if (!out) throw InvalidConfig("cannot write " + path);
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "start = %s\nend = %s\nalpha = %.17g\n"
                  "base_profile = %.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n"
                  "holiday_multiplier = %.17g\ntemp_mean = %.17g\ntemp_amplitude = %.17g\n"
                  "temp_ar_coeff = %.17g\ntemp_ar_std = %.17g\nsigma_eps = %.17g\n"
                  "sigma0 = %.17g\nseed = %llu\n",
                  to_iso(cfg.start).c_str(), to_iso(cfg.end).c_str(), cfg.alpha,
                  cfg.base_profile[0], cfg.base_profile[1], cfg.base_profile[2],
                  cfg.base_profile[3], cfg.base_profile[4], cfg.base_profile[5],
                  cfg.base_profile[6], cfg.holiday_multiplier, cfg.temp_mean, cfg.temp_amplitude,
                  cfg.temp_ar_coeff, cfg.temp_ar_std, cfg.sigma_eps, cfg.sigma0,
                  static_cast<unsigned long long>(cfg.seed));
    out << buf;
}

}  // namespace gascast
