#include "gascast/features.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>

#include "gascast/errors.hpp"

namespace gascast {

const std::array<const char*, kFeatureCount> kFeatureNames = {
    "rgd_lag1",  "rgd_lag7",  "rgd_sim",  "rgd_sim_lag1",       //
    "temp",      "temp_lag1", "temp_lag7", "temp_sim",          //
    "hdd",       "hdd_lag1",  "hdd_lag7",  "hdd_sim",           //
    "wd_mon",    "wd_tue",    "wd_wed",    "wd_thu", "wd_fri", "wd_sat",
    "holiday",   "day_after_holiday", "bridge_holiday",
};

const std::array<bool, kFeatureCount> kFeatureContinuous = {
    true,  true,  true,  true,   // demand lags
    true,  true,  true,  true,   // temperatures
    true,  true,  true,  true,   // hdd
    false, false, false, false, false, false,  // weekday dummies
    false, false, false,                       // holiday flags
};

int feature_index(const std::string& name) {
    for (int i = 0; i < kFeatureCount; ++i) {
        if (name == kFeatureNames[static_cast<std::size_t>(i)]) return i;
    }
    return -1;
}

Eigen::RowVectorXd FeatureScaler::standardize(const FeatureVector& raw) const {
    Eigen::RowVectorXd out(kFeatureCount);
    for (int i = 0; i < kFeatureCount; ++i) {
        const auto u = static_cast<std::size_t>(i);
        out(i) = scaled[u] ? (raw.values[u] - mean[u]) / std[u] : raw.values[u];
    }
    return out;
}

FeatureVector FeatureScaler::destandardize(const Eigen::RowVectorXd& row) const {
    FeatureVector out;
    for (int i = 0; i < kFeatureCount; ++i) {
        const auto u = static_cast<std::size_t>(i);
        out.values[u] = scaled[u] ? row(i) * std[u] + mean[u] : row(i);
    }
    return out;
}

std::optional<FeatureVector> build_row(const Dataset& data, const CivilDate& t,
                                       TempSource source, const HolidayCalendar& cal) {
    const DailyRecord* at_t = data.find(t);
    const DailyRecord* lag1 = data.find(add_days(t, -1));
    const DailyRecord* lag7 = data.find(add_days(t, -7));
    const DailyRecord* sim_t = data.find(similar_day(t, cal));
    const DailyRecord* sim_lag1 = data.find(similar_day(add_days(t, -1), cal));
    if (at_t == nullptr || lag1 == nullptr || lag7 == nullptr || sim_t == nullptr ||
        sim_lag1 == nullptr) {
        return std::nullopt;
    }
    if (source == TempSource::actual) {
        for (const DailyRecord* r : {at_t, lag1, lag7, sim_t}) {
            if (!r->temp_actual.has_value()) return std::nullopt;
        }
    }

    FeatureVector f;
    f[feature_index("rgd_lag1")] = lag1->rgd;
    f[feature_index("rgd_lag7")] = lag7->rgd;
    f[feature_index("rgd_sim")] = sim_t->rgd;
    f[feature_index("rgd_sim_lag1")] = sim_lag1->rgd;

    const double tt = temperature(*at_t, source);
    const double t1 = temperature(*lag1, source);
    const double t7 = temperature(*lag7, source);
    const double ts = temperature(*sim_t, source);
    f[feature_index("temp")] = tt;
    f[feature_index("temp_lag1")] = t1;
    f[feature_index("temp_lag7")] = t7;
    f[feature_index("temp_sim")] = ts;
    f[feature_index("hdd")] = hdd(tt);
    f[feature_index("hdd_lag1")] = hdd(t1);
    f[feature_index("hdd_lag7")] = hdd(t7);
    f[feature_index("hdd_sim")] = hdd(ts);

    const Weekday wd = weekday_of(t);
    if (wd != Weekday::sunday) {
        f[feature_index("wd_mon") + static_cast<int>(wd)] = 1.0;
    }
    f[feature_index("holiday")] = cal.is_holiday(t) ? 1.0 : 0.0;
    f[feature_index("day_after_holiday")] = is_day_after_holiday(t, cal) ? 1.0 : 0.0;
    f[feature_index("bridge_holiday")] = is_bridge_holiday(t, cal) ? 1.0 : 0.0;
    return f;
}

FeatureMatrix build_matrix(const Dataset& data, const DateRange& range, TempSource source,
                           const HolidayCalendar& cal) {
    std::vector<FeatureVector> raw;
    std::vector<double> targets;
    std::vector<CivilDate> dates;
    for (std::int64_t z = days_from_civil(range.first); z <= days_from_civil(range.last); ++z) {
        const CivilDate t = civil_from_days(z);
        const DailyRecord* rec = data.find(t);
        if (rec == nullptr) continue;
        auto row = build_row(data, t, source, cal);
        if (!row) continue;
        raw.push_back(*row);
        targets.push_back(rec->rgd);
        dates.push_back(t);
    }
    if (raw.empty()) {
        throw EmptyMatrix("no feasible feature row in " + to_iso(range.first) + ".." +
                          to_iso(range.last));
    }

    const auto n = static_cast<Eigen::Index>(raw.size());
    FeatureMatrix m;
    m.dates = std::move(dates);
    m.y = Eigen::Map<const Eigen::VectorXd>(targets.data(), n);
    m.y_mean = m.y.mean();
    m.y_std = std::sqrt((m.y.array() - m.y_mean).square().mean());

    // fit the scaler on these rows: continuous columns only
    for (int j = 0; j < kFeatureCount; ++j) {
        const auto u = static_cast<std::size_t>(j);
        if (!kFeatureContinuous[u]) {
            m.scaler.mean[u] = 0.0;
            m.scaler.std[u] = 1.0;
            m.scaler.scaled[u] = false;
            continue;
        }
        double mean = 0.0;
        for (const auto& r : raw) mean += r[j];
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (const auto& r : raw) var += (r[j] - mean) * (r[j] - mean);
        var /= static_cast<double>(n);
        const double sd = std::sqrt(var);
        if (sd < 1e-12) {
            throw ZeroVarianceColumn(std::string("feature column '") + kFeatureNames[u] +
                                     "' is constant over the training rows");
        }
        m.scaler.mean[u] = mean;
        m.scaler.std[u] = sd;
        m.scaler.scaled[u] = true;
    }

    m.X.resize(n, kFeatureCount);
    for (Eigen::Index i = 0; i < n; ++i) {
        m.X.row(i) = m.scaler.standardize(raw[static_cast<std::size_t>(i)]);
    }
    return m;
}

void write_feature_csv(const std::string& path, const FeatureMatrix& m, bool timestamp_header) {
    std::ofstream out(path);
    if (!out) throw CsvError("cannot write " + path);
    if (timestamp_header) {
        char buf[64];
        const std::time_t now = std::time(nullptr);
        std::tm tm_utc{};
        gmtime_r(&now, &tm_utc);
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
        out << "# generated: " << buf << "\n";
    }
    out << "date,rgd";
    for (const char* name : kFeatureNames) out << "," << name;
    out << "\n";
    char num[64];
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out << to_iso(m.dates[static_cast<std::size_t>(i)]);
        std::snprintf(num, sizeof(num), ",%.17g", m.y(i));
        out << num;
        for (int j = 0; j < kFeatureCount; ++j) {
            std::snprintf(num, sizeof(num), ",%.17g", m.X(i, j));
            out << num;
        }
        out << "\n";
    }
}

FeatureCsv read_feature_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CsvError("cannot open " + path);
    std::string line;
    std::vector<std::array<double, kFeatureCount + 1>> rows;
    std::vector<CivilDate> dates;
    bool header_seen = false;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::array<double, kFeatureCount + 1> vals{};
        std::size_t pos = 0;
        int field = 0;
        CivilDate date;
        while (pos <= line.size()) {
            std::size_t next = line.find(',', pos);
            if (next == std::string::npos) next = line.size();
            const std::string tok = line.substr(pos, next - pos);
            if (field == 0) {
                const auto d = parse_iso(tok);
                if (!d) throw CsvError("line " + std::to_string(line_no) + ": bad date");
                date = *d;
            } else {
                if (field > kFeatureCount + 1) {
                    throw CsvError("line " + std::to_string(line_no) + ": too many fields");
                }
                char* end = nullptr;
                vals[static_cast<std::size_t>(field - 1)] = std::strtod(tok.c_str(), &end);
                if (end == tok.c_str()) {
                    throw CsvError("line " + std::to_string(line_no) + ": bad number '" + tok + "'");
                }
            }
            ++field;
            pos = next + 1;
            if (next == line.size()) break;
        }
        if (field != kFeatureCount + 2) {
            throw CsvError("line " + std::to_string(line_no) + ": wrong field count");
        }
        rows.push_back(vals);
        dates.push_back(date);
    }
    FeatureCsv out;
    const auto n = static_cast<Eigen::Index>(rows.size());
    out.X.resize(n, kFeatureCount);
    out.y.resize(n);
    out.dates = std::move(dates);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& r = rows[static_cast<std::size_t>(i)];
        out.y(i) = r[0];
        for (int j = 0; j < kFeatureCount; ++j) out.X(i, j) = r[static_cast<std::size_t>(j + 1)];
    }
    return out;
}

}  // namespace gascast
