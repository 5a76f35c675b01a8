#include "gascast/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "gascast/errors.hpp"

namespace gascast {

std::string to_string(TempSource s) { return s == TempSource::actual ? "actual" : "forecast"; }

Dataset::Dataset(std::vector<DailyRecord> records) : records_(std::move(records)) {
    std::sort(records_.begin(), records_.end(),
              [](const DailyRecord& a, const DailyRecord& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < records_.size(); ++i) {
        if (records_[i].date == records_[i - 1].date) {
            throw CsvError("duplicate date in dataset: " + to_iso(records_[i].date));
        }
    }
}

const DailyRecord* Dataset::find(const CivilDate& d) const {
    auto it = std::lower_bound(records_.begin(), records_.end(), d,
                               [](const DailyRecord& r, const CivilDate& x) { return r.date < x; });
    if (it == records_.end() || it->date != d) return nullptr;
    return &*it;
}

std::optional<double> Dataset::rgd_at(const CivilDate& d) const {
    const DailyRecord* r = find(d);
    if (r == nullptr) return std::nullopt;
    return r->rgd;
}

std::optional<double> Dataset::temperature_at(const CivilDate& d, TempSource source) const {
    const DailyRecord* r = find(d);
    if (r == nullptr) return std::nullopt;
    if (source == TempSource::actual && !r->temp_actual.has_value()) return std::nullopt;
    return temperature(*r, source);
}

bool Dataset::has_actual_temperature() const {
    if (records_.empty()) return false;
    return std::all_of(records_.begin(), records_.end(),
                       [](const DailyRecord& r) { return r.temp_actual.has_value(); });
}

double temperature(const DailyRecord& r, TempSource source) {
    if (source == TempSource::forecast) return r.temp_forecast;
    if (!r.temp_actual.has_value()) {
        throw MissingActualTemperature("record " + to_iso(r.date) + " has no actual temperature");
    }
    return *r.temp_actual;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s, int line_no) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || end != begin + s.size() || !std::isfinite(v)) {
        throw CsvError("line " + std::to_string(line_no) + ": bad numeric field '" + s + "'");
    }
    return v;
}

}  // namespace

Dataset Dataset::load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CsvError("cannot open " + path);

    std::vector<DailyRecord> recs;
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    bool has_actual_col = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split_csv_line(line);
        if (!header_seen) {
            if (fields.size() < 3 || fields[0] != "date" || fields[1] != "rgd" ||
                fields[2] != "temp_forecast" ||
                (fields.size() == 4 && fields[3] != "temp_actual") || fields.size() > 4) {
                throw CsvError(path + ": expected header date,rgd,temp_forecast[,temp_actual]");
            }
            has_actual_col = fields.size() == 4;
            header_seen = true;
            continue;
        }
        if (fields.size() != (has_actual_col ? 4u : 3u)) {
            throw CsvError("line " + std::to_string(line_no) + ": wrong field count");
        }
        const auto date = parse_iso(fields[0]);
        if (!date) {
            throw CsvError("line " + std::to_string(line_no) + ": bad ISO date '" + fields[0] + "'");
        }
        DailyRecord r;
        r.date = *date;
        r.rgd = parse_double(fields[1], line_no);
        r.temp_forecast = parse_double(fields[2], line_no);
        if (has_actual_col) r.temp_actual = parse_double(fields[3], line_no);
        recs.push_back(r);
    }
    if (!header_seen) throw CsvError(path + ": empty file");
    return Dataset(std::move(recs));
}

void Dataset::save_csv(const std::string& path, bool timestamp_header) const {
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
    const bool actual = has_actual_temperature();
    out << "date,rgd,temp_forecast" << (actual ? ",temp_actual" : "") << "\n";
    char num[64];
    for (const auto& r : records_) {
        out << to_iso(r.date);
        std::snprintf(num, sizeof(num), ",%.17g,%.17g", r.rgd, r.temp_forecast);
        out << num;
        if (actual) {
            std::snprintf(num, sizeof(num), ",%.17g", *r.temp_actual);
            out << num;
        }
        out << "\n";
    }
}

}  // namespace gascast
