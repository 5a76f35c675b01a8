#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gascast/calendar.hpp"

namespace gascast {

enum class TempSource { actual, forecast };

std::string to_string(TempSource s);

// One calendar day of the input series: demand in MSCM, temperatures in
// degrees Celsius. The forecast column is the one-day-ahead forecast for
// that date; the actual column may be absent.
struct DailyRecord {
    CivilDate date;
    double rgd = 0.0;
    double temp_forecast = 0.0;
    std::optional<double> temp_actual;
};

class Dataset {
public:
    Dataset() = default;
    explicit Dataset(std::vector<DailyRecord> records);  // sorts, rejects duplicate dates

    const std::vector<DailyRecord>& records() const { return records_; }
    bool empty() const { return records_.empty(); }
    std::size_t size() const { return records_.size(); }

    CivilDate first_date() const { return records_.front().date; }
    CivilDate last_date() const { return records_.back().date; }

    const DailyRecord* find(const CivilDate& d) const;  // nullptr if absent
    std::optional<double> rgd_at(const CivilDate& d) const;
    std::optional<double> temperature_at(const CivilDate& d, TempSource source) const;

    bool has_actual_temperature() const;  // true when every record carries one

    // CSV schema: date,rgd,temp_forecast[,temp_actual] with ISO-8601
    // dates; lines starting with '#' are ignored. Malformed rows are
    // errors, never skipped.
    static Dataset load_csv(const std::string& path);
    void save_csv(const std::string& path, bool timestamp_header = false) const;

private:
    std::vector<DailyRecord> records_;
};

// temperature of one record under the chosen source; throws
// MissingActualTemperature when the actual column was requested but absent
double temperature(const DailyRecord& r, TempSource source);

}  // namespace gascast
