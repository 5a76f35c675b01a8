#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gascast {

enum class Weekday : int {
    monday = 0,
    tuesday = 1,
    wednesday = 2,
    thursday = 3,
    friday = 4,
    saturday = 5,
    sunday = 6,
};

struct CivilDate {
    int year = 1970;
    int month = 1;  // 1-12
    int day = 1;    // 1-31

    auto operator<=>(const CivilDate&) const = default;
};

bool is_leap_year(int year);
int days_in_month(int year, int month);
int year_length(int year);
bool is_valid(const CivilDate& d);

// days since 1970-01-01 (Gregorian, proleptic)
std::int64_t days_from_civil(const CivilDate& d);
CivilDate civil_from_days(std::int64_t z);
CivilDate add_days(const CivilDate& d, int n);

Weekday weekday_of(const CivilDate& d);
bool is_weekend(const CivilDate& d);

// 1-based day number within the year (Jan 1 -> 1)
int yearday(const CivilDate& d);
CivilDate date_from_yearday(int year, int yd);

std::string to_iso(const CivilDate& d);
std::optional<CivilDate> parse_iso(std::string_view s);

// inclusive range of days
struct DateRange {
    CivilDate first;
    CivilDate last;

    bool contains(const CivilDate& d) const { return first <= d && d <= last; }
    std::int64_t length() const { return days_from_civil(last) - days_from_civil(first) + 1; }
};

// Gregorian Easter Sunday via the anonymous computus.
// Supported years: 1900..2200.
CivilDate easter_sunday(int year);

// National holiday set: a fixed month/day list plus Easter and Easter
// Monday of each year.
class HolidayCalendar {
public:
    HolidayCalendar(std::vector<std::pair<int, int>> fixed_month_day, bool with_easter = true);

    // Jan 1, Jan 6, Apr 25, May 1, Jun 2, Aug 15, Nov 1, Dec 8, Dec 25,
    // Dec 26, Easter and Easter Monday
    static const HolidayCalendar& italian();

    bool is_holiday(const CivilDate& d) const;
    const std::vector<std::pair<int, int>>& fixed() const { return fixed_; }
    bool includes_easter() const { return with_easter_; }

private:
    std::vector<std::pair<int, int>> fixed_;
    bool with_easter_;
};

// weekday not Saturday/Sunday and not a holiday
bool is_working_day(const CivilDate& d, const HolidayCalendar& cal);

// working day whose previous day is a holiday
bool is_day_after_holiday(const CivilDate& d, const HolidayCalendar& cal);

// working day sandwiched between days that are Saturday, Sunday or holiday
bool is_bridge_holiday(const CivilDate& d, const HolidayCalendar& cal);

// The similar day of t: for a non-holiday, the non-holiday date of the
// previous year with the same weekday that is nearest in yearday (ties
// resolved toward the earlier date); for a holiday, the same holiday one
// year earlier.
CivilDate similar_day(const CivilDate& t, const HolidayCalendar& cal);

}  // namespace gascast
