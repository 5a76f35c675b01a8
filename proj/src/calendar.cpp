#include "gascast/calendar.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "gascast/errors.hpp"

namespace gascast {

bool is_leap_year(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
    static const int lengths[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month < 1 || month > 12) return 0;
    if (month == 2 && is_leap_year(year)) return 29;
    return lengths[month - 1];
}

int year_length(int year) { return is_leap_year(year) ? 366 : 365; }

bool is_valid(const CivilDate& d) {
    return d.month >= 1 && d.month <= 12 && d.day >= 1 && d.day <= days_in_month(d.year, d.month);
}

std::int64_t days_from_civil(const CivilDate& d) {
    // Howard Hinnant's algorithm
    int y = d.year;
    const unsigned m = static_cast<unsigned>(d.month);
    const unsigned dy = static_cast<unsigned>(d.day);
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + dy - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilDate civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned dy = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return CivilDate{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(dy)};
}

CivilDate add_days(const CivilDate& d, int n) { return civil_from_days(days_from_civil(d) + n); }

Weekday weekday_of(const CivilDate& d) {
    // 1970-01-01 was a Thursday
    std::int64_t w = (days_from_civil(d) + 3) % 7;
    if (w < 0) w += 7;
    return static_cast<Weekday>(w);
}

bool is_weekend(const CivilDate& d) {
    const Weekday w = weekday_of(d);
    return w == Weekday::saturday || w == Weekday::sunday;
}

int yearday(const CivilDate& d) {
    return static_cast<int>(days_from_civil(d) - days_from_civil(CivilDate{d.year, 1, 1})) + 1;
}

CivilDate date_from_yearday(int year, int yd) {
    return civil_from_days(days_from_civil(CivilDate{year, 1, 1}) + yd - 1);
}

std::string to_iso(const CivilDate& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

std::optional<CivilDate> parse_iso(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
        if (s[i] < '0' || s[i] > '9') return std::nullopt;
    }
    auto num = [&](std::size_t pos, std::size_t len) {
        int v = 0;
        for (std::size_t i = pos; i < pos + len; ++i) v = v * 10 + (s[i] - '0');
        return v;
    };
    CivilDate d{num(0, 4), num(5, 2), num(8, 2)};
    if (!is_valid(d)) return std::nullopt;
    return d;
}

CivilDate easter_sunday(int year) {
    if (year < 1900 || year > 2200) {
        throw CalendarRangeError("easter_sunday: year " + std::to_string(year) +
                                 " outside supported range 1900..2200");
    }
    // anonymous Gregorian computus
    const int a = year % 19;
    const int b = year / 100;
    const int c = year % 100;
    const int d = b / 4;
    const int e = b % 4;
    const int f = (b + 8) / 25;
    const int g = (b - f + 1) / 3;
    const int h = (19 * a + b - d - g + 15) % 30;
    const int i = c / 4;
    const int k = c % 4;
    const int l = (32 + 2 * e + 2 * i - h - k) % 7;
    const int m = (a + 11 * h + 22 * l) / 451;
    const int month = (h + l - 7 * m + 114) / 31;
    const int day = (h + l - 7 * m + 114) % 31 + 1;
    return CivilDate{year, month, day};
}

HolidayCalendar::HolidayCalendar(std::vector<std::pair<int, int>> fixed_month_day, bool with_easter)
    : fixed_(std::move(fixed_month_day)), with_easter_(with_easter) {}

const HolidayCalendar& HolidayCalendar::italian() {
    static const HolidayCalendar cal{{
        {1, 1},    // Capodanno
        {1, 6},    // Epifania
        {4, 25},   // Liberazione
        {5, 1},    // Festa del Lavoro
        {6, 2},    // Festa della Repubblica
        {8, 15},   // Ferragosto
        {11, 1},   // Ognissanti
        {12, 8},   // Immacolata
        {12, 25},  // Natale
        {12, 26},  // Santo Stefano
    }};
    return cal;
}

bool HolidayCalendar::is_holiday(const CivilDate& d) const {
    for (const auto& [m, dd] : fixed_) {
        if (d.month == m && d.day == dd) return true;
    }
    if (with_easter_) {
        const CivilDate easter = easter_sunday(d.year);
        if (d == easter || d == add_days(easter, 1)) return true;
    }
    return false;
}

bool is_working_day(const CivilDate& d, const HolidayCalendar& cal) {
    return !is_weekend(d) && !cal.is_holiday(d);
}

bool is_day_after_holiday(const CivilDate& d, const HolidayCalendar& cal) {
    return is_working_day(d, cal) && cal.is_holiday(add_days(d, -1));
}

namespace {
bool non_working_neighbor(const CivilDate& d, const HolidayCalendar& cal) {
    return is_weekend(d) || cal.is_holiday(d);
}
}  // namespace

bool is_bridge_holiday(const CivilDate& d, const HolidayCalendar& cal) {
    return is_working_day(d, cal) && non_working_neighbor(add_days(d, -1), cal) &&
           non_working_neighbor(add_days(d, 1), cal);
}

CivilDate similar_day(const CivilDate& t, const HolidayCalendar& cal) {
    const int prev_year = t.year - 1;

    if (cal.is_holiday(t)) {
        // same holiday one year earlier
        for (const auto& [m, dd] : cal.fixed()) {
            if (t.month == m && t.day == dd) return CivilDate{prev_year, m, dd};
        }
        const CivilDate easter = easter_sunday(t.year);
        if (t == easter) return easter_sunday(prev_year);
        return add_days(easter_sunday(prev_year), 1);  // Easter Monday
    }

    // Walk the same-weekday dates of the previous year outward from the
    // one nearest in yearday, skipping holidays. Ties go to the earlier
    // date, so the backward candidate is examined first at equal offset.
    const int target_yd = yearday(t);
    const int prev_len = year_length(prev_year);
    CivilDate anchor = date_from_yearday(prev_year, std::min(target_yd, prev_len));
    int shift = (static_cast<int>(weekday_of(t)) - static_cast<int>(weekday_of(anchor)) + 7) % 7;
    if (shift > 3) shift -= 7;  // nearest same-weekday date
    anchor = add_days(anchor, shift);

    bool found = false;
    CivilDate best_date;
    int best_dist = 0;
    for (int k = -54; k <= 54; ++k) {
        const CivilDate cand = add_days(anchor, 7 * k);
        if (cand.year != prev_year) continue;
        if (cal.is_holiday(cand)) continue;
        const int dist = std::abs(yearday(cand) - target_yd);
        if (!found || dist < best_dist || (dist == best_dist && cand < best_date)) {
            best_date = cand;
            best_dist = dist;
            found = true;
        }
    }
    if (!found) {
        throw Error("similar_day: no feasible day in year " + std::to_string(prev_year));
    }
    return best_date;
}

}  // namespace gascast
