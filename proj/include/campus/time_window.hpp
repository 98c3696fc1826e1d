#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "campus/errors.hpp"

namespace campus {

// Half-open interval of epoch seconds (UTC): [start, end).
struct TimeWindow {
    std::int64_t start = 0;
    std::int64_t end = 0;
    std::string label;

    TimeWindow() = default;
    TimeWindow(std::int64_t s, std::int64_t e, std::string lbl = "")
        : start(s), end(e), label(std::move(lbl)) {
        if (start >= end) throw argument_error("TimeWindow: start must precede end");
    }

    bool contains(std::int64_t ts) const { return ts >= start && ts < end; }
};

namespace detail {

inline std::int64_t month_start_epoch(int year, int month) {
    using namespace std::chrono;
    sys_days d = sys_days{std::chrono::year{year} / std::chrono::month{static_cast<unsigned>(month)} / 1};
    return duration_cast<seconds>(d.time_since_epoch()).count();
}

} // namespace detail

// "2019-03" -> [2019-03-01T00:00Z, 2019-04-01T00:00Z)
inline TimeWindow month_window(const std::string& label) {
    int year = 0, month = 0;
    if (std::sscanf(label.c_str(), "%d-%d", &year, &month) != 2 || month < 1 || month > 12 ||
        year < 1970 || year > 9999) {
        throw argument_error("month window label must be YYYY-MM, got '" + label + "'");
    }
    int ny = month == 12 ? year + 1 : year;
    int nm = month == 12 ? 1 : month + 1;
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
    return TimeWindow{detail::month_start_epoch(year, month), detail::month_start_epoch(ny, nm), buf};
}

// Label of the month following `label` ("2019-12" -> "2020-01").
inline std::string next_month_label(const std::string& label) {
    int year = 0, month = 0;
    std::sscanf(label.c_str(), "%d-%d", &year, &month);
    if (month == 12) { ++year; month = 1; } else { ++month; }
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
    return buf;
}

inline std::vector<TimeWindow> month_windows(const std::string& first_label, int count) {
    if (count < 1) throw argument_error("month_windows: count must be >= 1");
    std::vector<TimeWindow> out;
    std::string lbl = first_label;
    for (int i = 0; i < count; ++i) {
        out.push_back(month_window(lbl));
        lbl = next_month_label(lbl);
    }
    return out;
}

// Second-of-day in (0, 86400]; exact midnight belongs to the previous day's
// final slice (24:00).
inline std::int64_t second_of_day(std::int64_t ts) {
    std::int64_t s = ((ts % 86400) + 86400) % 86400;
    return s == 0 ? 86400 : s;
}

} // namespace campus
