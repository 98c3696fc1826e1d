#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "campus/errors.hpp"
#include "campus/time_window.hpp"

namespace campus {

// One smart-card check-in.
struct EventRecord {
    std::string student_id;
    std::string location_id;
    std::int64_t timestamp = 0; // epoch seconds, UTC
};

struct StudentData {
    // Sorted by (timestamp, location_id); duplicate swipes collapsed.
    struct Event {
        std::string location_id;
        std::int64_t timestamp;
    };
    std::vector<Event> records;
    std::optional<double> gpa;
};

// student_id -> records/gpa; std::map keeps iteration deterministic.
using StudentTable = std::map<std::string, StudentData>;

enum class EventFormat { consumption, library, gpa };

struct ParseReport {
    StudentTable table;
    std::size_t total_rows = 0;
    std::size_t malformed_rows = 0;
};

namespace detail {

inline bool parse_i64(std::string_view sv, std::int64_t& out) {
    if (sv.empty()) return false;
    std::int64_t v = 0;
    std::size_t i = 0;
    bool neg = sv[0] == '-';
    if (neg) i = 1;
    if (i == sv.size()) return false;
    for (; i < sv.size(); ++i) {
        char c = sv[i];
        if (c < '0' || c > '9') return false;
        if (v > (INT64_MAX - (c - '0')) / 10) return false;
        v = v * 10 + (c - '0');
    }
    out = neg ? -v : v;
    return true;
}

inline bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    for (;;) {
        std::size_t comma = line.find(',', pos);
        if (comma == std::string::npos) {
            out.push_back(line.substr(pos));
            return out;
        }
        out.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
}

// Duplicate swipes (same location, < 60 s apart) collapse to the first kept
// record; exact duplicate triples vanish as a special case.
inline void normalize_records(std::vector<StudentData::Event>& recs) {
    std::sort(recs.begin(), recs.end(), [](const auto& a, const auto& b) {
        if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
        return a.location_id < b.location_id;
    });
    std::vector<StudentData::Event> kept;
    kept.reserve(recs.size());
    std::map<std::string, std::int64_t> last_kept_at;
    for (auto& r : recs) {
        auto it = last_kept_at.find(r.location_id);
        if (it != last_kept_at.end() && r.timestamp - it->second < 60) continue;
        last_kept_at[r.location_id] = r.timestamp;
        kept.push_back(std::move(r));
    }
    recs = std::move(kept);
}

} // namespace detail

inline const char* expected_header(EventFormat fmt) {
    switch (fmt) {
        case EventFormat::consumption: return "student_id,location_id,timestamp";
        case EventFormat::library: return "student_id,timestamp";
        case EventFormat::gpa: return "student_id,gpa";
    }
    return "";
}

// Loads a CSV stream into a StudentTable. Well-formed rows are kept, malformed
// rows are counted and skipped, records end up sorted and deduplicated per
// student. Library rows get the implied location "LIBRARY".
inline ParseReport parse_events(std::istream& in, EventFormat fmt) {
    if (!in.good()) throw format_error("unreadable input stream");

    std::string line;
    if (!std::getline(in, line)) throw format_error("missing header at line 1");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != expected_header(fmt)) {
        throw format_error(std::string("header mismatch at line 1: expected '") +
                           expected_header(fmt) + "', got '" + line + "'");
    }

    ParseReport rep;
    std::map<std::string, std::vector<StudentData::Event>> raw;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++rep.total_rows;
        auto f = detail::split_csv(line);
        bool ok = false;
        switch (fmt) {
            case EventFormat::consumption: {
                std::int64_t ts;
                if (f.size() == 3 && !f[0].empty() && !f[1].empty() &&
                    detail::parse_i64(f[2], ts) && ts > 0) {
                    raw[f[0]].push_back({f[1], ts});
                    ok = true;
                }
                break;
            }
            case EventFormat::library: {
                std::int64_t ts;
                if (f.size() == 2 && !f[0].empty() && detail::parse_i64(f[1], ts) && ts > 0) {
                    raw[f[0]].push_back({"LIBRARY", ts});
                    ok = true;
                }
                break;
            }
            case EventFormat::gpa: {
                double g;
                if (f.size() == 2 && !f[0].empty() && detail::parse_double(f[1], g) && g >= 0) {
                    rep.table[f[0]].gpa = g;
                    ok = true;
                }
                break;
            }
        }
        if (!ok) ++rep.malformed_rows;
    }
    if (in.bad()) throw format_error("I/O error while reading input");

    for (auto& [id, recs] : raw) {
        detail::normalize_records(recs);
        rep.table[id].records = std::move(recs);
    }
    return rep;
}

// Keeps students with >= min_records records inside `window`, with record
// lists restricted to the window. Idempotent.
inline StudentTable filter_valid(const StudentTable& table, const TimeWindow& window,
                                 std::size_t min_records = 10) {
    if (min_records < 1) throw argument_error("filter_valid: min_records must be >= 1");
    StudentTable out;
    for (const auto& [id, data] : table) {
        std::vector<StudentData::Event> in_window;
        for (const auto& r : data.records) {
            if (window.contains(r.timestamp)) in_window.push_back(r);
        }
        if (in_window.size() >= min_records) {
            StudentData d;
            d.records = std::move(in_window);
            d.gpa = data.gpa;
            out.emplace(id, std::move(d));
        }
    }
    return out;
}

// Slices a table into per-window tables. Windows must be pairwise disjoint;
// records outside every window are dropped.
inline std::vector<std::pair<TimeWindow, StudentTable>>
split_windows(const StudentTable& table, std::vector<TimeWindow> windows) {
    std::sort(windows.begin(), windows.end(),
              [](const TimeWindow& a, const TimeWindow& b) { return a.start < b.start; });
    for (std::size_t i = 1; i < windows.size(); ++i) {
        if (windows[i - 1].end > windows[i].start) {
            throw argument_error("split_windows: windows '" + windows[i - 1].label + "' and '" +
                                 windows[i].label + "' overlap");
        }
    }
    std::vector<std::pair<TimeWindow, StudentTable>> out;
    out.reserve(windows.size());
    for (const auto& w : windows) out.emplace_back(w, StudentTable{});
    for (const auto& [id, data] : table) {
        for (auto& [w, t] : out) {
            std::vector<StudentData::Event> in_window;
            for (const auto& r : data.records) {
                if (w.contains(r.timestamp)) in_window.push_back(r);
            }
            if (!in_window.empty()) {
                StudentData d;
                d.records = std::move(in_window);
                d.gpa = data.gpa;
                t.emplace(id, std::move(d));
            }
        }
    }
    return out;
}

// Copies gpa values onto an existing table (ids without records are added
// with empty record lists).
inline void merge_gpa(StudentTable& table, const StudentTable& gpa_table) {
    for (const auto& [id, data] : gpa_table) {
        if (data.gpa) table[id].gpa = data.gpa;
    }
}

inline std::size_t record_count(const StudentTable& table) {
    std::size_t n = 0;
    for (const auto& [id, d] : table) n += d.records.size();
    return n;
}

// Round-trip serialization of consumption-format tables.
inline void serialize_consumption(const StudentTable& table, std::ostream& out) {
    out << expected_header(EventFormat::consumption) << "\n";
    for (const auto& [id, d] : table) {
        for (const auto& r : d.records) {
            out << id << ',' << r.location_id << ',' << r.timestamp << "\n";
        }
    }
}

} // namespace campus
