#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "campus/errors.hpp"
#include "campus/events.hpp"
#include "campus/graph.hpp"
#include "campus/parallel.hpp"
#include "campus/tie_model.hpp"

namespace campus {

struct CountedEdge {
    std::string a;          // a < b lexicographically
    std::string b;
    std::uint32_t count = 0;
};

// Unordered student pairs with per-pair co-occurrence counts, sorted by (a, b).
using EdgeList = std::vector<CountedEdge>;

namespace detail {

struct LocatedEvent {
    std::int64_t timestamp;
    std::uint32_t student;
};

constexpr std::int64_t kSessionGapSeconds = 1800;

// Per-location sweep: two-pointer match of events within the radius, then at
// most one count per pair per session (encounters > 30 min apart start a new
// session). Encounter anchors arrive in nondecreasing time order, so one
// last-anchor slot per pair suffices.
inline void count_location(const std::vector<LocatedEvent>& events, std::int64_t radius,
                           std::unordered_map<std::uint64_t, std::uint32_t>& counts) {
    std::unordered_map<std::uint64_t, std::int64_t> last_anchor;
    std::size_t lo = 0;
    for (std::size_t j = 0; j < events.size(); ++j) {
        while (events[j].timestamp - events[lo].timestamp > radius) ++lo;
        for (std::size_t i = lo; i < j; ++i) {
            if (events[i].student == events[j].student) continue;
            std::uint32_t a = events[i].student, b = events[j].student;
            if (a > b) std::swap(a, b);
            std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
            std::int64_t anchor = events[j].timestamp;
            auto it = last_anchor.find(key);
            if (it == last_anchor.end()) {
                last_anchor.emplace(key, anchor);
                ++counts[key];
            } else {
                if (anchor - it->second > kSessionGapSeconds) ++counts[key];
                it->second = anchor;
            }
        }
    }
}

} // namespace detail

// Counts, for every unordered student pair, the sessions in which both appear
// at the same location within `window_seconds` of each other. Bucketing is by
// location; cost is proportional to records plus matching pairs rather than
// to students^2.
inline EdgeList count_cooccurrences(const StudentTable& table, int window_seconds,
                                    unsigned threads = 0) {
    if (window_seconds < 1) throw argument_error("count_cooccurrences: window_seconds must be >= 1");

    std::vector<const std::string*> ids;
    ids.reserve(table.size());
    std::map<std::string, std::vector<detail::LocatedEvent>> by_location;
    {
        std::uint32_t idx = 0;
        for (const auto& [id, data] : table) {
            ids.push_back(&id);
            for (const auto& r : data.records) {
                by_location[r.location_id].push_back({r.timestamp, idx});
            }
            ++idx;
        }
    }

    std::vector<std::vector<detail::LocatedEvent>*> locations;
    locations.reserve(by_location.size());
    for (auto& [loc, evs] : by_location) {
        std::sort(evs.begin(), evs.end(), [](const auto& a, const auto& b) {
            if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
            return a.student < b.student;
        });
        locations.push_back(&evs);
    }

    std::unordered_map<std::uint64_t, std::uint32_t> counts;
    std::mutex merge_mutex;
    parallel_for(locations.size(), [&](std::size_t i) {
        std::unordered_map<std::uint64_t, std::uint32_t> local;
        detail::count_location(*locations[i], window_seconds, local);
        std::lock_guard<std::mutex> lock(merge_mutex);
        for (const auto& [k, c] : local) counts[k] += c;
    }, threads);

    EdgeList edges;
    edges.reserve(counts.size());
    for (const auto& [key, c] : counts) {
        const std::string& a = *ids[key >> 32];
        const std::string& b = *ids[key & 0xffffffffu];
        if (a < b) edges.push_back({a, b, c});
        else edges.push_back({b, a, c});
    }
    std::sort(edges.begin(), edges.end(), [](const CountedEdge& x, const CountedEdge& y) {
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    return edges;
}

// Keeps pairs meeting the critical count and builds the friendship network
// over the retained edges' endpoints.
inline FriendshipNetwork infer_network(const StudentTable& table, const TieParams& params,
                                       const TimeWindow& window, unsigned threads = 0) {
    params.validate();
    EdgeList all = count_cooccurrences(table, params.window_seconds, threads);
    EdgeList kept;
    for (auto& e : all) {
        if (e.count >= static_cast<std::uint32_t>(params.critical_count)) kept.push_back(e);
    }
    return FriendshipNetwork::from_edges(kept, window);
}

struct ValidationReport {
    double hit_rate = 0.0;
    EdgeList missed;   // in truth, not inferred
    EdgeList extra;    // inferred, not in truth
};

// hit_rate = |inferred ∩ truth| / |truth|; counts are ignored, only the pair
// identity matters.
inline ValidationReport validate_against_ground_truth(const EdgeList& inferred,
                                                      const EdgeList& truth) {
    if (truth.empty()) throw argument_error("validate: truth edge list is empty, hit rate undefined");
    auto key = [](const CountedEdge& e) {
        return e.a < e.b ? std::make_pair(e.a, e.b) : std::make_pair(e.b, e.a);
    };
    std::set<std::pair<std::string, std::string>> inf;
    for (const auto& e : inferred) inf.insert(key(e));
    std::set<std::pair<std::string, std::string>> tru;
    for (const auto& e : truth) tru.insert(key(e));

    ValidationReport rep;
    std::size_t hit = 0;
    for (const auto& e : truth) {
        if (inf.count(key(e))) ++hit;
        else rep.missed.push_back({key(e).first, key(e).second, e.count});
    }
    for (const auto& e : inferred) {
        if (!tru.count(key(e))) rep.extra.push_back({key(e).first, key(e).second, e.count});
    }
    rep.hit_rate = static_cast<double>(hit) / static_cast<double>(tru.size());
    return rep;
}

} // namespace campus
