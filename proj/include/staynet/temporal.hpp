#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "staynet/record.hpp"

namespace staynet {

/// Inclusive-day length of a stay; a one-day stay has length 1.
inline std::int64_t stay_duration(const StayRecord& r) {
    return static_cast<std::int64_t>(r.discharge) - r.admission + 1;
}

/// Days shared by two stays under the inclusive convention: the discharge
/// day of one stay equal to the admission day of another is a 1-day overlap.
inline std::int64_t overlap_days(const StayRecord& a, const StayRecord& b) {
    DayIndex lo = std::max(a.admission, b.admission);
    DayIndex hi = std::min(a.discharge, b.discharge);
    return hi >= lo ? static_cast<std::int64_t>(hi) - lo + 1 : 0;
}

/// A maximal set of >= 2 stays of one patient whose intervals form a single
/// connected component under pairwise day-intersection. Members keep the
/// input sort order and point into the caller's storage.
struct OverlapGroup {
    std::string_view patient_id;
    std::span<const StayRecord* const> members;
    DayIndex span_begin = 0;
    DayIndex span_end = 0;
    int max_multiplicity = 0; // 2 <= max_multiplicity <= |members|
};

/// Largest number of member stays covering any single day, computed with a
/// +1/-1 sweep over admission and discharge+1 events.
int max_daily_multiplicity(std::span<const StayRecord* const> members);

inline int max_daily_multiplicity(const OverlapGroup& g) {
    return max_daily_multiplicity(g.members);
}

/// Calls fn(offset, count) for every connected component of the interval
/// graph, in order. Components of sorted intervals are contiguous runs, so
/// one forward scan suffices. stays must be sorted by admission.
template <typename F>
void for_each_component(std::span<const StayRecord* const> stays, F&& fn) {
    if (stays.empty()) return;
    std::size_t begin = 0;
    DayIndex reach = stays[0]->discharge;
    for (std::size_t i = 1; i < stays.size(); ++i) {
        if (stays[i]->admission > reach) {
            fn(begin, i - begin);
            begin = i;
            reach = stays[i]->discharge;
        } else {
            reach = std::max(reach, stays[i]->discharge);
        }
    }
    fn(begin, stays.size() - begin);
}

/// Maximal connected components of size >= 2; singleton stays are excluded.
/// stays must all belong to patient_id and be sorted by admission.
std::vector<OverlapGroup> connected_overlap_groups(std::string_view patient_id,
                                                   std::span<const StayRecord* const> stays);

/// A hospital episode: a singleton stay, or the merged span of an overlap
/// group. entry is the member admitted first, exit the member discharged
/// last (ties resolved by the input sort order, earliest member wins).
struct Episode {
    DayIndex begin = 0;
    DayIndex end = 0;
    const StayRecord* entry = nullptr;
    const StayRecord* exit = nullptr;
    std::uint32_t member_count = 0;
};

/// Collapses a sorted stay list into consecutive disjoint episodes.
std::vector<Episode> merge_episodes(std::span<const StayRecord* const> stays);

/// Full days spent at home between two consecutive episodes; >= 0 once
/// overlap groups are merged.
inline std::int64_t society_gap(const Episode& prev, const Episode& next) {
    return static_cast<std::int64_t>(next.begin) - prev.end - 1;
}

} // namespace staynet
