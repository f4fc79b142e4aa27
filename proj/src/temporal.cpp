#include "staynet/temporal.hpp"

#include <utility>

namespace staynet {

int max_daily_multiplicity(std::span<const StayRecord* const> members) {
    // +1 at admission, -1 the day after discharge; the prefix-sum maximum
    // is the busiest day.
    std::vector<std::pair<DayIndex, int>> events;
    events.reserve(members.size() * 2);
    for (const StayRecord* r : members) {
        events.emplace_back(r->admission, +1);
        events.emplace_back(r->discharge + 1, -1);
    }
    std::sort(events.begin(), events.end());
    int current = 0, peak = 0;
    for (const auto& [day, delta] : events) {
        current += delta;
        peak = std::max(peak, current);
    }
    return peak;
}

std::vector<OverlapGroup> connected_overlap_groups(std::string_view patient_id,
                                                   std::span<const StayRecord* const> stays) {
    std::vector<OverlapGroup> groups;
    for_each_component(stays, [&](std::size_t offset, std::size_t count) {
        if (count < 2) return;
        OverlapGroup g;
        g.patient_id = patient_id;
        g.members = stays.subspan(offset, count);
        g.span_begin = g.members.front()->admission;
        DayIndex end = g.members.front()->discharge;
        for (const StayRecord* r : g.members) end = std::max(end, r->discharge);
        g.span_end = end;
        g.max_multiplicity = max_daily_multiplicity(g.members);
        groups.push_back(g);
    });
    return groups;
}

std::vector<Episode> merge_episodes(std::span<const StayRecord* const> stays) {
    std::vector<Episode> episodes;
    for_each_component(stays, [&](std::size_t offset, std::size_t count) {
        Episode e;
        e.entry = stays[offset];
        e.begin = e.entry->admission;
        e.exit = stays[offset];
        e.end = e.exit->discharge;
        for (std::size_t i = offset + 1; i < offset + count; ++i) {
            if (stays[i]->discharge > e.end) {
                e.end = stays[i]->discharge;
                e.exit = stays[i];
            }
        }
        e.member_count = static_cast<std::uint32_t>(count);
        episodes.push_back(e);
    });
    return episodes;
}

} // namespace staynet
