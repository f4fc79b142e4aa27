#include "staynet/stats.hpp"

#include <algorithm>
#include <unordered_map>

namespace staynet {

DecadeHistogram FacilityCounts::decades() const {
    DecadeHistogram hist;
    for (const auto& [facility, count] : counts)
        if (count > 0) hist.add(count);
    return hist;
}

FacilityCounts admissions_per_facility(const RecordSet& rs, std::optional<DayRange> period) {
    FacilityCounts result;
    for (const StayRecord& r : rs.records()) {
        if (period && !period->contains(r.admission)) continue;
        auto it = result.counts.find(r.facility_id);
        if (it == result.counts.end())
            result.counts.emplace(r.facility_id, 1);
        else
            ++it->second;
    }
    return result;
}

FacilityCounts patients_per_facility(const RecordSet& rs, std::optional<DayRange> period) {
    // Distinct (facility, patient) pairs via sort + adjacent-unique scan.
    std::vector<std::pair<std::string_view, std::string_view>> pairs;
    pairs.reserve(rs.size());
    for (const StayRecord& r : rs.records()) {
        if (period && !period->contains(r.admission)) continue;
        pairs.emplace_back(r.facility_id, r.patient_id);
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

    FacilityCounts result;
    for (std::size_t i = 0; i < pairs.size();) {
        std::size_t j = i;
        while (j < pairs.size() && pairs[j].first == pairs[i].first) ++j;
        result.counts.emplace(std::string(pairs[i].first),
                              static_cast<std::uint64_t>(j - i));
        i = j;
    }
    return result;
}

SummaryStats summarize_counts(std::vector<std::uint64_t>& values) {
    SummaryStats s;
    s.n = values.size();
    if (values.empty()) return s;
    std::sort(values.begin(), values.end());
    s.min = values.front();
    s.max = values.back();
    std::uint64_t sum = 0;
    for (std::uint64_t v : values) sum += v;
    s.mean = static_cast<double>(sum) / static_cast<double>(values.size());
    std::size_t mid = values.size() / 2;
    s.median = values.size() % 2 == 1
                   ? static_cast<double>(values[mid])
                   : (static_cast<double>(values[mid - 1]) + static_cast<double>(values[mid])) / 2.0;
    return s;
}

EntriesSummary entries_per_patient_summary(const RecordSet& rs) {
    struct PatientInfo {
        std::uint64_t count = 0;
        Gender gender = Gender::unknown;
    };
    std::unordered_map<std::string_view, PatientInfo> per_patient;
    per_patient.reserve(rs.size());
    for (const StayRecord& r : rs.records()) {
        auto [it, inserted] = per_patient.try_emplace(r.patient_id);
        if (inserted) it->second.gender = r.gender; // first record in file order
        ++it->second.count;
    }

    std::array<std::vector<std::uint64_t>, 3> counts;
    for (const auto& [id, info] : per_patient)
        counts[static_cast<std::size_t>(info.gender)].push_back(info.count);

    EntriesSummary summary{};
    for (std::size_t g = 0; g < counts.size(); ++g)
        if (!counts[g].empty()) summary[g] = summarize_counts(counts[g]);
    return summary;
}

DurationHistogram stay_duration_histogram(const RecordSet& rs) {
    DurationHistogram hist;
    for (const StayRecord& r : rs.records()) hist.add(stay_duration(r));
    return hist;
}

DurationHistogram society_duration_histogram(const PatientIndex& index) {
    DurationHistogram hist;
    for (std::size_t i = 0; i < index.patient_count(); ++i) {
        auto episodes = merge_episodes(index.stays(i));
        for (std::size_t e = 1; e < episodes.size(); ++e)
            hist.add(society_gap(episodes[e - 1], episodes[e]));
    }
    return hist;
}

DurationHistogram overlap_length_histogram(std::span<const OverlapGroup> groups,
                                           bool include_multi_member_pairs) {
    DurationHistogram hist;
    for (const OverlapGroup& g : groups) {
        if (g.members.size() == 2) {
            hist.add(overlap_days(*g.members[0], *g.members[1]));
        } else if (include_multi_member_pairs) {
            for (std::size_t i = 0; i < g.members.size(); ++i)
                for (std::size_t j = i + 1; j < g.members.size(); ++j) {
                    std::int64_t days = overlap_days(*g.members[i], *g.members[j]);
                    if (days > 0) hist.add(days);
                }
        }
    }
    return hist;
}

OccupancySeries occupancy_timeseries(const RecordSet& rs, std::string_view facility,
                                     DayRange range) {
    OccupancySeries series;
    series.facility_id.assign(facility);
    series.begin = range.first;
    if (range.last < range.first) return series;

    std::size_t days = static_cast<std::size_t>(range.last) - range.first + 1;
    std::vector<std::int32_t> delta(days + 1, 0);
    for (const StayRecord& r : rs.records()) {
        if (r.facility_id != facility) continue;
        if (r.discharge < range.first || r.admission > range.last) continue;
        DayIndex lo = std::max(r.admission, range.first);
        DayIndex hi = std::min(r.discharge, range.last);
        delta[static_cast<std::size_t>(lo - range.first)] += 1;
        delta[static_cast<std::size_t>(hi - range.first) + 1] -= 1;
    }
    series.counts.resize(days);
    std::int32_t current = 0;
    for (std::size_t i = 0; i < days; ++i) {
        current += delta[i];
        series.counts[i] = static_cast<std::uint32_t>(current);
    }
    return series;
}

} // namespace staynet
