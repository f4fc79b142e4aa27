#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "staynet/histograms.hpp"
#include "staynet/ingest.hpp"
#include "staynet/temporal.hpp"

namespace staynet {

struct DayRange {
    DayIndex first = 0;
    DayIndex last = 0;

    bool contains(DayIndex d) const { return first <= d && d <= last; }
};

struct FacilityCounts {
    std::map<std::string, std::uint64_t, std::less<>> counts;

    /// Facilities binned by their counts.
    DecadeHistogram decades() const;
};

/// Admissions per facility; a record belongs to a period iff its admission
/// day lies within it.
FacilityCounts admissions_per_facility(const RecordSet& rs,
                                       std::optional<DayRange> period = {});

/// Distinct patients per facility, same period rule.
FacilityCounts patients_per_facility(const RecordSet& rs,
                                     std::optional<DayRange> period = {});

struct SummaryStats {
    std::uint64_t n = 0;
    std::uint64_t min = 0;
    std::uint64_t max = 0;
    double median = 0.0;
    double mean = 0.0;

    friend bool operator==(const SummaryStats&, const SummaryStats&) = default;
};

/// Sorts values in place. n == 0 yields an all-zero summary.
SummaryStats summarize_counts(std::vector<std::uint64_t>& values);

/// Hospitalisation-count summaries per gender, indexed by Gender; strata
/// with no patients are absent. A patient's gender is taken from their
/// first record in file order.
using EntriesSummary = std::array<std::optional<SummaryStats>, 3>;

EntriesSummary entries_per_patient_summary(const RecordSet& rs);

DurationHistogram stay_duration_histogram(const RecordSet& rs);

/// Full days spent at home between consecutive episodes, overlap groups
/// merged to their spans first. Gaps are >= 0; a discharge followed by a
/// next-day admission counts as gap 0.
DurationHistogram society_duration_histogram(const PatientIndex& index);

/// Pairwise overlap lengths of two-record groups; with
/// include_multi_member_pairs also every member pair of larger groups.
DurationHistogram overlap_length_histogram(std::span<const OverlapGroup> groups,
                                           bool include_multi_member_pairs = false);

/// Patients present per day at one facility over a day range.
struct OccupancySeries {
    std::string facility_id;
    DayIndex begin = 0;
    std::vector<std::uint32_t> counts; // counts[i] is day begin + i

    std::uint32_t at(DayIndex d) const {
        auto i = static_cast<std::int64_t>(d) - begin;
        if (i < 0 || i >= static_cast<std::int64_t>(counts.size())) return 0;
        return counts[static_cast<std::size_t>(i)];
    }
};

/// +1/-1 sweep over stays of the facility, clamped to the range. An unknown
/// facility yields an all-zero series.
OccupancySeries occupancy_timeseries(const RecordSet& rs, std::string_view facility,
                                     DayRange range);

} // namespace staynet
