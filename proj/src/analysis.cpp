#include "staynet/analysis.hpp"

#include <algorithm>

#include <omp.h>

namespace staynet {

namespace {

// Mergeable per-thread partial aggregate. Everything in here is either a
// commutative count or a list emitted in patient order, so concatenating
// partials in thread order reproduces the serial result exactly.
struct Partial {
    Tabulation tab;
    DurationHistogram stay_durations;
    DurationHistogram society_gaps;
    std::array<std::vector<std::uint64_t>, 3> entry_counts;
    std::vector<TransferEvent> direct_events;
    std::vector<TransferEvent> indirect_events;
    std::vector<RecoveredGroup> groups;

    void merge(Partial&& other) {
        tab.merge(other.tab);
        stay_durations.merge(other.stay_durations);
        society_gaps.merge(other.society_gaps);
        for (std::size_t g = 0; g < entry_counts.size(); ++g)
            entry_counts[g].insert(entry_counts[g].end(), other.entry_counts[g].begin(),
                                   other.entry_counts[g].end());
        direct_events.insert(direct_events.end(), other.direct_events.begin(),
                             other.direct_events.end());
        indirect_events.insert(indirect_events.end(), other.indirect_events.begin(),
                               other.indirect_events.end());
        groups.insert(groups.end(), std::make_move_iterator(other.groups.begin()),
                      std::make_move_iterator(other.groups.end()));
    }
};

void analyze_patient(const RecordSet& rs, const PatientIndex& index, std::size_t pi,
                     const AnalysisOptions& opts, Partial& p) {
    PatientIndex::Patient patient = index.patient(pi);
    std::span<const StayRecord* const> stays = patient.stays;

    for (const StayRecord* r : stays) p.stay_durations.add(stay_duration(*r));

    // The patient's gender comes from their first record in file order,
    // which is the member with the lowest address.
    const StayRecord* first = *std::min_element(stays.begin(), stays.end());
    p.entry_counts[static_cast<std::size_t>(first->gender)].push_back(stays.size());

    for (const OverlapGroup& g : connected_overlap_groups(patient.id, stays)) {
        OverlapLabel label = classify_group(g);
        p.tab.add(g, label, opts.code_diagnosis);
        if (opts.collect_events) append_direct_events(g, label, p.direct_events);
        if (opts.collect_groups) {
            RecoveredGroup rg;
            rg.patient_id = patient.id;
            rg.label = label;
            rg.rows.reserve(g.members.size());
            for (const StayRecord* r : g.members) rg.rows.push_back(rs.row_of(r));
            std::sort(rg.rows.begin(), rg.rows.end());
            p.groups.push_back(std::move(rg));
        }
    }

    std::vector<Episode> episodes = merge_episodes(stays);
    for (std::size_t e = 1; e < episodes.size(); ++e)
        p.society_gaps.add(society_gap(episodes[e - 1], episodes[e]));
    if (opts.collect_events)
        append_indirect_events(patient.id, episodes, opts.max_gap, p.indirect_events);
}

AnalysisResult finalize(Partial&& p) {
    AnalysisResult result;
    result.tab = std::move(p.tab);
    result.stay_durations = std::move(p.stay_durations);
    result.society_gaps = std::move(p.society_gaps);
    for (std::size_t g = 0; g < p.entry_counts.size(); ++g)
        if (!p.entry_counts[g].empty()) result.entries[g] = summarize_counts(p.entry_counts[g]);
    result.direct_events = std::move(p.direct_events);
    result.indirect_events = std::move(p.indirect_events);
    result.groups = std::move(p.groups);
    return result;
}

// Patient ranges with roughly equal record counts per thread.
std::vector<std::size_t> partition_patients(const PatientIndex& index, int threads) {
    const std::size_t patients = index.patient_count();
    const std::size_t records = index.record_count();
    std::vector<std::size_t> bounds(static_cast<std::size_t>(threads) + 1, patients);
    bounds[0] = 0;
    std::size_t pi = 0, seen = 0;
    for (int t = 1; t < threads; ++t) {
        std::size_t target = records * static_cast<std::size_t>(t) / static_cast<std::size_t>(threads);
        while (pi < patients && seen < target) seen += index.stays(pi++).size();
        bounds[static_cast<std::size_t>(t)] = pi;
    }
    return bounds;
}

} // namespace

bool operator==(const AnalysisResult& a, const AnalysisResult& b) {
    return a.tab == b.tab && a.stay_durations == b.stay_durations &&
           a.society_gaps == b.society_gaps && a.entries == b.entries &&
           a.direct_events == b.direct_events && a.indirect_events == b.indirect_events &&
           a.groups == b.groups;
}

AnalysisResult analyze_serial(const RecordSet& rs, const PatientIndex& index,
                              const AnalysisOptions& opts) {
    Partial p;
    for (std::size_t pi = 0; pi < index.patient_count(); ++pi)
        analyze_patient(rs, index, pi, opts, p);
    return finalize(std::move(p));
}

AnalysisResult analyze_parallel(const RecordSet& rs, const PatientIndex& index,
                                const AnalysisOptions& opts) {
    int threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();
    if (threads < 1) threads = 1;

    std::vector<Partial> partials(static_cast<std::size_t>(threads));
    std::vector<std::size_t> bounds = partition_patients(index, threads);

    // Every chunk runs exactly once even if the runtime delivers a smaller
    // team than requested.
#pragma omp parallel for schedule(static, 1) num_threads(threads)
    for (int t = 0; t < threads; ++t) {
        Partial& local = partials[static_cast<std::size_t>(t)];
        for (std::size_t pi = bounds[static_cast<std::size_t>(t)];
             pi < bounds[static_cast<std::size_t>(t) + 1]; ++pi)
            analyze_patient(rs, index, pi, opts, local);
    }

    Partial merged = std::move(partials[0]);
    for (std::size_t t = 1; t < partials.size(); ++t) merged.merge(std::move(partials[t]));
    return finalize(std::move(merged));
}

AnalysisResult analyze(const RecordSet& rs, const PatientIndex& index,
                       const AnalysisOptions& opts) {
    if (opts.threads == 1) return analyze_serial(rs, index, opts);
    return analyze_parallel(rs, index, opts);
}

} // namespace staynet
