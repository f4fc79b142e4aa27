#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "staynet/classify.hpp"
#include "staynet/ingest.hpp"
#include "staynet/network.hpp"
#include "staynet/stats.hpp"

namespace staynet {

struct AnalysisOptions {
    int threads = 0; // 0 = all available cores
    std::optional<std::int64_t> max_gap;
    DiagnosisCompare code_diagnosis = DiagnosisCompare::icd_code;
    bool collect_events = true;
    bool collect_groups = false;
};

/// Overlap group reported with row ids so it can be checked against
/// externally known ground truth.
struct RecoveredGroup {
    std::string_view patient_id;
    std::vector<std::uint32_t> rows;
    OverlapLabel label;

    friend bool operator==(const RecoveredGroup&, const RecoveredGroup&) = default;
};

struct AnalysisResult {
    Tabulation tab;
    DurationHistogram stay_durations;
    DurationHistogram society_gaps;
    EntriesSummary entries{};
    std::vector<TransferEvent> direct_events;
    std::vector<TransferEvent> indirect_events;
    std::vector<RecoveredGroup> groups; // only with collect_groups
};

bool operator==(const AnalysisResult& a, const AnalysisResult& b);

/// Single-pass per-patient fold: overlap groups, classification,
/// tabulation, stay/society histograms, entry summaries and transfer
/// events. Serial reference implementation.
AnalysisResult analyze_serial(const RecordSet& rs, const PatientIndex& index,
                              const AnalysisOptions& opts = {});

/// OpenMP fold over patients. Per-thread partials merge in a fixed order,
/// so the result is identical to analyze_serial for any thread count.
AnalysisResult analyze_parallel(const RecordSet& rs, const PatientIndex& index,
                                const AnalysisOptions& opts = {});

/// Dispatches on opts.threads (1 -> serial).
AnalysisResult analyze(const RecordSet& rs, const PatientIndex& index,
                       const AnalysisOptions& opts = {});

} // namespace staynet
