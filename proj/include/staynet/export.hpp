#pragma once

#include <ostream>
#include <string_view>

#include "staynet/classify.hpp"
#include "staynet/histograms.hpp"
#include "staynet/ingest.hpp"
#include "staynet/stats.hpp"

namespace staynet {

// Writers are deterministic: sorted keys, fixed float formatting, LF line
// endings. Undefined percentages on empty tables render as "—" in CSV and
// null in JSON.

void write_ingest_report_json(const IngestReport& report, std::ostream& out);

void write_overlap_table_csv(const OverlapTable& table, std::ostream& out);
void write_pair_code_counts_csv(const Tabulation& tab, std::ostream& out);
void write_code_diagnosis_csv(const Tabulation& tab, std::ostream& out);

/// Overlap table plus all cross-tabulations in one JSON document.
void write_analysis_json(const Tabulation& tab, std::ostream& out);

/// Two-column histogram; value_column names the first column (e.g. "days").
void write_duration_histogram_csv(const DurationHistogram& hist,
                                  std::string_view value_column, std::ostream& out);

/// Rows labeled with the decade range, e.g. "10^1-10^2-1" for [10, 99].
void write_decade_histogram_csv(const DecadeHistogram& hist, std::ostream& out);

void write_facility_counts_csv(const FacilityCounts& counts,
                               std::string_view count_column, std::ostream& out);

void write_entries_summary_csv(const EntriesSummary& summary, std::ostream& out);

/// day,count rows with ISO dates; zero-count days inside the range included.
void write_occupancy_csv(const OccupancySeries& series, std::ostream& out);

} // namespace staynet
