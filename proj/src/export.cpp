#include "staynet/export.hpp"

#include <cstdio>

#include <json.hpp>

#include "staynet/dates.hpp"

namespace staynet {

namespace {

std::string fmt_percent(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", value);
    return buf;
}

std::string fmt_stat(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", value);
    return buf;
}

} // namespace

void write_ingest_report_json(const IngestReport& report, std::ostream& out) {
    nlohmann::json doc;
    doc["total_rows"] = report.total_rows;
    doc["accepted"] = report.accepted;
    doc["dropped_no_diagnosis"] = report.dropped_no_diagnosis;
    doc["dropped_malformed"] = report.dropped_malformed;
    doc["per_region_counts"] = report.per_region_counts;
    out << doc.dump(2) << '\n';
}

void write_overlap_table_csv(const OverlapTable& table, std::ostream& out) {
    out << "class,count,percent\n";
    for (const TableRow& row : table_rows(table)) {
        out << row.label << ',' << row.count << ',';
        out << (row.percent ? fmt_percent(*row.percent) : "—");
        out << '\n';
    }
    out << "total," << table.total << ",\n";
}

void write_pair_code_counts_csv(const Tabulation& tab, std::ostream& out) {
    out << "code,count\n";
    for (unsigned i = 0; i < tab.code_counts.size(); ++i)
        out << PairCode::from_index(i).str() << ',' << tab.code_counts[i] << '\n';
}

void write_code_diagnosis_csv(const Tabulation& tab, std::ostream& out) {
    out << "code,diagnosis_lo,diagnosis_hi,count\n";
    for (const auto& [key, count] : tab.code_diagnoses)
        out << PairCode::from_index(key.code).str() << ',' << int(key.lo) << ','
            << int(key.hi) << ',' << count << '\n';
    if (tab.pairs_without_diagnosis_group > 0)
        out << "unclassified,,," << tab.pairs_without_diagnosis_group << '\n';
}

void write_analysis_json(const Tabulation& tab, std::ostream& out) {
    nlohmann::json doc;

    nlohmann::json table = nlohmann::json::array();
    for (const TableRow& row : table_rows(tab.table)) {
        nlohmann::json r{{"class", row.label}, {"count", row.count}};
        if (row.percent)
            r["percent"] = *row.percent;
        else
            r["percent"] = nullptr;
        table.push_back(std::move(r));
    }
    doc["overlap_table"] = std::move(table);
    doc["overlap_total"] = tab.table.total;

    nlohmann::json codes;
    for (unsigned i = 0; i < tab.code_counts.size(); ++i)
        codes[PairCode::from_index(i).str()] = tab.code_counts[i];
    doc["pair_codes"] = std::move(codes);

    nlohmann::json code_diag = nlohmann::json::array();
    for (const auto& [key, count] : tab.code_diagnoses)
        code_diag.push_back({{"code", PairCode::from_index(key.code).str()},
                             {"pair", {key.lo, key.hi}},
                             {"count", count}});
    doc["pair_code_diagnoses"] = std::move(code_diag);
    doc["pairs_without_diagnosis_group"] = tab.pairs_without_diagnosis_group;

    nlohmann::json lengths;
    for (const auto& [days, count] : tab.overlap_lengths.bins)
        lengths[std::to_string(days)] = count;
    doc["overlap_lengths"] = std::move(lengths);

    nlohmann::json lengths_all;
    for (const auto& [days, count] : tab.overlap_lengths_all_pairs.bins)
        lengths_all[std::to_string(days)] = count;
    doc["overlap_lengths_all_pairs"] = std::move(lengths_all);

    out << doc.dump(2) << '\n';
}

void write_duration_histogram_csv(const DurationHistogram& hist,
                                  std::string_view value_column, std::ostream& out) {
    out << value_column << ",count\n";
    for (const auto& [value, count] : hist.bins) out << value << ',' << count << '\n';
}

void write_decade_histogram_csv(const DecadeHistogram& hist, std::ostream& out) {
    out << "bin,count\n";
    for (const auto& [k, count] : hist.bins)
        out << "10^" << k << "-10^" << (k + 1) << "-1," << count << '\n';
}

void write_facility_counts_csv(const FacilityCounts& counts, std::string_view count_column,
                               std::ostream& out) {
    out << "facility," << count_column << '\n';
    for (const auto& [facility, count] : counts.counts)
        out << facility << ',' << count << '\n';
}

void write_entries_summary_csv(const EntriesSummary& summary, std::ostream& out) {
    out << "gender,patients,min,max,median,mean\n";
    for (std::size_t g = 0; g < summary.size(); ++g) {
        if (!summary[g]) continue;
        const SummaryStats& s = *summary[g];
        out << to_string(static_cast<Gender>(g)) << ',' << s.n << ',' << s.min << ',' << s.max
            << ',' << fmt_stat(s.median) << ',' << fmt_stat(s.mean) << '\n';
    }
}

void write_occupancy_csv(const OccupancySeries& series, std::ostream& out) {
    out << "day,count\n";
    for (std::size_t i = 0; i < series.counts.size(); ++i)
        out << format_day(series.begin + static_cast<DayIndex>(i)) << ',' << series.counts[i]
            << '\n';
}

} // namespace staynet
