#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "staynet/errors.hpp"
#include "staynet/record.hpp"

namespace staynet {

/// Column mapping for record files. Each entry names a header column, or
/// addresses one by position with "#N" (0-based). gender and numeric_code
/// may be empty to mark the column as absent.
struct SchemaConfig {
    std::string patient_id = "patient_id";
    std::string gender = "gender";
    std::string facility_id = "facility_id";
    std::string region_code = "region_code";
    std::string admission = "admission_date";
    std::string discharge = "discharge_date";
    std::string icd10 = "icd10_code";
    std::string numeric_code = "numeric_code";
    std::string date_format = "%Y-%m-%d";
    char delimiter = ',';
};

struct IngestReport {
    std::uint64_t total_rows = 0;
    std::uint64_t accepted = 0;
    std::uint64_t dropped_no_diagnosis = 0;
    std::uint64_t dropped_malformed = 0;
    std::map<std::string, std::uint64_t> per_region_counts; // accepted records

    friend bool operator==(const IngestReport&, const IngestReport&) = default;
};

/// Immutable set of accepted records in file order. Row ids are positions
/// in this order.
class RecordSet {
public:
    RecordSet() = default;
    RecordSet(std::vector<StayRecord> records, std::string provenance)
        : records_(std::move(records)), provenance_(std::move(provenance)) {}

    const std::vector<StayRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }
    const std::string& provenance() const { return provenance_; }

    const StayRecord& operator[](std::size_t i) const { return records_[i]; }

    /// Row id of a record owned by this set.
    std::uint32_t row_of(const StayRecord* r) const {
        return static_cast<std::uint32_t>(r - records_.data());
    }

private:
    std::vector<StayRecord> records_;
    std::string provenance_;
};

/// Parses a CSV stream (first line is the header) into accepted records and
/// drop counts. Rows with an empty diagnosis column are counted in
/// dropped_no_diagnosis; rows that cannot be parsed (wrong column count, bad
/// dates, admission after discharge, empty ids) in dropped_malformed.
/// Per-row problems never abort the run.
///
/// Throws ConfigError when the schema names a column the header lacks, and
/// IngestError when the stream is unreadable or has no header line.
std::pair<RecordSet, IngestReport> parse_records(std::istream& in,
                                                 const SchemaConfig& schema,
                                                 std::string provenance = "<stream>",
                                                 std::size_t reserve_hint = 0);

/// File variant; counts data rows first so the record vector is allocated
/// exactly once.
std::pair<RecordSet, IngestReport> parse_records_file(const std::filesystem::path& path,
                                                      const SchemaConfig& schema);

/// Records whose facility sits in the given region; input order preserved.
RecordSet filter_region(const RecordSet& rs, RegionCode region);

/// Per-patient view over a RecordSet. Patients iterate in lexicographic id
/// order; each patient's stays are sorted by (admission, discharge,
/// facility_id). Safe to share across concurrent readers.
class PatientIndex {
public:
    struct Patient {
        std::string_view id;
        std::span<const StayRecord* const> stays;
    };

    PatientIndex() = default;
    explicit PatientIndex(const RecordSet& rs);

    std::size_t patient_count() const { return patient_count_; }
    std::size_t record_count() const { return stays_.size(); }

    Patient patient(std::size_t i) const {
        return {patient_id(i), stays(i)};
    }
    std::string_view patient_id(std::size_t i) const {
        return stays_[offsets_[i]]->patient_id;
    }
    std::span<const StayRecord* const> stays(std::size_t i) const {
        return {stays_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }

    /// Stays of one patient; empty span when the id is unknown.
    std::span<const StayRecord* const> find(std::string_view patient_id) const;

private:
    std::vector<const StayRecord*> stays_;
    std::vector<std::uint32_t> offsets_; // patient i covers [offsets_[i], offsets_[i+1])
    std::size_t patient_count_ = 0;
};

PatientIndex group_by_patient(const RecordSet& rs);

} // namespace staynet
