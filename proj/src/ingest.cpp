#include "staynet/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "staynet/dates.hpp"
#include "staynet/errors.hpp"

namespace staynet {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

// Splits one CSV line. Supports RFC-4180 style quoting with doubled quotes;
// unquoted fields are taken verbatim. Returns false on an unterminated
// quote. unquoted points into `line`; quoted fields are appended to
// `storage` (which must outlive the fields).
bool split_line(std::string_view line, char delimiter, std::vector<std::string_view>& fields,
                std::string& storage) {
    fields.clear();
    storage.clear();
    storage.reserve(line.size()); // views into storage must survive later appends
    std::size_t i = 0;
    const std::size_t n = line.size();
    while (true) {
        if (i < n && line[i] == '"') {
            std::size_t start = storage.size();
            ++i;
            while (true) {
                if (i >= n) return false;
                if (line[i] == '"') {
                    if (i + 1 < n && line[i + 1] == '"') {
                        storage.push_back('"');
                        i += 2;
                    } else {
                        ++i;
                        break;
                    }
                } else {
                    storage.push_back(line[i++]);
                }
            }
            fields.push_back(std::string_view(storage).substr(start));
        } else {
            std::size_t end = line.find(delimiter, i);
            if (end == std::string_view::npos) end = n;
            fields.push_back(line.substr(i, end - i));
            i = end;
        }
        if (i >= n) break;
        if (line[i] != delimiter) return false; // junk after closing quote
        ++i;
        if (i == n) { // trailing delimiter: final empty field
            fields.push_back({});
            break;
        }
    }
    return true;
}

struct ColumnMap {
    std::size_t patient, gender, facility, region, admission, discharge, icd10, numeric;
    bool has_gender = false;
    bool has_numeric = false;
};

constexpr std::size_t kNoColumn = static_cast<std::size_t>(-1);

std::size_t resolve_column(const std::vector<std::string_view>& header, std::string_view selector,
                           std::string_view role) {
    if (selector.empty()) return kNoColumn;
    if (selector.front() == '#') {
        std::size_t pos = 0;
        auto digits = selector.substr(1);
        auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), pos);
        if (ec != std::errc{} || p != digits.data() + digits.size())
            throw ConfigError("schema: bad positional column \"" + std::string(selector) +
                              "\" for " + std::string(role));
        if (pos >= header.size())
            throw ConfigError("schema: column position " + std::to_string(pos) + " for " +
                              std::string(role) + " is beyond the header (" +
                              std::to_string(header.size()) + " columns)");
        return pos;
    }
    for (std::size_t i = 0; i < header.size(); ++i)
        if (trim(header[i]) == selector) return i;
    throw ConfigError("schema: column \"" + std::string(selector) + "\" for " + std::string(role) +
                      " not found in header");
}

ColumnMap resolve_columns(const std::vector<std::string_view>& header,
                          const SchemaConfig& schema) {
    ColumnMap map{};
    map.patient = resolve_column(header, schema.patient_id, "patient_id");
    map.facility = resolve_column(header, schema.facility_id, "facility_id");
    map.region = resolve_column(header, schema.region_code, "region_code");
    map.admission = resolve_column(header, schema.admission, "admission");
    map.discharge = resolve_column(header, schema.discharge, "discharge");
    map.icd10 = resolve_column(header, schema.icd10, "icd10");
    if (map.patient == kNoColumn || map.facility == kNoColumn || map.region == kNoColumn ||
        map.admission == kNoColumn || map.discharge == kNoColumn || map.icd10 == kNoColumn)
        throw ConfigError("schema: patient_id, facility_id, region_code, admission, "
                          "discharge and icd10 columns are required");
    map.gender = resolve_column(header, schema.gender, "gender");
    map.has_gender = map.gender != kNoColumn;
    map.numeric = resolve_column(header, schema.numeric_code, "numeric_code");
    map.has_numeric = map.numeric != kNoColumn;
    return map;
}

// Reads one line, stripping a potential trailing '\r'. Returns false at EOF.
bool read_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

} // namespace

std::pair<RecordSet, IngestReport> parse_records(std::istream& in, const SchemaConfig& schema,
                                                 std::string provenance,
                                                 std::size_t reserve_hint) {
    if (!in) throw IngestError("unreadable input: " + provenance);

    DateFormat date_format = DateFormat::compile(schema.date_format);

    std::string line;
    if (!read_line(in, line)) throw IngestError("missing header line: " + provenance);
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);

    std::vector<std::string_view> fields;
    std::string quoted_storage;
    if (!split_line(line, schema.delimiter, fields, quoted_storage))
        throw IngestError("malformed header line: " + provenance);
    const ColumnMap columns = resolve_columns(fields, schema);
    const std::size_t header_width = fields.size();

    std::vector<StayRecord> records;
    if (reserve_hint) records.reserve(reserve_hint);
    IngestReport report;

    while (read_line(in, line)) {
        if (line.empty()) continue;
        ++report.total_rows;

        if (!split_line(line, schema.delimiter, fields, quoted_storage) ||
            fields.size() != header_width) {
            ++report.dropped_malformed;
            continue;
        }

        std::string_view icd10 = trim(fields[columns.icd10]);
        if (icd10.empty()) {
            ++report.dropped_no_diagnosis;
            continue;
        }

        std::string_view patient = trim(fields[columns.patient]);
        std::string_view facility = trim(fields[columns.facility]);
        auto region = RegionCode::parse(trim(fields[columns.region]));
        auto admission = date_format.parse(trim(fields[columns.admission]));
        auto discharge = date_format.parse(trim(fields[columns.discharge]));
        if (patient.empty() || facility.empty() || !region || !admission || !discharge ||
            *admission > *discharge) {
            ++report.dropped_malformed;
            continue;
        }

        std::optional<std::int64_t> numeric;
        if (columns.has_numeric) {
            std::string_view text = trim(fields[columns.numeric]);
            if (!text.empty()) {
                std::int64_t value = 0;
                auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
                if (ec != std::errc{} || p != text.data() + text.size()) {
                    ++report.dropped_malformed;
                    continue;
                }
                numeric = value;
            }
        }

        StayRecord r;
        r.patient_id.assign(patient);
        r.facility_id.assign(facility);
        r.icd10.assign(icd10);
        r.numeric_code = numeric;
        r.admission = *admission;
        r.discharge = *discharge;
        r.region_code = *region;
        r.gender = columns.has_gender ? gender_from_token(trim(fields[columns.gender]))
                                      : Gender::unknown;
        records.push_back(std::move(r));
        ++report.accepted;
        report.per_region_counts[records.back().region_code.str()] += 1;
    }
    if (in.bad()) throw IngestError("read error: " + provenance);

    return {RecordSet(std::move(records), std::move(provenance)), report};
}

std::pair<RecordSet, IngestReport> parse_records_file(const std::filesystem::path& path,
                                                      const SchemaConfig& schema) {
    // Newline count bounds the data-row count (header takes one line), so
    // the record vector never reallocates during the parse.
    std::size_t newlines = 0;
    {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IngestError("cannot open " + path.string());
        std::vector<char> buf(1 << 20);
        while (in) {
            in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
            std::streamsize got = in.gcount();
            for (std::streamsize i = 0; i < got; ++i)
                if (buf[i] == '\n') ++newlines;
        }
    }

    std::ifstream in(path, std::ios::binary);
    if (!in) throw IngestError("cannot open " + path.string());
    return parse_records(in, schema, path.string(), newlines);
}

RecordSet filter_region(const RecordSet& rs, RegionCode region) {
    std::vector<StayRecord> kept;
    for (const StayRecord& r : rs.records())
        if (r.region_code == region) kept.push_back(r);
    return RecordSet(std::move(kept),
                     rs.provenance() + " [region " + region.str() + "]");
}

PatientIndex::PatientIndex(const RecordSet& rs) {
    stays_.reserve(rs.size());
    for (const StayRecord& r : rs.records()) stays_.push_back(&r);

    std::sort(stays_.begin(), stays_.end(), [](const StayRecord* a, const StayRecord* b) {
        if (int c = a->patient_id.compare(b->patient_id); c != 0) return c < 0;
        if (a->admission != b->admission) return a->admission < b->admission;
        if (a->discharge != b->discharge) return a->discharge < b->discharge;
        return a->facility_id < b->facility_id;
    });

    offsets_.push_back(0);
    for (std::size_t i = 1; i < stays_.size(); ++i)
        if (stays_[i]->patient_id != stays_[i - 1]->patient_id)
            offsets_.push_back(static_cast<std::uint32_t>(i));
    offsets_.push_back(static_cast<std::uint32_t>(stays_.size()));
    patient_count_ = stays_.empty() ? 0 : offsets_.size() - 1;
}

std::span<const StayRecord* const> PatientIndex::find(std::string_view patient_id) const {
    std::size_t lo = 0, hi = patient_count_;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (this->patient_id(mid) < patient_id)
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < patient_count_ && this->patient_id(lo) == patient_id) return stays(lo);
    return {};
}

PatientIndex group_by_patient(const RecordSet& rs) { return PatientIndex(rs); }

} // namespace staynet
