#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "staynet/histograms.hpp"
#include "staynet/temporal.hpp"

namespace staynet {

enum class OverlapClass : std::uint8_t {
    StandardTransfer,
    FirstDayTransfer,
    LastDayTransfer,
    SimultaneousSameFacility,
    TemporaryTransfer,
    SimultaneousTwoFacilities,
    UnknownTwoFacilities,
    TwoAdmissionsSameFacility,
    UnknownMultiple,
};

/// Number of classes a two-record overlap can take (all but UnknownMultiple).
inline constexpr std::size_t kPairClassCount = 8;

std::string_view to_string(OverlapClass c);

/// Class plus the peak per-day record count, which distinguishes
/// UnknownMultiple(3) from UnknownMultiple(4+) groups.
struct OverlapLabel {
    OverlapClass cls = OverlapClass::UnknownTwoFacilities;
    int multiplicity = 0; // set iff cls == UnknownMultiple

    std::string str() const; // "StandardTransfer", "UnknownMultiple(3)", ...

    friend bool operator==(const OverlapLabel&, const OverlapLabel&) = default;
};

/// Classifies a two-record overlap. The first matching rule wins:
///   1. same facility, identical period          -> SimultaneousSameFacility
///   2. same facility                            -> TwoAdmissionsSameFacility
///   3. identical period, different facilities   -> SimultaneousTwoFacilities
///   4. exactly one stay is one day long and falls on the other's admission
///      (discharge) day                          -> First(Last)DayTransfer
///   5. one period strictly inside the other     -> TemporaryTransfer
///   6. 1-day overlap, both stays longer a day   -> StandardTransfer
///   7. anything else                            -> UnknownTwoFacilities
/// Symmetric in its arguments. Throws std::invalid_argument when the stays
/// do not overlap or belong to different patients.
OverlapClass classify_pair(const StayRecord& a, const StayRecord& b);

/// Two-member groups delegate to classify_pair; larger groups become
/// UnknownMultiple carrying the group's max daily multiplicity.
OverlapLabel classify_group(const OverlapGroup& g);

enum class DiagnosisCompare : std::uint8_t {
    icd_code,    // full ICD-10 strings must match
    group_index, // chapter groups must match (falls back to strings when unmappable)
};

/// Four-bit descriptor of a two-record overlap, rendered facility,
/// diagnosis, admission, discharge: "1100" = same facility and diagnosis,
/// different admission and discharge dates.
struct PairCode {
    bool same_facility = false;
    bool same_diagnosis = false;
    bool same_admission = false;
    bool same_discharge = false;

    unsigned index() const {
        return (unsigned(same_facility) << 3) | (unsigned(same_diagnosis) << 2) |
               (unsigned(same_admission) << 1) | unsigned(same_discharge);
    }
    std::string str() const;
    static PairCode from_index(unsigned i);

    friend bool operator==(const PairCode&, const PairCode&) = default;
};

PairCode pair_code(const StayRecord& a, const StayRecord& b,
                   DiagnosisCompare mode = DiagnosisCompare::icd_code);

/// ICD-10 chapter group: A,B->1; C00-D48->2; D50-D89->3; E->4; F->5; G->6;
/// H00-H59->7; H60-H95->8; I->9; J->10; K->11; L->12; M->13; N->14; O->15;
/// P->16; Q->17; R->18; S,T->19; Z->21. Index 20 never occurs. nullopt for
/// unmappable codes (U, V-Y, malformed); callers count those separately.
std::optional<int> diagnosis_group(std::string_view icd10);

/// Ascending pair of the two records' chapter groups; nullopt when either
/// diagnosis is unmappable.
std::optional<std::pair<int, int>> diagnosis_pair(const StayRecord& a, const StayRecord& b);

/// Per-class group counts. UnknownMultiple groups are kept exact by
/// multiplicity; exports pool n >= 4 into one "UnknownMultiple(4+)" row.
struct OverlapTable {
    std::array<std::uint64_t, kPairClassCount> pair_classes{};
    std::map<int, std::uint64_t> unknown_multiple;
    std::uint64_t total = 0;

    void add(const OverlapLabel& label);
    void merge(const OverlapTable& other);
    std::uint64_t unknown_multiple_4plus() const;

    friend bool operator==(const OverlapTable&, const OverlapTable&) = default;
};

struct TableRow {
    std::string label;
    std::uint64_t count = 0;
    std::optional<double> percent; // absent when the table is empty
};

/// Fixed export order: the eight two-record classes, then UnknownMultiple
/// rows. UnknownMultiple(2) appears only when present; 3 and 4+ always.
std::vector<TableRow> table_rows(const OverlapTable& table);

struct CodeDiagKey {
    std::uint8_t code = 0; // PairCode::index()
    std::uint8_t lo = 0;   // ascending diagnosis group pair
    std::uint8_t hi = 0;

    friend auto operator<=>(const CodeDiagKey&, const CodeDiagKey&) = default;
};

/// Overlap table plus the cross-tabulations over two-record groups:
/// pair-code counts, pair-code by diagnosis-group-pair counts, and
/// overlap-length histograms. overlap_lengths covers two-record groups;
/// overlap_lengths_all_pairs additionally counts every member pair of
/// larger groups and is exported separately, clearly marked.
struct Tabulation {
    OverlapTable table;
    std::array<std::uint64_t, 16> code_counts{};
    std::map<CodeDiagKey, std::uint64_t> code_diagnoses;
    std::uint64_t pairs_without_diagnosis_group = 0;
    DurationHistogram overlap_lengths;
    DurationHistogram overlap_lengths_all_pairs;

    void add(const OverlapGroup& g, const OverlapLabel& label,
             DiagnosisCompare mode = DiagnosisCompare::icd_code);
    void merge(const Tabulation& other);

    friend bool operator==(const Tabulation&, const Tabulation&) = default;
};

Tabulation tabulate(std::span<const OverlapGroup> groups,
                    DiagnosisCompare mode = DiagnosisCompare::icd_code);

} // namespace staynet
