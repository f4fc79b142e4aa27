#include "staynet/classify.hpp"

#include <stdexcept>

namespace staynet {

std::string_view to_string(OverlapClass c) {
    switch (c) {
    case OverlapClass::StandardTransfer: return "StandardTransfer";
    case OverlapClass::FirstDayTransfer: return "FirstDayTransfer";
    case OverlapClass::LastDayTransfer: return "LastDayTransfer";
    case OverlapClass::SimultaneousSameFacility: return "SimultaneousSameFacility";
    case OverlapClass::TemporaryTransfer: return "TemporaryTransfer";
    case OverlapClass::SimultaneousTwoFacilities: return "SimultaneousTwoFacilities";
    case OverlapClass::UnknownTwoFacilities: return "UnknownTwoFacilities";
    case OverlapClass::TwoAdmissionsSameFacility: return "TwoAdmissionsSameFacility";
    case OverlapClass::UnknownMultiple: break;
    }
    return "UnknownMultiple";
}

std::string OverlapLabel::str() const {
    if (cls != OverlapClass::UnknownMultiple) return std::string(to_string(cls));
    return "UnknownMultiple(" + std::to_string(multiplicity) + ")";
}

OverlapClass classify_pair(const StayRecord& a, const StayRecord& b) {
    if (overlap_days(a, b) < 1)
        throw std::invalid_argument("classify_pair: stays do not overlap");
    if (a.patient_id != b.patient_id)
        throw std::invalid_argument("classify_pair: stays belong to different patients");

    const bool same_facility = a.facility_id == b.facility_id;
    const bool same_period = a.admission == b.admission && a.discharge == b.discharge;

    if (same_facility) {
        return same_period ? OverlapClass::SimultaneousSameFacility
                           : OverlapClass::TwoAdmissionsSameFacility;
    }
    if (same_period) return OverlapClass::SimultaneousTwoFacilities;

    const std::int64_t dur_a = stay_duration(a);
    const std::int64_t dur_b = stay_duration(b);
    if ((dur_a == 1) != (dur_b == 1)) {
        const StayRecord& one = dur_a == 1 ? a : b;
        const StayRecord& other = dur_a == 1 ? b : a;
        if (one.admission == other.admission) return OverlapClass::FirstDayTransfer;
        if (one.admission == other.discharge) return OverlapClass::LastDayTransfer;
    }

    // Strict containment: both endpoints inside the longer period.
    const bool a_inside = b.admission < a.admission && a.discharge < b.discharge;
    const bool b_inside = a.admission < b.admission && b.discharge < a.discharge;
    if (a_inside || b_inside) return OverlapClass::TemporaryTransfer;

    if (overlap_days(a, b) == 1 && dur_a > 1 && dur_b > 1)
        return OverlapClass::StandardTransfer;

    return OverlapClass::UnknownTwoFacilities;
}

OverlapLabel classify_group(const OverlapGroup& g) {
    if (g.members.size() == 2)
        return {classify_pair(*g.members[0], *g.members[1]), 0};
    return {OverlapClass::UnknownMultiple, g.max_multiplicity};
}

std::string PairCode::str() const {
    std::string s(4, '0');
    if (same_facility) s[0] = '1';
    if (same_diagnosis) s[1] = '1';
    if (same_admission) s[2] = '1';
    if (same_discharge) s[3] = '1';
    return s;
}

PairCode PairCode::from_index(unsigned i) {
    PairCode c;
    c.same_facility = (i >> 3) & 1;
    c.same_diagnosis = (i >> 2) & 1;
    c.same_admission = (i >> 1) & 1;
    c.same_discharge = i & 1;
    return c;
}

PairCode pair_code(const StayRecord& a, const StayRecord& b, DiagnosisCompare mode) {
    PairCode code;
    code.same_facility = a.facility_id == b.facility_id;
    if (mode == DiagnosisCompare::group_index) {
        auto ga = diagnosis_group(a.icd10);
        auto gb = diagnosis_group(b.icd10);
        code.same_diagnosis = (ga && gb) ? *ga == *gb : a.icd10 == b.icd10;
    } else {
        code.same_diagnosis = a.icd10 == b.icd10;
    }
    code.same_admission = a.admission == b.admission;
    code.same_discharge = a.discharge == b.discharge;
    return code;
}

std::optional<int> diagnosis_group(std::string_view icd10) {
    if (icd10.empty()) return std::nullopt;
    char letter = icd10[0];
    if (letter >= 'a' && letter <= 'z') letter = static_cast<char>(letter - 'a' + 'A');
    if (letter < 'A' || letter > 'Z') return std::nullopt;

    // Two-digit numeric part after the letter; required where one letter
    // spans two chapters (C/D and H).
    int number = -1;
    if (icd10.size() >= 3 && icd10[1] >= '0' && icd10[1] <= '9' && icd10[2] >= '0' &&
        icd10[2] <= '9')
        number = (icd10[1] - '0') * 10 + (icd10[2] - '0');

    switch (letter) {
    case 'A':
    case 'B': return 1;
    case 'C': return 2;
    case 'D':
        if (number < 0) return std::nullopt;
        if (number <= 49) return 2; // neoplasms run through D49 in the ICD-10-CM list
        if (number <= 89) return 3;
        return std::nullopt;
    case 'E': return 4;
    case 'F': return 5;
    case 'G': return 6;
    case 'H':
        if (number < 0) return std::nullopt;
        if (number <= 59) return 7;
        if (number <= 95) return 8;
        return std::nullopt;
    case 'I': return 9;
    case 'J': return 10;
    case 'K': return 11;
    case 'L': return 12;
    case 'M': return 13;
    case 'N': return 14;
    case 'O': return 15;
    case 'P': return 16;
    case 'Q': return 17;
    case 'R': return 18;
    case 'S':
    case 'T': return 19;
    case 'Z': return 21;
    default: return std::nullopt; // U and V-Y
    }
}

std::optional<std::pair<int, int>> diagnosis_pair(const StayRecord& a, const StayRecord& b) {
    auto ga = diagnosis_group(a.icd10);
    auto gb = diagnosis_group(b.icd10);
    if (!ga || !gb) return std::nullopt;
    return std::make_pair(std::min(*ga, *gb), std::max(*ga, *gb));
}

void OverlapTable::add(const OverlapLabel& label) {
    if (label.cls == OverlapClass::UnknownMultiple)
        unknown_multiple[label.multiplicity] += 1;
    else
        pair_classes[static_cast<std::size_t>(label.cls)] += 1;
    ++total;
}

void OverlapTable::merge(const OverlapTable& other) {
    for (std::size_t i = 0; i < pair_classes.size(); ++i)
        pair_classes[i] += other.pair_classes[i];
    for (const auto& [n, count] : other.unknown_multiple) unknown_multiple[n] += count;
    total += other.total;
}

std::uint64_t OverlapTable::unknown_multiple_4plus() const {
    std::uint64_t sum = 0;
    for (const auto& [n, count] : unknown_multiple)
        if (n >= 4) sum += count;
    return sum;
}

std::vector<TableRow> table_rows(const OverlapTable& table) {
    std::vector<TableRow> rows;
    auto percent_of = [&](std::uint64_t count) -> std::optional<double> {
        if (table.total == 0) return std::nullopt;
        return 100.0 * static_cast<double>(count) / static_cast<double>(table.total);
    };
    for (std::size_t i = 0; i < kPairClassCount; ++i) {
        std::uint64_t count = table.pair_classes[i];
        rows.push_back({std::string(to_string(static_cast<OverlapClass>(i))), count,
                        percent_of(count)});
    }
    for (const auto& [n, count] : table.unknown_multiple) {
        if (n >= 4) break;
        rows.push_back({OverlapLabel{OverlapClass::UnknownMultiple, n}.str(), count,
                        percent_of(count)});
    }
    if (!table.unknown_multiple.contains(3))
        rows.push_back({"UnknownMultiple(3)", 0, percent_of(0)});
    std::uint64_t four_plus = table.unknown_multiple_4plus();
    rows.push_back({"UnknownMultiple(4+)", four_plus, percent_of(four_plus)});
    return rows;
}

void Tabulation::add(const OverlapGroup& g, const OverlapLabel& label, DiagnosisCompare mode) {
    table.add(label);
    if (g.members.size() == 2) {
        const StayRecord& a = *g.members[0];
        const StayRecord& b = *g.members[1];
        PairCode code = pair_code(a, b, mode);
        code_counts[code.index()] += 1;
        if (auto pair = diagnosis_pair(a, b)) {
            CodeDiagKey key{static_cast<std::uint8_t>(code.index()),
                            static_cast<std::uint8_t>(pair->first),
                            static_cast<std::uint8_t>(pair->second)};
            code_diagnoses[key] += 1;
        } else {
            ++pairs_without_diagnosis_group;
        }
        std::int64_t days = overlap_days(a, b);
        overlap_lengths.add(days);
        overlap_lengths_all_pairs.add(days);
    } else {
        for (std::size_t i = 0; i < g.members.size(); ++i)
            for (std::size_t j = i + 1; j < g.members.size(); ++j) {
                std::int64_t days = overlap_days(*g.members[i], *g.members[j]);
                if (days > 0) overlap_lengths_all_pairs.add(days);
            }
    }
}

void Tabulation::merge(const Tabulation& other) {
    table.merge(other.table);
    for (std::size_t i = 0; i < code_counts.size(); ++i) code_counts[i] += other.code_counts[i];
    for (const auto& [key, count] : other.code_diagnoses) code_diagnoses[key] += count;
    pairs_without_diagnosis_group += other.pairs_without_diagnosis_group;
    overlap_lengths.merge(other.overlap_lengths);
    overlap_lengths_all_pairs.merge(other.overlap_lengths_all_pairs);
}

Tabulation tabulate(std::span<const OverlapGroup> groups, DiagnosisCompare mode) {
    Tabulation tab;
    for (const OverlapGroup& g : groups) tab.add(g, classify_group(g), mode);
    return tab;
}

} // namespace staynet
