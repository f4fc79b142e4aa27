#include "staynet/syngen.hpp"

#include <array>
#include <cstdio>
#include <cstring>

#include <json.hpp>

#include "staynet/errors.hpp"
#include "staynet/rng.hpp"

namespace staynet {

namespace {

// Representative ICD-10 codes per chapter group, in group order
// 1..19 then 21.
struct GroupCodes {
    int group;
    std::array<const char*, 3> codes;
};

constexpr std::array<GroupCodes, 20> kDiagnosisCodes{{
    {1, {"A09", "B34.9", "A41.9"}},
    {2, {"C34.9", "C50.9", "D25.1"}},
    {3, {"D64.9", "D50.0", "D68.3"}},
    {4, {"E11.9", "E66.0", "E87.6"}},
    {5, {"F20.0", "F10.2", "F32.1"}},
    {6, {"G40.9", "G35", "G20"}},
    {7, {"H25.1", "H40.1", "H35.3"}},
    {8, {"H66.9", "H91.9", "H81.0"}},
    {9, {"I21.0", "I10", "I50.1"}},
    {10, {"J18.9", "J44.1", "J20.9"}},
    {11, {"K35.8", "K80.2", "K57.3"}},
    {12, {"L03.1", "L40.0", "L89.9"}},
    {13, {"M54.4", "M17.1", "M16.1"}},
    {14, {"N39.0", "N20.0", "N18.5"}},
    {15, {"O80", "O70.1", "O68.0"}},
    {16, {"P07.1", "P59.9", "P22.0"}},
    {17, {"Q21.1", "Q65.8", "Q38.1"}},
    {18, {"R55", "R10.4", "R07.4"}},
    {19, {"S72.0", "S06.0", "T84.0"}},
    {21, {"Z38.0", "Z51.1", "Z03.8"}},
}};

struct TemplateRecord {
    int facility_slot;
    DayIndex admission_offset;
    DayIndex discharge_offset;
};

struct TransferTemplate {
    int from_slot;
    int to_slot;
    DayIndex day_offset;
};

struct PatternTemplate {
    OverlapClass cls;
    int multiplicity; // 0 for two-record classes
    int facility_slots;
    std::vector<TemplateRecord> records;
    std::vector<TransferTemplate> transfers;
    DayIndex span;
};

// Planted patterns; offsets follow the classic textbook shapes for each
// class (1-day handovers, contained periods, identical periods, ...).
const std::vector<PatternTemplate>& pattern_templates() {
    static const std::vector<PatternTemplate> templates = [] {
        std::vector<PatternTemplate> t;
        t.push_back({OverlapClass::StandardTransfer, 0, 2,
                     {{0, 0, 2}, {1, 2, 7}},
                     {{0, 1, 2}},
                     8});
        t.push_back({OverlapClass::FirstDayTransfer, 0, 2,
                     {{0, 0, 0}, {1, 0, 20}},
                     {{0, 1, 0}},
                     21});
        t.push_back({OverlapClass::LastDayTransfer, 0, 2,
                     {{0, 0, 20}, {1, 20, 20}},
                     {{0, 1, 20}},
                     21});
        t.push_back({OverlapClass::SimultaneousSameFacility, 0, 1,
                     {{0, 0, 20}, {0, 0, 20}},
                     {},
                     21});
        t.push_back({OverlapClass::TemporaryTransfer, 0, 2,
                     {{0, 0, 37}, {1, 15, 19}},
                     {{0, 1, 15}, {1, 0, 19}},
                     38});
        t.push_back({OverlapClass::SimultaneousTwoFacilities, 0, 2,
                     {{0, 0, 7}, {1, 0, 7}},
                     {},
                     8});
        // Two shapes: containment sharing the admission day, and a plain
        // multi-day crossing.
        t.push_back({OverlapClass::UnknownTwoFacilities, 0, 2,
                     {{0, 0, 6}, {1, 0, 2}},
                     {},
                     7});
        t.push_back({OverlapClass::TwoAdmissionsSameFacility, 0, 1,
                     {{0, 0, 7}, {0, 3, 12}},
                     {},
                     13});
        t.push_back({OverlapClass::UnknownMultiple, 3, 3,
                     {{0, 0, 45}, {1, 20, 23}, {2, 23, 30}},
                     {},
                     46});
        t.push_back({OverlapClass::UnknownMultiple, 4, 4,
                     {{0, 0, 10}, {1, 2, 8}, {2, 4, 9}, {3, 5, 6}},
                     {},
                     11});
        return t;
    }();
    return templates;
}

const PatternTemplate kUnknownTwoAlternate{OverlapClass::UnknownTwoFacilities, 0, 2,
                                           {{0, 0, 13}, {1, 9, 14}},
                                           {},
                                           15};

class Emitter {
public:
    Emitter(const GenConfig& cfg, std::ostream& out, GroundTruth* truth)
        : cfg_(cfg), out_(out), truth_(truth) {
        facility_names_.reserve(cfg.facilities + foreign_facility_count());
        for (std::uint32_t f = 0; f < cfg.facilities; ++f)
            facility_names_.push_back(facility_name(f));
        for (std::uint32_t f = 0; f < foreign_facility_count(); ++f)
            facility_names_.push_back(facility_name(cfg.facilities + f));

        if (!cfg.diagnosis_weights.empty())
            weights_ = cfg.diagnosis_weights;
        else
            weights_.assign(kDiagnosisCodes.size(), 1);
        weight_total_ = 0;
        for (std::uint32_t w : weights_) weight_total_ += w;
    }

    std::uint32_t foreign_facility_count() const {
        if (cfg_.foreign_patients == 0) return 0;
        return std::max<std::uint32_t>(1, cfg_.facilities / 10);
    }

    void header() { out_ << "patient_id,gender,facility_id,region_code,admission_date," "discharge_date,icd10_code,numeric_code\n"; }

    std::string patient_name(std::uint64_t ordinal) const {
        char buf[24];
        std::snprintf(buf, sizeof buf, "P%07llu", static_cast<unsigned long long>(ordinal));
        return buf;
    }

    static std::string facility_name(std::uint64_t n) {
        char buf[24];
        std::snprintf(buf, sizeof buf, "F%04llu", static_cast<unsigned long long>(n));
        return buf;
    }

    const char* pick_diagnosis(SplitMix64& rng, int* group_out) {
        std::uint64_t r = rng.below(weight_total_);
        std::size_t g = 0;
        std::uint64_t cum = 0;
        for (; g < weights_.size(); ++g) {
            cum += weights_[g];
            if (r < cum) break;
        }
        if (g >= kDiagnosisCodes.size()) g = kDiagnosisCodes.size() - 1;
        const GroupCodes& entry = kDiagnosisCodes[g];
        if (group_out) *group_out = entry.group;
        return entry.codes[rng.below(entry.codes.size())];
    }

    std::uint32_t emit_row(const std::string& patient, char gender,
                           const std::string& facility, const std::string& region,
                           DayIndex admission, DayIndex discharge, const char* icd10,
                           std::int64_t numeric) {
        char buf[192];
        int len = std::snprintf(buf, sizeof buf, "%s,%c,%s,%s,%s,%s,%s,%lld\n",
                                patient.c_str(), gender, facility.c_str(), region.c_str(),
                                format_day(admission).c_str(), format_day(discharge).c_str(),
                                icd10, static_cast<long long>(numeric));
        out_.write(buf, len);
        if (truth_) truth_->admissions_per_facility[facility] += 1;
        return row_counter_++;
    }

    char pick_gender(SplitMix64& rng) { return rng.below(2) == 0 ? 'm' : 'f'; }

    std::uint32_t rows_emitted() const { return row_counter_; }
    const std::vector<std::string>& facilities() const { return facility_names_; }

private:
    const GenConfig& cfg_;
    std::ostream& out_;
    GroundTruth* truth_;
    std::vector<std::string> facility_names_;
    std::vector<std::uint32_t> weights_;
    std::uint64_t weight_total_ = 0;
    std::uint32_t row_counter_ = 0;
};

void validate(const GenConfig& cfg) {
    if (!RegionCode::parse(cfg.region))
        throw ConfigError("generator: region must be a two-character code");
    if (cfg.foreign_patients > 0 && !RegionCode::parse(cfg.foreign_region))
        throw ConfigError("generator: foreign region must be a two-character code");
    if (cfg.end_day < cfg.start_day)
        throw ConfigError("generator: date range is not well-ordered");
    if (cfg.stay_days_min < 1 || cfg.stay_days_min > cfg.stay_days_max)
        throw ConfigError("generator: bad stay-duration range");
    if (cfg.gap_days_min > cfg.gap_days_max)
        throw ConfigError("generator: bad gap range");
    if (cfg.stays_per_patient_min < 1 || cfg.stays_per_patient_min > cfg.stays_per_patient_max)
        throw ConfigError("generator: bad stays-per-patient range");
    if (!cfg.diagnosis_weights.empty()) {
        if (cfg.diagnosis_weights.size() != kDiagnosisCodes.size())
            throw ConfigError("generator: diagnosis weights need exactly " +
                              std::to_string(kDiagnosisCodes.size()) + " entries");
        std::uint64_t sum = 0;
        for (std::uint32_t w : cfg.diagnosis_weights) sum += w;
        if (sum == 0) throw ConfigError("generator: diagnosis weights sum to zero");
    }

    const std::uint64_t span = static_cast<std::uint64_t>(cfg.end_day) - cfg.start_day;
    std::uint64_t planted_counts[10] = {
        cfg.plant.standard_transfer,      cfg.plant.first_day_transfer,
        cfg.plant.last_day_transfer,      cfg.plant.simultaneous_same_facility,
        cfg.plant.temporary_transfer,     cfg.plant.simultaneous_two_facilities,
        cfg.plant.unknown_two_facilities, cfg.plant.two_admissions_same_facility,
        cfg.plant.unknown_multiple_3,     cfg.plant.unknown_multiple_4};
    const auto& templates = pattern_templates();
    for (std::size_t i = 0; i < templates.size(); ++i) {
        if (planted_counts[i] == 0) continue;
        if (static_cast<std::uint32_t>(templates[i].facility_slots) > cfg.facilities)
            throw ConfigError("generator: planting " +
                              OverlapLabel{templates[i].cls, templates[i].multiplicity}.str() +
                              " needs at least " + std::to_string(templates[i].facility_slots) +
                              " facilities");
        if (static_cast<std::uint64_t>(templates[i].span) > span + 1)
            throw ConfigError("generator: date range too short for planted patterns");
    }
    if (cfg.plant.indirect_pair > 0) {
        if (cfg.facilities < 2)
            throw ConfigError("generator: planting indirect transfers needs two facilities");
        std::uint64_t needed = 2ull * cfg.stay_days_max + cfg.gap_days_max + 1;
        if (needed > span + 1)
            throw ConfigError("generator: date range too short for planted indirect pairs");
    }
}

} // namespace

std::uint64_t PlantCounts::total() const {
    return standard_transfer + first_day_transfer + last_day_transfer +
           simultaneous_same_facility + temporary_transfer + simultaneous_two_facilities +
           unknown_two_facilities + two_admissions_same_facility + unknown_multiple_3 +
           unknown_multiple_4 + indirect_pair;
}

void generate(const GenConfig& cfg, std::ostream& out, GroundTruth* truth) {
    validate(cfg);

    Emitter emit(cfg, out, truth);
    emit.header();

    const auto& templates = pattern_templates();
    const std::uint64_t per_class[10] = {
        cfg.plant.standard_transfer,      cfg.plant.first_day_transfer,
        cfg.plant.last_day_transfer,      cfg.plant.simultaneous_same_facility,
        cfg.plant.temporary_transfer,     cfg.plant.simultaneous_two_facilities,
        cfg.plant.unknown_two_facilities, cfg.plant.two_admissions_same_facility,
        cfg.plant.unknown_multiple_3,     cfg.plant.unknown_multiple_4};

    std::uint64_t ordinal = 0;

    // Planted overlap patterns, one patient each, in fixed class order.
    for (std::size_t c = 0; c < templates.size(); ++c) {
        for (std::uint64_t k = 0; k < per_class[c]; ++k, ++ordinal) {
            SplitMix64 rng(substream_seed(cfg.seed, ordinal));
            const PatternTemplate* tpl = &templates[c];
            if (tpl->cls == OverlapClass::UnknownTwoFacilities && k % 2 == 1)
                tpl = &kUnknownTwoAlternate;

            std::string patient = emit.patient_name(ordinal);
            char gender = emit.pick_gender(rng);

            // Distinct facilities for the pattern's slots.
            std::array<std::uint32_t, 4> slots{};
            for (int s = 0; s < tpl->facility_slots; ++s) {
                bool fresh = false;
                while (!fresh) {
                    slots[s] = static_cast<std::uint32_t>(rng.below(cfg.facilities));
                    fresh = true;
                    for (int prev = 0; prev < s; ++prev)
                        if (slots[prev] == slots[s]) fresh = false;
                }
            }

            DayIndex base = static_cast<DayIndex>(
                rng.between(cfg.start_day, cfg.end_day - tpl->span + 1));

            GroundTruth::PlantedOverlap planted;
            planted.patient_id = patient;
            planted.label = {tpl->cls, tpl->multiplicity};
            for (const TemplateRecord& rec : tpl->records) {
                int group = 0;
                const char* icd = emit.pick_diagnosis(rng, &group);
                std::uint32_t row = emit.emit_row(
                    patient, gender, emit.facilities()[slots[rec.facility_slot]], cfg.region,
                    base + rec.admission_offset, base + rec.discharge_offset, icd,
                    group * 100 + static_cast<int>(rng.below(90)));
                planted.rows.push_back(row);
            }
            if (truth) {
                for (const TransferTemplate& tr : tpl->transfers)
                    truth->transfers.push_back({patient,
                                                emit.facilities()[slots[tr.from_slot]],
                                                emit.facilities()[slots[tr.to_slot]],
                                                TransferKind::direct, base + tr.day_offset, 0});
                truth->overlaps.push_back(std::move(planted));
            }
        }
    }

    // Planted indirect transfers: two stays at distinct facilities with a
    // home gap in between.
    for (std::uint64_t k = 0; k < cfg.plant.indirect_pair; ++k, ++ordinal) {
        SplitMix64 rng(substream_seed(cfg.seed, ordinal));
        std::string patient = emit.patient_name(ordinal);
        char gender = emit.pick_gender(rng);

        std::uint32_t fac_a = static_cast<std::uint32_t>(rng.below(cfg.facilities));
        std::uint32_t fac_b = fac_a;
        while (fac_b == fac_a) fac_b = static_cast<std::uint32_t>(rng.below(cfg.facilities));

        std::int64_t dur_a = rng.between(cfg.stay_days_min, cfg.stay_days_max);
        std::int64_t dur_b = rng.between(cfg.stay_days_min, cfg.stay_days_max);
        std::int64_t gap = rng.between(cfg.gap_days_min, cfg.gap_days_max);
        std::int64_t span = dur_a + 1 + gap + dur_b;
        DayIndex base =
            static_cast<DayIndex>(rng.between(cfg.start_day, cfg.end_day - span + 1));

        DayIndex adm_a = base, dis_a = base + static_cast<DayIndex>(dur_a) - 1;
        DayIndex adm_b = dis_a + 1 + static_cast<DayIndex>(gap);
        DayIndex dis_b = adm_b + static_cast<DayIndex>(dur_b) - 1;

        int group = 0;
        const char* icd_a = emit.pick_diagnosis(rng, &group);
        emit.emit_row(patient, gender, emit.facilities()[fac_a], cfg.region, adm_a, dis_a,
                      icd_a, group * 100);
        const char* icd_b = emit.pick_diagnosis(rng, &group);
        emit.emit_row(patient, gender, emit.facilities()[fac_b], cfg.region, adm_b, dis_b,
                      icd_b, group * 100);
        if (truth)
            truth->transfers.push_back({patient, emit.facilities()[fac_a],
                                        emit.facilities()[fac_b], TransferKind::indirect,
                                        adm_b, gap});
    }

    // Noise patients: independent stay chains with non-negative home gaps,
    // so they never overlap; every consecutive pair is an indirect event.
    for (std::uint64_t k = 0; k < cfg.noise_patients; ++k, ++ordinal) {
        SplitMix64 rng(substream_seed(cfg.seed, ordinal));
        std::string patient = emit.patient_name(ordinal);
        char gender = emit.pick_gender(rng);

        std::int64_t stays = rng.between(cfg.stays_per_patient_min, cfg.stays_per_patient_max);
        DayIndex admission =
            static_cast<DayIndex>(rng.between(cfg.start_day, cfg.end_day));
        std::uint32_t facility = static_cast<std::uint32_t>(rng.below(cfg.facilities));
        for (std::int64_t s = 0; s < stays; ++s) {
            std::int64_t duration = rng.between(cfg.stay_days_min, cfg.stay_days_max);
            DayIndex discharge = admission + static_cast<DayIndex>(duration) - 1;
            int group = 0;
            const char* icd = emit.pick_diagnosis(rng, &group);
            emit.emit_row(patient, gender, emit.facilities()[facility], cfg.region, admission,
                          discharge, icd, group * 100 + static_cast<int>(rng.below(90)));
            if (s + 1 < stays) {
                std::int64_t gap = rng.between(cfg.gap_days_min, cfg.gap_days_max);
                DayIndex next_admission = discharge + 1 + static_cast<DayIndex>(gap);
                std::uint32_t next_facility =
                    static_cast<std::uint32_t>(rng.below(cfg.facilities));
                if (truth)
                    truth->transfers.push_back({patient, emit.facilities()[facility],
                                                emit.facilities()[next_facility],
                                                TransferKind::indirect, next_admission, gap});
                admission = next_admission;
                facility = next_facility;
            }
        }
    }

    // Single stays at facilities outside the home region.
    for (std::uint64_t k = 0; k < cfg.foreign_patients; ++k, ++ordinal) {
        SplitMix64 rng(substream_seed(cfg.seed, ordinal));
        std::string patient = emit.patient_name(ordinal);
        char gender = emit.pick_gender(rng);
        std::uint32_t facility =
            cfg.facilities + static_cast<std::uint32_t>(rng.below(emit.foreign_facility_count()));
        std::int64_t duration = rng.between(cfg.stay_days_min, cfg.stay_days_max);
        DayIndex admission = static_cast<DayIndex>(rng.between(cfg.start_day, cfg.end_day));
        int group = 0;
        const char* icd = emit.pick_diagnosis(rng, &group);
        emit.emit_row(patient, gender, emit.facilities()[facility], cfg.foreign_region,
                      admission, admission + static_cast<DayIndex>(duration) - 1, icd,
                      group * 100);
    }

    if (truth) {
        truth->records = emit.rows_emitted();
        truth->patients = ordinal;
    }
    out.flush();
}

void write_ground_truth_json(const GroundTruth& truth, std::ostream& out) {
    nlohmann::json doc;
    doc["records"] = truth.records;
    doc["patients"] = truth.patients;

    nlohmann::json overlaps = nlohmann::json::array();
    for (const auto& o : truth.overlaps) {
        overlaps.push_back({{"patient", o.patient_id},
                            {"rows", o.rows},
                            {"label", o.label.str()}});
    }
    doc["overlaps"] = std::move(overlaps);

    nlohmann::json transfers = nlohmann::json::array();
    for (const auto& t : truth.transfers) {
        transfers.push_back({{"patient", t.patient_id},
                             {"from", t.from},
                             {"to", t.to},
                             {"kind", std::string(to_string(t.kind))},
                             {"day", format_day(t.day)},
                             {"gap_days", t.gap_days}});
    }
    doc["transfers"] = std::move(transfers);

    doc["admissions_per_facility"] = truth.admissions_per_facility;
    out << doc.dump(2) << '\n';
}

} // namespace staynet
