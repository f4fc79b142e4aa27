#include <doctest.h>

#include <algorithm>
#include <map>
#include <sstream>

#include "oracles.hpp"
#include "staynet/analysis.hpp"
#include "staynet/errors.hpp"
#include "staynet/syngen.hpp"

using namespace staynet;
using namespace testutil;

namespace {

std::pair<RecordSet, GroundTruth> run_generator(const GenConfig& cfg) {
    std::ostringstream out;
    GroundTruth truth;
    generate(cfg, out, &truth);
    std::istringstream in(out.str());
    auto [rs, report] = parse_records(in, SchemaConfig{});
    REQUIRE(report.dropped_malformed == 0);
    REQUIRE(report.dropped_no_diagnosis == 0);
    REQUIRE(rs.size() == truth.records);
    return {std::move(rs), std::move(truth)};
}

// (patient, sorted rows, label) triples, order-insensitive.
std::set<std::tuple<std::string, std::vector<std::uint32_t>, std::string>>
overlap_key_set(const std::vector<GroundTruth::PlantedOverlap>& overlaps) {
    std::set<std::tuple<std::string, std::vector<std::uint32_t>, std::string>> keys;
    for (const auto& o : overlaps) {
        auto rows = o.rows;
        std::sort(rows.begin(), rows.end());
        keys.insert({o.patient_id, rows, o.label.str()});
    }
    return keys;
}

using TransferKey = std::tuple<std::string, std::string, std::string, std::string, DayIndex,
                               std::int64_t>;

std::multiset<TransferKey> truth_transfer_keys(const GroundTruth& truth) {
    std::multiset<TransferKey> keys;
    for (const auto& t : truth.transfers)
        keys.insert({t.patient_id, t.from, t.to, std::string(to_string(t.kind)), t.day,
                     t.gap_days});
    return keys;
}

std::multiset<TransferKey> event_transfer_keys(const std::vector<TransferEvent>& events) {
    std::multiset<TransferKey> keys;
    for (const TransferEvent& e : events)
        keys.insert({std::string(e.patient_id), std::string(e.from_facility),
                     std::string(e.to_facility), std::string(to_string(e.kind)), e.day,
                     e.gap_days});
    return keys;
}

} // namespace

TEST_CASE("the same seed produces byte-identical output") {
    GenConfig cfg;
    cfg.seed = 7;
    cfg.noise_patients = 200;
    cfg.plant.standard_transfer = 3;
    cfg.plant.indirect_pair = 5;

    std::ostringstream a, b;
    generate(cfg, a, nullptr);
    GroundTruth truth;
    generate(cfg, b, &truth);
    CHECK(a.str() == b.str());

    cfg.seed = 8;
    std::ostringstream c;
    generate(cfg, c, nullptr);
    CHECK(a.str() != c.str());
}

TEST_CASE("zero planted overlaps yield zero overlap groups") {
    GenConfig cfg;
    cfg.seed = 3;
    cfg.noise_patients = 300;
    auto [rs, truth] = run_generator(cfg);
    CHECK(truth.overlaps.empty());

    PatientIndex index = group_by_patient(rs);
    std::size_t groups = 0;
    for (std::size_t p = 0; p < index.patient_count(); ++p)
        groups += connected_overlap_groups(index.patient_id(p), index.stays(p)).size();
    CHECK(groups == 0);
}

TEST_CASE("planting one of each class tabulates to one per class") {
    GenConfig cfg;
    cfg.seed = 11;
    PlantCounts& p = cfg.plant;
    p.standard_transfer = p.first_day_transfer = p.last_day_transfer = 1;
    p.simultaneous_same_facility = p.temporary_transfer = p.simultaneous_two_facilities = 1;
    p.unknown_two_facilities = p.two_admissions_same_facility = 1;
    p.unknown_multiple_3 = p.unknown_multiple_4 = 1;

    auto [rs, truth] = run_generator(cfg);
    PatientIndex index = group_by_patient(rs);
    AnalysisResult result = analyze_serial(rs, index);

    for (const TableRow& row : table_rows(result.tab.table)) {
        if (row.label == "total") continue;
        CHECK(row.count == 1);
    }
    CHECK(result.tab.table.total == 10);
}

TEST_CASE("pipeline recovers the planted truth exactly") {
    GenConfig cfg;
    cfg.seed = 1234;
    cfg.facilities = 12;
    cfg.noise_patients = 150;
    PlantCounts& p = cfg.plant;
    p.standard_transfer = 4;
    p.first_day_transfer = 4;
    p.last_day_transfer = 4;
    p.simultaneous_same_facility = 4;
    p.temporary_transfer = 4;
    p.simultaneous_two_facilities = 4;
    p.unknown_two_facilities = 4;
    p.two_admissions_same_facility = 4;
    p.unknown_multiple_3 = 4;
    p.unknown_multiple_4 = 4;
    p.indirect_pair = 10;

    auto [rs, truth] = run_generator(cfg);
    PatientIndex index = group_by_patient(rs);
    AnalysisOptions opts;
    opts.collect_groups = true;
    AnalysisResult result = analyze_serial(rs, index, opts);

    // overlap groups: zero false negatives, zero false positives
    std::set<std::tuple<std::string, std::vector<std::uint32_t>, std::string>> recovered;
    for (const RecoveredGroup& g : result.groups)
        recovered.insert({std::string(g.patient_id), g.rows, g.label.str()});
    CHECK(recovered == overlap_key_set(truth.overlaps));

    // transfers: multiset equality
    std::vector<TransferEvent> all(result.direct_events);
    all.insert(all.end(), result.indirect_events.begin(), result.indirect_events.end());
    CHECK(event_transfer_keys(all) == truth_transfer_keys(truth));

    // per-facility admissions
    FacilityCounts counts = admissions_per_facility(rs);
    CHECK(std::map<std::string, std::uint64_t>(counts.counts.begin(), counts.counts.end()) ==
          truth.admissions_per_facility);
}

TEST_CASE("foreign patients sit outside the home region") {
    GenConfig cfg;
    cfg.seed = 5;
    cfg.noise_patients = 20;
    cfg.foreign_patients = 10;
    auto [rs, truth] = run_generator(cfg);

    RecordSet home = filter_region(rs, *RegionCode::parse(cfg.region));
    RecordSet foreign = filter_region(rs, *RegionCode::parse(cfg.foreign_region));
    CHECK(foreign.size() == 10);
    CHECK(home.size() + foreign.size() == rs.size());
}

TEST_CASE("infeasible configurations are rejected") {
    std::ostringstream sink;

    GenConfig one_facility;
    one_facility.facilities = 1;
    one_facility.plant.standard_transfer = 1;
    CHECK_THROWS_AS(generate(one_facility, sink, nullptr), ConfigError);

    GenConfig narrow;
    narrow.plant.unknown_multiple_3 = 1;
    narrow.end_day = narrow.start_day + 10;
    CHECK_THROWS_AS(generate(narrow, sink, nullptr), ConfigError);

    GenConfig inverted;
    inverted.end_day = inverted.start_day - 1;
    CHECK_THROWS_AS(generate(inverted, sink, nullptr), ConfigError);

    GenConfig bad_stay;
    bad_stay.stay_days_min = 5;
    bad_stay.stay_days_max = 2;
    CHECK_THROWS_AS(generate(bad_stay, sink, nullptr), ConfigError);

    GenConfig bad_region;
    bad_region.region = "003";
    CHECK_THROWS_AS(generate(bad_region, sink, nullptr), ConfigError);

    GenConfig bad_weights;
    bad_weights.diagnosis_weights = {1, 2, 3};
    CHECK_THROWS_AS(generate(bad_weights, sink, nullptr), ConfigError);
}

TEST_CASE("diagnosis weights steer the generated chapters") {
    GenConfig cfg;
    cfg.seed = 21;
    cfg.noise_patients = 400;
    cfg.diagnosis_weights.assign(20, 0);
    cfg.diagnosis_weights[8] = 1; // group 9 only

    auto [rs, truth] = run_generator(cfg);
    for (const StayRecord& r : rs.records()) CHECK(diagnosis_group(r.icd10) == 9);
}

TEST_CASE("ground truth JSON serializes") {
    GenConfig cfg;
    cfg.seed = 2;
    cfg.plant.standard_transfer = 1;
    cfg.plant.indirect_pair = 1;
    std::ostringstream records;
    GroundTruth truth;
    generate(cfg, records, &truth);

    std::ostringstream json;
    write_ground_truth_json(truth, json);
    CHECK(json.str().find("\"overlaps\"") != std::string::npos);
    CHECK(json.str().find("StandardTransfer") != std::string::npos);
    CHECK(json.str().find("\"indirect\"") != std::string::npos);
}
