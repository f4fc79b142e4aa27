#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "staynet/errors.hpp"
#include "staynet/ingest.hpp"

using namespace staynet;
using namespace testutil;

namespace {

const char* kHeader = "patient_id,gender,facility_id,region_code,admission_date,"
                      "discharge_date,icd10_code,numeric_code\n";

std::pair<RecordSet, IngestReport> parse(const std::string& text,
                                         SchemaConfig schema = {}) {
    std::istringstream in(text);
    return parse_records(in, schema);
}

} // namespace

TEST_CASE("header-only input yields an empty set and an all-zero report") {
    auto [rs, report] = parse(kHeader);
    CHECK(rs.size() == 0);
    CHECK(report.total_rows == 0);
    CHECK(report.accepted == 0);
    CHECK(report.dropped_no_diagnosis == 0);
    CHECK(report.dropped_malformed == 0);
    CHECK(report.per_region_counts.empty());
}

TEST_CASE("rows with a blank diagnosis are dropped and counted") {
    std::string text = kHeader;
    text += "P1,m,F1,03,2013-01-01,2013-01-05,,100\n";
    auto [rs, report] = parse(text);
    CHECK(rs.size() == 0);
    CHECK(report.dropped_no_diagnosis == 1);
    CHECK(report.total_rows == 1);
}

TEST_CASE("rows with admission after discharge are malformed") {
    std::string text = kHeader;
    for (int i = 0; i < 8; ++i)
        text += "P" + std::to_string(i) + ",f,F1,03,2013-01-05,2013-01-10,I10,\n";
    text += "P8,f,F1,03,2013-01-10,2013-01-05,I10,\n";
    text += "P9,f,F1,03,2013-02-02,2013-02-01,I10,\n";
    auto [rs, report] = parse(text);
    CHECK(rs.size() == 8);
    CHECK(report.accepted == 8);
    CHECK(report.dropped_malformed == 2);
    CHECK(report.total_rows == 10);
}

TEST_CASE("malformed shapes never abort the run") {
    std::string text = kHeader;
    text += "P1,m,F1,03,2013-01-01,2013-01-05,I10,99\n"; // good
    text += "P2,m,F1,03,2013-01-99,2013-01-05,I10,\n";   // bad date
    text += "P3,m,F1,03,2013-01-01\n";                   // wrong column count
    text += ",m,F1,03,2013-01-01,2013-01-02,I10,\n";     // empty patient id
    text += "P5,m,,03,2013-01-01,2013-01-02,I10,\n";     // empty facility id
    text += "P6,m,F1,0345,2013-01-01,2013-01-02,I10,\n"; // bad region width
    text += "P7,m,F1,03,2013-01-01,2013-01-02,I10,xy\n"; // junk numeric code
    auto [rs, report] = parse(text);
    CHECK(report.accepted == 1);
    CHECK(report.dropped_malformed == 6);
    CHECK(report.total_rows == 7);
    CHECK(report.accepted + report.dropped_malformed + report.dropped_no_diagnosis ==
          report.total_rows);
}

TEST_CASE("gender tokens outside m/f map to unknown, never dropped") {
    std::string text = kHeader;
    text += "P1,m,F1,03,2013-01-01,2013-01-02,I10,\n";
    text += "P2,F,F1,03,2013-01-01,2013-01-02,I10,\n";
    text += "P3,x,F1,03,2013-01-01,2013-01-02,I10,\n";
    text += "P4,,F1,03,2013-01-01,2013-01-02,I10,\n";
    auto [rs, report] = parse(text);
    REQUIRE(rs.size() == 4);
    CHECK(rs[0].gender == Gender::male);
    CHECK(rs[1].gender == Gender::female);
    CHECK(rs[2].gender == Gender::unknown);
    CHECK(rs[3].gender == Gender::unknown);
}

TEST_CASE("numeric code is optional per row") {
    std::string text = kHeader;
    text += "P1,m,F1,03,2013-01-01,2013-01-02,I10,123\n";
    text += "P2,m,F1,03,2013-01-01,2013-01-02,I10,\n";
    auto [rs, report] = parse(text);
    REQUIRE(rs.size() == 2);
    CHECK(rs[0].numeric_code == 123);
    CHECK(!rs[1].numeric_code);
}

TEST_CASE("per-region counts cover accepted records only") {
    std::string text = kHeader;
    text += "P1,m,F1,03,2013-01-01,2013-01-02,I10,\n";
    text += "P2,m,F2,02,2013-01-01,2013-01-02,I10,\n";
    text += "P3,m,F3,02,2013-01-01,2013-01-02,,\n"; // dropped
    auto [rs, report] = parse(text);
    CHECK(report.per_region_counts.at("03") == 1);
    CHECK(report.per_region_counts.at("02") == 1);
    CHECK(report.per_region_counts.size() == 2);
}

TEST_CASE("schema can rename, reorder and address columns by position") {
    SchemaConfig schema;
    schema.patient_id = "pid";
    schema.gender = "";
    schema.facility_id = "#1";
    schema.region_code = "land";
    schema.admission = "von";
    schema.discharge = "bis";
    schema.icd10 = "diag";
    schema.numeric_code = "";
    schema.date_format = "%d.%m.%Y";
    schema.delimiter = ';';

    std::string text = "pid;fac;land;von;bis;diag\n"
                       "P1;F9;03;01.02.2013;21.02.2013;I21.0\n";
    std::istringstream in(text);
    auto [rs, report] = parse_records(in, schema);
    REQUIRE(rs.size() == 1);
    CHECK(rs[0].facility_id == "F9");
    CHECK(rs[0].admission == day("2013-02-01"));
    CHECK(rs[0].discharge == day("2013-02-21"));
    CHECK(rs[0].gender == Gender::unknown);
}

TEST_CASE("unknown schema columns are fatal configuration errors") {
    SchemaConfig schema;
    schema.patient_id = "no_such_column";
    std::istringstream in(kHeader);
    CHECK_THROWS_AS(parse_records(in, schema), ConfigError);

    SchemaConfig positional;
    positional.patient_id = "#12";
    std::istringstream in2(kHeader);
    CHECK_THROWS_AS(parse_records(in2, positional), ConfigError);
}

TEST_CASE("unreadable or header-less sources are fatal ingest errors") {
    std::istringstream empty("");
    CHECK_THROWS_AS(parse_records(empty, SchemaConfig{}), IngestError);

    std::istringstream bad("x");
    bad.setstate(std::ios::failbit);
    CHECK_THROWS_AS(parse_records(bad, SchemaConfig{}), IngestError);
}

TEST_CASE("quoted fields and trailing carriage returns are handled") {
    std::string text = kHeader;
    text += "\"P,1\",m,F1,03,2013-01-01,2013-01-02,\"I10\",\r\n";
    auto [rs, report] = parse(text);
    REQUIRE(rs.size() == 1);
    CHECK(rs[0].patient_id == "P,1");
    CHECK(rs[0].icd10 == "I10");
}

TEST_CASE("many quoted fields in one row stay intact") {
    std::string text = kHeader;
    text += "\"PATIENT,WITH,COMMAS\",\"m\",\"FAC\"\"Q\",\"03\",\"2013-01-01\","
            "\"2013-01-02\",\"I10\",\"42\"\n";
    auto [rs, report] = parse(text);
    REQUIRE(rs.size() == 1);
    CHECK(rs[0].patient_id == "PATIENT,WITH,COMMAS");
    CHECK(rs[0].facility_id == "FAC\"Q");
    CHECK(rs[0].region_code.view() == "03");
    CHECK(rs[0].numeric_code == 42);

    std::string bad = kHeader;
    bad += "\"P1\"x,m,F1,03,2013-01-01,2013-01-02,I10,\n"; // junk after quote
    auto [rs2, report2] = parse(bad);
    CHECK(report2.dropped_malformed == 1);

    std::string unterminated = kHeader;
    unterminated += "\"P1,m,F1,03,2013-01-01,2013-01-02,I10,\n";
    auto [rs3, report3] = parse(unterminated);
    CHECK(report3.dropped_malformed == 1);
}

TEST_CASE("ingest conservation holds under fuzzed malformed rows") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::string text = kHeader;
        std::uint64_t rows = 0;
        for (int i = 0; i < 40; ++i) {
            ++rows;
            switch (rng() % 5) {
            case 0: text += "Pa,m,F1,03,2013-01-01,2013-01-02,I10,\n"; break;
            case 1: text += "Pb,m,F1,03,2013-01-02,2013-01-01,I10,\n"; break;
            case 2: text += "Pc,m,F1,03,2013-01-01,2013-01-02,,\n"; break;
            case 3: text += "broken,row\n"; break;
            case 4: text += "Pd,?,F2,02,2013-01-01,2013-01-09,A09,4\n"; break;
            }
        }
        auto [rs, report] = parse(text);
        CHECK(report.total_rows == rows);
        CHECK(report.accepted + report.dropped_no_diagnosis + report.dropped_malformed ==
              report.total_rows);
        CHECK(rs.size() == report.accepted);
    }
}

TEST_CASE("parsing is deterministic") {
    std::string text = kHeader;
    text += "P2,m,F1,03,2013-01-01,2013-01-05,I10,1\n";
    text += "P1,f,F2,02,2013-02-01,2013-02-05,A09,\n";
    auto [rs1, report1] = parse(text);
    auto [rs2, report2] = parse(text);
    CHECK(report1 == report2);
    REQUIRE(rs1.size() == rs2.size());
    for (std::size_t i = 0; i < rs1.size(); ++i) {
        CHECK(rs1[i].patient_id == rs2[i].patient_id);
        CHECK(rs1[i].admission == rs2[i].admission);
    }
    // file order preserved
    CHECK(rs1[0].patient_id == "P2");
    CHECK(rs1[1].patient_id == "P1");
}

TEST_CASE("filter_region keeps matching records and is idempotent") {
    std::vector<StayRecord> records;
    for (int i = 0; i < 3; ++i) records.push_back(rec("P" + std::to_string(i), "F1", 0, 1));
    for (int i = 0; i < 2; ++i)
        records.push_back(rec("Q" + std::to_string(i), "F2", 0, 1, "I10", Gender::unknown, "02"));
    RecordSet rs(std::move(records), "test");

    RecordSet lower = filter_region(rs, *RegionCode::parse("03"));
    CHECK(lower.size() == 3);
    CHECK(rs.size() == 5); // original unchanged

    RecordSet again = filter_region(lower, *RegionCode::parse("03"));
    CHECK(again.size() == 3);

    RecordSet none = filter_region(rs, *RegionCode::parse("99"));
    CHECK(none.empty());
}

TEST_CASE("group_by_patient partitions and sorts") {
    std::vector<StayRecord> records;
    records.push_back(rec("B", "F2", 10, 12));
    records.push_back(rec("A", "F1", 5, 9));
    records.push_back(rec("B", "F1", 0, 4));
    records.push_back(rec("A", "F3", 5, 7));
    records.push_back(rec("B", "F9", 10, 11));
    RecordSet rs(std::move(records), "test");

    PatientIndex index = group_by_patient(rs);
    REQUIRE(index.patient_count() == 2);
    CHECK(index.record_count() == rs.size());

    auto a = index.find("A");
    REQUIRE(a.size() == 2);
    CHECK(a[0]->discharge == 7); // (5,7,F3) before (5,9,F1)
    CHECK(a[1]->discharge == 9);

    auto b = index.find("B");
    REQUIRE(b.size() == 3);
    CHECK(b[0]->admission == 0);
    CHECK(b[1]->discharge == 11); // (10,11,F9) before (10,12,F2)
    CHECK(b[2]->discharge == 12);

    CHECK(index.find("missing").empty());
}

TEST_CASE("group_by_patient of an empty set is empty") {
    RecordSet rs;
    PatientIndex index = group_by_patient(rs);
    CHECK(index.patient_count() == 0);
    CHECK(index.record_count() == 0);
}

TEST_CASE("per-patient lists are sorted regardless of input order") {
    std::vector<StayRecord> base;
    for (int i = 0; i < 20; ++i)
        base.push_back(rec("P", "F" + std::to_string(i % 4), (i * 7) % 23, (i * 7) % 23 + i % 5));

    std::mt19937 rng(123);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<StayRecord> shuffled = base;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        RecordSet rs(std::move(shuffled), "test");
        PatientIndex index = group_by_patient(rs);
        REQUIRE(index.patient_count() == 1);
        auto stays = index.stays(0);
        for (std::size_t i = 1; i < stays.size(); ++i) {
            auto key = [](const StayRecord* r) {
                return std::tuple(r->admission, r->discharge, r->facility_id);
            };
            CHECK(key(stays[i - 1]) <= key(stays[i]));
        }
    }
}
