#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "staynet/network.hpp"

using namespace staynet;
using namespace testutil;

namespace {

ClassifiedGroup classified(std::string_view patient,
                           std::span<const StayRecord* const> members) {
    ClassifiedGroup cg;
    cg.group.patient_id = patient;
    cg.group.members = members;
    cg.group.span_begin = members.front()->admission;
    cg.group.span_end = members.front()->discharge;
    for (const StayRecord* r : members) {
        cg.group.span_begin = std::min(cg.group.span_begin, r->admission);
        cg.group.span_end = std::max(cg.group.span_end, r->discharge);
    }
    cg.group.max_multiplicity = max_daily_multiplicity(members);
    cg.label = classify_group(cg.group);
    return cg;
}

} // namespace

TEST_CASE("standard transfer: earlier admission hands over on the shared day") {
    std::vector<StayRecord> stays{rec_dates("P", "F1", "2015-06-30", "2015-07-02"),
                                  rec_dates("P", "F0", "2015-07-02", "2015-07-07")};
    auto ptrs = sorted_ptrs(stays);
    auto events = infer_direct(std::vector{classified("P", ptrs)});
    REQUIRE(events.size() == 1);
    CHECK(events[0].from_facility == "F1");
    CHECK(events[0].to_facility == "F0");
    CHECK(events[0].day == day("2015-07-02"));
    CHECK(events[0].gap_days == 0);
    CHECK(events[0].kind == TransferKind::direct);
}

TEST_CASE("temporary transfer: there and back again") {
    std::vector<StayRecord> stays{rec_dates("P", "F0", "2014-12-18", "2014-12-22"),
                                  rec_dates("P", "F2", "2014-12-03", "2015-01-09")};
    auto ptrs = sorted_ptrs(stays);
    auto events = infer_direct(std::vector{classified("P", ptrs)});
    REQUIRE(events.size() == 2);
    CHECK(events[0].from_facility == "F2");
    CHECK(events[0].to_facility == "F0");
    CHECK(events[0].day == day("2014-12-18"));
    CHECK(events[1].from_facility == "F0");
    CHECK(events[1].to_facility == "F2");
    CHECK(events[1].day == day("2014-12-22"));
}

TEST_CASE("first and last day transfers move through the one-day facility") {
    std::vector<StayRecord> first{rec("P", "A", 0, 0), rec("P", "B", 0, 9)};
    auto fp = sorted_ptrs(first);
    auto fe = infer_direct(std::vector{classified("P", fp)});
    REQUIRE(fe.size() == 1);
    CHECK(fe[0].from_facility == "A");
    CHECK(fe[0].to_facility == "B");
    CHECK(fe[0].day == 0);

    std::vector<StayRecord> last{rec("P", "A", 9, 9), rec("P", "B", 0, 9)};
    auto lp = sorted_ptrs(last);
    auto le = infer_direct(std::vector{classified("P", lp)});
    REQUIRE(le.size() == 1);
    CHECK(le[0].from_facility == "B");
    CHECK(le[0].to_facility == "A");
    CHECK(le[0].day == 9);
}

TEST_CASE("non-transfer classes contribute no direct events") {
    std::vector<StayRecord> same{rec("P", "A", 0, 9), rec("P", "A", 0, 9)};
    auto sp = sorted_ptrs(same);
    CHECK(infer_direct(std::vector{classified("P", sp)}).empty());

    std::vector<StayRecord> unknown{rec("P", "A", 0, 6), rec("P", "B", 0, 2)};
    auto up = sorted_ptrs(unknown);
    CHECK(infer_direct(std::vector{classified("P", up)}).empty());

    std::vector<StayRecord> simultaneous{rec("P", "A", 0, 7), rec("P", "B", 0, 7)};
    auto mp = sorted_ptrs(simultaneous);
    CHECK(infer_direct(std::vector{classified("P", mp)}).empty());

    std::vector<StayRecord> multiple{rec("P", "A", 0, 45), rec("P", "B", 20, 23),
                                     rec("P", "C", 23, 30)};
    auto xp = sorted_ptrs(multiple);
    CHECK(infer_direct(std::vector{classified("P", xp)}).empty());
}

TEST_CASE("indirect transfers trace home gaps") {
    std::vector<StayRecord> records{rec("P", "A", 0, 5), rec("P", "B", 10, 12)};
    RecordSet rs(std::move(records), "test");
    PatientIndex index = group_by_patient(rs);

    auto events = infer_indirect(index);
    REQUIRE(events.size() == 1);
    CHECK(events[0].from_facility == "A");
    CHECK(events[0].to_facility == "B");
    CHECK(events[0].gap_days == 4);
    CHECK(events[0].day == 10);
    CHECK(events[0].kind == TransferKind::indirect);

    CHECK(infer_indirect(index, 2).empty());
    CHECK(infer_indirect(index, 4).size() == 1);
}

TEST_CASE("merged episodes use the discharging and admitting facilities") {
    // episode 1: B discharges last; episode 2: C admits first
    std::vector<StayRecord> records{rec("P", "A", 0, 5), rec("P", "B", 3, 9),
                                    rec("P", "C", 15, 20), rec("P", "D", 18, 22)};
    RecordSet rs(std::move(records), "test");
    PatientIndex index = group_by_patient(rs);
    auto events = infer_indirect(index);
    REQUIRE(events.size() == 1);
    CHECK(events[0].from_facility == "B");
    CHECK(events[0].to_facility == "C");
    CHECK(events[0].gap_days == 5); // 15 - 9 - 1
    CHECK(events[0].day == 15);
}

TEST_CASE("same-facility readmission yields a self-loop event") {
    std::vector<StayRecord> records{rec("P", "A", 0, 5), rec("P", "A", 9, 12)};
    RecordSet rs(std::move(records), "test");
    auto events = infer_indirect(group_by_patient(rs));
    REQUIRE(events.size() == 1);
    CHECK(events[0].from_facility == events[0].to_facility);
}

TEST_CASE("build_network aggregates events per edge") {
    std::vector<TransferEvent> events;
    for (int i = 0; i < 3; ++i)
        events.push_back({"P", "A", "B", 5, 0, TransferKind::direct});
    events.push_back({"P", "A", "B", 9, 2, TransferKind::indirect});
    events.push_back({"Q", "A", "B", 11, 4, TransferKind::indirect});

    FacilityNetwork net = build_network(events);
    CHECK(net.nodes.size() == 2);
    CHECK(net.edges.at({"A", "B", TransferKind::direct}).count == 3);
    CHECK(net.edges.at({"A", "B", TransferKind::indirect}).count == 2);
    CHECK(net.edges.at({"A", "B", TransferKind::indirect}).gap_days.bins.at(2) == 1);
    CHECK(net.edges.at({"A", "B", TransferKind::indirect}).gap_days.bins.at(4) == 1);
    CHECK(net.event_count() == events.size());

    CHECK(build_network({}).nodes.empty());
    CHECK(build_network({}).edges.empty());
}

TEST_CASE("edge CSV round-trips through a parser") {
    std::vector<TransferEvent> events{{"P", "B", "A", 5, 0, TransferKind::direct},
                                      {"P", "A", "B", 9, 2, TransferKind::indirect},
                                      {"Q", "B", "A", 11, 0, TransferKind::direct}};
    FacilityNetwork net = build_network(events);
    std::ostringstream out;
    export_network(net, NetworkFormat::edge_csv, out);

    auto parsed = parse_edge_csv(out.str());
    CHECK(parsed.size() == 2);
    CHECK(parsed.at({"B", "A", "direct"}) == 2);
    CHECK(parsed.at({"A", "B", "indirect"}) == 1);
}

TEST_CASE("DOT export is syntactically valid and deterministic") {
    std::vector<TransferEvent> events;
    const char* names[] = {"alpha", "beta", "gamma", "delta", "epsilon"};
    for (int i = 0; i < 5; ++i)
        events.push_back({"P", names[i], names[(i + 2) % 5],
                          static_cast<DayIndex>(i), i % 2,
                          i % 2 ? TransferKind::indirect : TransferKind::direct});
    FacilityNetwork net = build_network(events);

    std::ostringstream dot1, dot2;
    export_network(net, NetworkFormat::dot, dot1);
    export_network(net, NetworkFormat::dot, dot2);
    CHECK(dot1.str() == dot2.str());
    CHECK(dot_is_valid(dot1.str()));

    std::ostringstream csv1, csv2;
    export_network(net, NetworkFormat::edge_csv, csv1);
    export_network(net, NetworkFormat::edge_csv, csv2);
    CHECK(csv1.str() == csv2.str());
}

TEST_CASE("unknown format names are configuration errors") {
    CHECK(network_format_from_name("csv") == NetworkFormat::edge_csv);
    CHECK(network_format_from_name("dot") == NetworkFormat::dot);
    CHECK_THROWS_AS(network_format_from_name("graphml"), ConfigError);
}

TEST_CASE("edge count conservation and antiparallel temporary pairs under fuzz") {
    std::mt19937 rng(73);
    std::uniform_int_distribution<DayIndex> start(0, 100);
    std::uniform_int_distribution<DayIndex> len(1, 15);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<StayRecord> records;
        int n_patients = 1 + static_cast<int>(rng() % 12);
        for (int p = 0; p < n_patients; ++p) {
            int stays = 1 + static_cast<int>(rng() % 4);
            for (int s = 0; s < stays; ++s) {
                DayIndex a = start(rng);
                records.push_back(rec("P" + std::to_string(p), "F" + std::to_string(rng() % 4),
                                      a, a + len(rng) - 1));
            }
        }
        RecordSet rs(std::move(records), "fuzz");
        PatientIndex index = group_by_patient(rs);

        std::vector<ClassifiedGroup> groups;
        for (std::size_t p = 0; p < index.patient_count(); ++p)
            for (const OverlapGroup& g :
                 connected_overlap_groups(index.patient_id(p), index.stays(p)))
                groups.push_back({g, classify_group(g)});

        auto direct = infer_direct(groups);
        auto indirect = infer_indirect(index);

        for (const ClassifiedGroup& cg : groups) {
            std::vector<TransferEvent> events;
            append_direct_events(cg.group, cg.label, events);
            switch (cg.label.cls) {
            case OverlapClass::StandardTransfer:
            case OverlapClass::FirstDayTransfer:
            case OverlapClass::LastDayTransfer:
                CHECK(events.size() == 1);
                CHECK(events[0].from_facility != events[0].to_facility);
                break;
            case OverlapClass::TemporaryTransfer:
                REQUIRE(events.size() == 2);
                CHECK(events[0].from_facility == events[1].to_facility);
                CHECK(events[0].to_facility == events[1].from_facility);
                CHECK(events[0].patient_id == events[1].patient_id);
                break;
            default:
                CHECK(events.empty());
            }
        }

        std::vector<TransferEvent> all(direct);
        all.insert(all.end(), indirect.begin(), indirect.end());
        FacilityNetwork net = build_network(all);
        CHECK(net.event_count() == all.size());
    }
}
