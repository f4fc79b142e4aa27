#include "staynet/network.hpp"

#include "staynet/errors.hpp"

namespace staynet {

std::string_view to_string(TransferKind k) {
    return k == TransferKind::direct ? "direct" : "indirect";
}

void append_direct_events(const OverlapGroup& g, const OverlapLabel& label,
                          std::vector<TransferEvent>& out) {
    if (g.members.size() != 2) return;
    const StayRecord& a = *g.members[0];
    const StayRecord& b = *g.members[1];

    auto event = [&](const StayRecord& from, const StayRecord& to, DayIndex day) {
        out.push_back({g.patient_id, from.facility_id, to.facility_id, day, 0,
                       TransferKind::direct});
    };

    switch (label.cls) {
    case OverlapClass::StandardTransfer: {
        // Earlier admission hands over to the later one on the shared day;
        // a 1-day overlap of two multi-day stays forces distinct admissions.
        const StayRecord& from = a.admission < b.admission ? a : b;
        const StayRecord& to = a.admission < b.admission ? b : a;
        event(from, to, std::max(a.admission, b.admission));
        break;
    }
    case OverlapClass::FirstDayTransfer: {
        const StayRecord& one = stay_duration(a) == 1 ? a : b;
        const StayRecord& other = stay_duration(a) == 1 ? b : a;
        event(one, other, one.admission);
        break;
    }
    case OverlapClass::LastDayTransfer: {
        const StayRecord& one = stay_duration(a) == 1 ? a : b;
        const StayRecord& other = stay_duration(a) == 1 ? b : a;
        event(other, one, one.admission);
        break;
    }
    case OverlapClass::TemporaryTransfer: {
        const StayRecord& inner = a.admission > b.admission ? a : b;
        const StayRecord& outer = a.admission > b.admission ? b : a;
        event(outer, inner, inner.admission);
        event(inner, outer, inner.discharge);
        break;
    }
    default:
        break; // same-facility, simultaneous and unknown classes: no transfers
    }
}

std::vector<TransferEvent> infer_direct(std::span<const ClassifiedGroup> groups) {
    std::vector<TransferEvent> events;
    for (const ClassifiedGroup& cg : groups) append_direct_events(cg.group, cg.label, events);
    return events;
}

void append_indirect_events(std::string_view patient_id, std::span<const Episode> episodes,
                            std::optional<std::int64_t> max_gap,
                            std::vector<TransferEvent>& out) {
    for (std::size_t i = 1; i < episodes.size(); ++i) {
        std::int64_t gap = society_gap(episodes[i - 1], episodes[i]);
        if (gap < 0) continue;
        if (max_gap && gap > *max_gap) continue;
        out.push_back({patient_id, episodes[i - 1].exit->facility_id,
                       episodes[i].entry->facility_id, episodes[i].begin, gap,
                       TransferKind::indirect});
    }
}

std::vector<TransferEvent> infer_indirect(const PatientIndex& index,
                                          std::optional<std::int64_t> max_gap) {
    std::vector<TransferEvent> events;
    for (std::size_t i = 0; i < index.patient_count(); ++i) {
        auto episodes = merge_episodes(index.stays(i));
        append_indirect_events(index.patient_id(i), episodes, max_gap, events);
    }
    return events;
}

std::uint64_t FacilityNetwork::event_count() const {
    std::uint64_t sum = 0;
    for (const auto& [key, data] : edges) sum += data.count;
    return sum;
}

FacilityNetwork build_network(std::span<const TransferEvent> events) {
    FacilityNetwork net;
    for (const TransferEvent& e : events) {
        net.nodes.emplace(e.from_facility);
        net.nodes.emplace(e.to_facility);
        FacilityNetwork::EdgeKey key{std::string(e.from_facility), std::string(e.to_facility),
                                     e.kind};
        FacilityNetwork::EdgeData& data = net.edges[std::move(key)];
        data.count += 1;
        if (e.kind == TransferKind::indirect) data.gap_days.add(e.gap_days);
    }
    return net;
}

NetworkFormat network_format_from_name(std::string_view name) {
    if (name == "csv") return NetworkFormat::edge_csv;
    if (name == "dot") return NetworkFormat::dot;
    throw ConfigError("unknown network format \"" + std::string(name) +
                      "\" (expected csv or dot)");
}

void export_network(const FacilityNetwork& net, NetworkFormat format, std::ostream& out) {
    switch (format) {
    case NetworkFormat::edge_csv:
        out << "from,to,kind,count\n";
        for (const auto& [key, data] : net.edges)
            out << key.from << ',' << key.to << ',' << to_string(key.kind) << ','
                << data.count << '\n';
        break;
    case NetworkFormat::dot:
        out << "digraph transfers {\n";
        for (const auto& node : net.nodes) out << "  \"" << node << "\";\n";
        for (const auto& [key, data] : net.edges)
            out << "  \"" << key.from << "\" -> \"" << key.to << "\" [label=\"" << data.count
                << "\", kind=\"" << to_string(key.kind) << "\"];\n";
        out << "}\n";
        break;
    }
}

void export_edge_gaps_csv(const FacilityNetwork& net, std::ostream& out) {
    out << "from,to,gap_days,count\n";
    for (const auto& [key, data] : net.edges) {
        if (key.kind != TransferKind::indirect) continue;
        for (const auto& [gap, count] : data.gap_days.bins)
            out << key.from << ',' << key.to << ',' << gap << ',' << count << '\n';
    }
}

} // namespace staynet
