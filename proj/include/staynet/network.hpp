#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "staynet/classify.hpp"
#include "staynet/histograms.hpp"
#include "staynet/ingest.hpp"
#include "staynet/temporal.hpp"

namespace staynet {

enum class TransferKind : std::uint8_t { direct, indirect };

std::string_view to_string(TransferKind k);

/// A directed facility-to-facility patient movement. String views point
/// into the RecordSet the event was inferred from. day is the handover day
/// for direct events and the destination admission day for indirect ones.
struct TransferEvent {
    std::string_view patient_id;
    std::string_view from_facility;
    std::string_view to_facility;
    DayIndex day = 0;
    std::int64_t gap_days = 0; // 0 for direct
    TransferKind kind = TransferKind::direct;

    friend bool operator==(const TransferEvent&, const TransferEvent&) = default;
};

struct ClassifiedGroup {
    OverlapGroup group;
    OverlapLabel label;
};

/// Direct transfers implied by one classified group:
///   StandardTransfer  earlier-admission facility -> later, on the shared day
///   FirstDayTransfer  one-day facility -> long-stay facility
///   LastDayTransfer   long-stay facility -> one-day facility
///   TemporaryTransfer container -> contained and back, two events
/// Same-facility classes, SimultaneousTwoFacilities, UnknownTwoFacilities
/// and UnknownMultiple contribute nothing.
void append_direct_events(const OverlapGroup& g, const OverlapLabel& label,
                          std::vector<TransferEvent>& out);

std::vector<TransferEvent> infer_direct(std::span<const ClassifiedGroup> groups);

/// One indirect event per consecutive episode pair with gap_days >= 0 (and
/// <= max_gap when set): from the facility discharging the earlier episode
/// to the facility admitting the later one. Readmission to the same
/// facility yields a self-loop event.
void append_indirect_events(std::string_view patient_id, std::span<const Episode> episodes,
                            std::optional<std::int64_t> max_gap,
                            std::vector<TransferEvent>& out);

std::vector<TransferEvent> infer_indirect(const PatientIndex& index,
                                          std::optional<std::int64_t> max_gap = {});

/// Weighted directed multigraph keyed by (from, to, kind). Indirect edges
/// carry their gap-length histogram.
struct FacilityNetwork {
    struct EdgeKey {
        std::string from;
        std::string to;
        TransferKind kind = TransferKind::direct;

        friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
    };
    struct EdgeData {
        std::uint64_t count = 0;
        DurationHistogram gap_days;
    };

    std::set<std::string, std::less<>> nodes;
    std::map<EdgeKey, EdgeData> edges;

    std::uint64_t event_count() const;
};

FacilityNetwork build_network(std::span<const TransferEvent> events);

enum class NetworkFormat : std::uint8_t { edge_csv, dot };

/// "csv" or "dot"; anything else is a ConfigError.
NetworkFormat network_format_from_name(std::string_view name);

/// Deterministic exports: rows (and DOT statements) in lexicographic
/// (from, to, kind) order, UTF-8, LF line endings.
void export_network(const FacilityNetwork& net, NetworkFormat format, std::ostream& out);

/// Gap-length histograms of indirect edges as from,to,gap_days,count rows.
void export_edge_gaps_csv(const FacilityNetwork& net, std::ostream& out);

} // namespace staynet
