#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "staynet/classify.hpp"
#include "staynet/dates.hpp"
#include "staynet/network.hpp"

namespace staynet {

/// How many instances of each overlap class to plant. Each planted pattern
/// occupies one dedicated patient, so the pipeline must recover it exactly.
struct PlantCounts {
    std::uint64_t standard_transfer = 0;
    std::uint64_t first_day_transfer = 0;
    std::uint64_t last_day_transfer = 0;
    std::uint64_t simultaneous_same_facility = 0;
    std::uint64_t temporary_transfer = 0;
    std::uint64_t simultaneous_two_facilities = 0;
    std::uint64_t unknown_two_facilities = 0;
    std::uint64_t two_admissions_same_facility = 0;
    std::uint64_t unknown_multiple_3 = 0;
    std::uint64_t unknown_multiple_4 = 0;
    /// Two-stay patients with a home gap between different facilities.
    std::uint64_t indirect_pair = 0;

    std::uint64_t total() const;
};

struct GenConfig {
    std::uint64_t seed = 1;
    /// Patients with plain stay chains (no overlaps); their consecutive
    /// stays still produce indirect transfers, all recorded in the truth.
    std::uint64_t noise_patients = 0;
    std::uint32_t facilities = 10;
    DayIndex start_day = 13879; // 2008-01-01
    DayIndex end_day = 16800;   // 2015-12-31
    PlantCounts plant;
    std::uint32_t stay_days_min = 1;
    std::uint32_t stay_days_max = 14;
    std::uint32_t gap_days_min = 0;
    std::uint32_t gap_days_max = 60;
    std::uint32_t stays_per_patient_min = 1;
    std::uint32_t stays_per_patient_max = 5;
    /// Weights over the 20 diagnosis chapter groups (1..19, 21); empty =
    /// uniform.
    std::vector<std::uint32_t> diagnosis_weights;
    std::string region = "03";
    /// Extra single-stay patients whose facilities sit outside `region`.
    std::uint64_t foreign_patients = 0;
    std::string foreign_region = "02";
};

/// Everything the generator knows about the cohort it emitted. Row numbers
/// are 0-based data-row positions, which equal RecordSet row ids.
struct GroundTruth {
    struct PlantedOverlap {
        std::string patient_id;
        std::vector<std::uint32_t> rows;
        OverlapLabel label;
    };
    struct ExpectedTransfer {
        std::string patient_id;
        std::string from;
        std::string to;
        TransferKind kind = TransferKind::direct;
        DayIndex day = 0;
        std::int64_t gap_days = 0;
    };

    std::vector<PlantedOverlap> overlaps;   // every overlap group in the data
    std::vector<ExpectedTransfer> transfers; // every direct and indirect event
    std::map<std::string, std::uint64_t> admissions_per_facility;
    std::uint64_t records = 0;
    std::uint64_t patients = 0;
};

/// Emits a record CSV in the default ingest schema. Pure function of cfg:
/// the same seed produces byte-identical output. truth may be null when
/// only the records are needed (large performance cohorts).
/// Throws ConfigError for infeasible configurations.
void generate(const GenConfig& cfg, std::ostream& out, GroundTruth* truth);

void write_ground_truth_json(const GroundTruth& truth, std::ostream& out);

} // namespace staynet
