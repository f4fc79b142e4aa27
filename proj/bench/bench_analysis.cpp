// Benchmark: serial reference vs OpenMP analysis fold on a generated
// cohort. Verifies that both paths produce identical results, then prints
// per-stage timings and the speedup.
//
//   staynet_bench [records] [threads]
//
// records defaults to 1000000; threads to all cores.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>

#include <omp.h>

#include "staynet/analysis.hpp"
#include "staynet/ingest.hpp"
#include "staynet/syngen.hpp"

using namespace staynet;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

int main(int argc, char** argv) {
    std::uint64_t records = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1000000;
    int threads = argc > 2 ? std::atoi(argv[2]) : omp_get_max_threads();

    GenConfig cfg;
    cfg.seed = 20240915;
    cfg.facilities = 500;
    PlantCounts& p = cfg.plant;
    p.standard_transfer = p.first_day_transfer = p.last_day_transfer = 50;
    p.simultaneous_same_facility = p.temporary_transfer = 50;
    p.simultaneous_two_facilities = p.unknown_two_facilities = 50;
    p.two_admissions_same_facility = 50;
    p.unknown_multiple_3 = p.unknown_multiple_4 = 50;
    p.indirect_pair = 100;
    std::uint64_t mean_stays = (cfg.stays_per_patient_min + cfg.stays_per_patient_max) / 2;
    cfg.noise_patients = records / mean_stays;

    std::printf("generating ~%llu records...\n", static_cast<unsigned long long>(records));
    auto t0 = std::chrono::steady_clock::now();
    std::ostringstream csv;
    generate(cfg, csv, nullptr);
    double gen_s = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    std::istringstream in(csv.str());
    auto [rs, report] = parse_records(in, SchemaConfig{}, "<bench>", records + 16);
    double parse_s = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    PatientIndex index = group_by_patient(rs);
    double index_s = seconds_since(t0);

    std::printf("%llu records, %zu patients | generate %.2fs, parse %.2fs, index %.2fs\n",
                static_cast<unsigned long long>(rs.size()), index.patient_count(), gen_s,
                parse_s, index_s);

    AnalysisOptions opts;

    t0 = std::chrono::steady_clock::now();
    AnalysisResult serial = analyze_serial(rs, index, opts);
    double serial_s = seconds_since(t0);
    std::printf("serial   fold: %.3fs (%.2fM records/s)\n", serial_s,
                static_cast<double>(rs.size()) / serial_s / 1e6);

    opts.threads = threads;
    t0 = std::chrono::steady_clock::now();
    AnalysisResult parallel = analyze_parallel(rs, index, opts);
    double parallel_s = seconds_since(t0);
    std::printf("parallel fold: %.3fs with %d thread(s) (%.2fM records/s)\n", parallel_s,
                threads, static_cast<double>(rs.size()) / parallel_s / 1e6);

    if (!(parallel == serial)) {
        std::printf("MISMATCH: parallel result differs from the serial reference\n");
        return 1;
    }
    std::printf("results identical; speedup %.2fx\n", serial_s / parallel_s);
    std::printf("groups %llu, direct %zu, indirect %zu\n",
                static_cast<unsigned long long>(serial.tab.table.total),
                serial.direct_events.size(), serial.indirect_events.size());
    return 0;
}
