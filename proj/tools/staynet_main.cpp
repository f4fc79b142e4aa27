// staynet command line: generate synthetic cohorts, ingest record files,
// run the overlap/statistics suite and export transfer networks.
//
// Exit codes: 0 success, 1 data-level failure, 2 usage or configuration
// error. All outputs are file-based unless --stdout mirrors the primary
// artifact.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "staynet/analysis.hpp"
#include "staynet/dates.hpp"
#include "staynet/errors.hpp"
#include "staynet/export.hpp"
#include "staynet/ingest.hpp"
#include "staynet/network.hpp"
#include "staynet/stats.hpp"
#include "staynet/syngen.hpp"

namespace fs = std::filesystem;
using namespace staynet;

namespace {

struct InputOptions {
    std::string input;
    std::string region;
    std::string period;
    SchemaConfig schema;
    std::string delimiter = ",";
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
    cmd->add_option("--input", in.input, "Record CSV file")->required();
    cmd->add_option("--region", in.region, "Keep only facilities of this two-character region");
    cmd->add_option("--period", in.period,
                    "Keep only records admitted in START:END (ISO dates, inclusive)");
    cmd->add_option("--delimiter", in.delimiter, "Field delimiter (default ,)");
    cmd->add_option("--date-format", in.schema.date_format,
                    "Date pattern with %Y %m %d (default %Y-%m-%d)");
    cmd->add_option("--col-patient", in.schema.patient_id, "Patient id column");
    cmd->add_option("--col-gender", in.schema.gender, "Gender column ('' = absent)");
    cmd->add_option("--col-facility", in.schema.facility_id, "Facility id column");
    cmd->add_option("--col-region", in.schema.region_code, "Region code column");
    cmd->add_option("--col-admission", in.schema.admission, "Admission date column");
    cmd->add_option("--col-discharge", in.schema.discharge, "Discharge date column");
    cmd->add_option("--col-icd10", in.schema.icd10, "Diagnosis (ICD-10) column");
    cmd->add_option("--col-numeric", in.schema.numeric_code,
                    "Numeric diagnosis column ('' = absent)");
}

DayIndex parse_iso_day(const std::string& text, const std::string& what) {
    static const DateFormat iso = DateFormat::compile("%Y-%m-%d");
    auto day = iso.parse(text);
    if (!day) throw ConfigError(what + ": not an ISO date: \"" + text + "\"");
    return *day;
}

std::optional<DayRange> parse_period(const std::string& period) {
    if (period.empty()) return std::nullopt;
    auto colon = period.find(':');
    if (colon == std::string::npos)
        throw ConfigError("--period expects START:END, got \"" + period + "\"");
    DayRange range{parse_iso_day(period.substr(0, colon), "--period start"),
                   parse_iso_day(period.substr(colon + 1), "--period end")};
    if (range.last < range.first) throw ConfigError("--period is not well-ordered");
    return range;
}

RecordSet filter_period(const RecordSet& rs, DayRange range) {
    std::vector<StayRecord> kept;
    for (const StayRecord& r : rs.records())
        if (range.contains(r.admission)) kept.push_back(r);
    return RecordSet(std::move(kept), rs.provenance() + " [period]");
}

// Loads, validates and filters records per the shared input flags.
std::pair<RecordSet, IngestReport> load_records(const InputOptions& in) {
    if (in.delimiter.size() != 1) throw ConfigError("--delimiter must be one character");
    SchemaConfig schema = in.schema;
    schema.delimiter = in.delimiter[0];

    if (!fs::exists(in.input)) throw ConfigError("input file not found: " + in.input);
    auto [rs, report] = parse_records_file(in.input, schema);

    if (!in.region.empty()) {
        auto region = RegionCode::parse(in.region);
        if (!region) throw ConfigError("--region must be a two-character code");
        rs = filter_region(rs, *region);
    }
    if (auto period = parse_period(in.period)) rs = filter_period(rs, *period);
    return {std::move(rs), report};
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    return out;
}

std::string sanitize_filename(std::string_view name) {
    std::string safe;
    for (char c : name)
        safe.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_'
                           ? c
                           : '_');
    return safe;
}

void write_manifest(const fs::path& outdir, const std::string& command,
                    std::vector<std::string> outputs) {
    std::sort(outputs.begin(), outputs.end());
    nlohmann::json doc;
    doc["command"] = command;
    doc["outputs"] = outputs;
    auto out = open_output(outdir / "manifest.json");
    out << doc.dump(2) << '\n';
}

// --- generate ---------------------------------------------------------

struct GenerateArgs {
    GenConfig cfg;
    std::string out_path;
    std::string truth_path;
    std::uint64_t target_records = 0;
    std::uint64_t plant_per_class = 0;
    bool plant_all_classes = false;
    std::string start = "2008-01-01";
    std::string end = "2015-12-31";
    std::string stay_days = "1:14";
    std::string gap_days = "0:60";
    std::string stays_per_patient = "1:5";
};

std::pair<std::uint32_t, std::uint32_t> parse_range_flag(const std::string& text,
                                                         const std::string& what) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw ConfigError(what + " expects MIN:MAX");
    try {
        unsigned long lo = std::stoul(text.substr(0, colon));
        unsigned long hi = std::stoul(text.substr(colon + 1));
        return {static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(hi)};
    } catch (const std::exception&) {
        throw ConfigError(what + " expects MIN:MAX integers, got \"" + text + "\"");
    }
}

// Records each planted pattern contributes, in PlantCounts field order.
constexpr std::uint64_t kPatternRecords[11] = {2, 2, 2, 2, 2, 2, 2, 2, 3, 4, 2};

std::uint64_t planted_record_count(const PlantCounts& plant) {
    const std::uint64_t counts[11] = {
        plant.standard_transfer,      plant.first_day_transfer,
        plant.last_day_transfer,      plant.simultaneous_same_facility,
        plant.temporary_transfer,     plant.simultaneous_two_facilities,
        plant.unknown_two_facilities, plant.two_admissions_same_facility,
        plant.unknown_multiple_3,     plant.unknown_multiple_4,
        plant.indirect_pair};
    std::uint64_t total = 0;
    for (int i = 0; i < 11; ++i) total += counts[i] * kPatternRecords[i];
    return total;
}

int cmd_generate(GenerateArgs& args) {
    GenConfig& cfg = args.cfg;
    cfg.start_day = parse_iso_day(args.start, "--start");
    cfg.end_day = parse_iso_day(args.end, "--end");
    std::tie(cfg.stay_days_min, cfg.stay_days_max) =
        parse_range_flag(args.stay_days, "--stay-days");
    std::tie(cfg.gap_days_min, cfg.gap_days_max) = parse_range_flag(args.gap_days, "--gap-days");
    std::tie(cfg.stays_per_patient_min, cfg.stays_per_patient_max) =
        parse_range_flag(args.stays_per_patient, "--stays-per-patient");

    if (args.plant_all_classes && args.plant_per_class == 0) args.plant_per_class = 1;
    if (args.plant_per_class > 0) {
        PlantCounts& p = cfg.plant;
        for (std::uint64_t* field :
             {&p.standard_transfer, &p.first_day_transfer, &p.last_day_transfer,
              &p.simultaneous_same_facility, &p.temporary_transfer,
              &p.simultaneous_two_facilities, &p.unknown_two_facilities,
              &p.two_admissions_same_facility, &p.unknown_multiple_3, &p.unknown_multiple_4})
            *field = std::max(*field, args.plant_per_class);
    }

    if (args.target_records > 0) {
        std::uint64_t planted = planted_record_count(cfg.plant);
        std::uint64_t mean_stays = (cfg.stays_per_patient_min + cfg.stays_per_patient_max) / 2;
        if (mean_stays == 0) mean_stays = 1;
        std::uint64_t remaining =
            args.target_records > planted ? args.target_records - planted : 0;
        cfg.noise_patients = (remaining + mean_stays - 1) / mean_stays;
    }

    GroundTruth truth;
    GroundTruth* truth_ptr = args.truth_path.empty() ? nullptr : &truth;

    fs::path out_path(args.out_path);
    if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());
    auto out = open_output(out_path);
    std::vector<char> buffer(1 << 20);
    out.rdbuf()->pubsetbuf(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    generate(cfg, out, truth_ptr);
    out.close();

    if (truth_ptr) {
        auto tout = open_output(args.truth_path);
        write_ground_truth_json(truth, tout);
    }
    return 0;
}

// --- ingest ------------------------------------------------------------

struct IngestArgs {
    InputOptions in;
    std::string report_path;
    bool to_stdout = false;
};

int cmd_ingest(const IngestArgs& args) {
    if (args.report_path.empty() && !args.to_stdout)
        throw ConfigError("ingest: give --report PATH or --stdout");
    auto [rs, report] = load_records(args.in);
    (void)rs;
    if (!args.report_path.empty()) {
        fs::path path(args.report_path);
        if (path.has_parent_path()) fs::create_directories(path.parent_path());
        auto out = open_output(path);
        write_ingest_report_json(report, out);
    }
    if (args.to_stdout) write_ingest_report_json(report, std::cout);
    return 0;
}

// --- analyze -----------------------------------------------------------

struct AnalyzeArgs {
    InputOptions in;
    std::string outdir;
    int threads = 0;
    std::string code_diagnosis = "record";
    std::size_t occupancy_top = 0;
    std::vector<std::string> occupancy_facilities;
    bool to_stdout = false;
};

DiagnosisCompare code_diagnosis_mode(const std::string& name) {
    if (name == "record") return DiagnosisCompare::icd_code;
    if (name == "group") return DiagnosisCompare::group_index;
    throw ConfigError("--code-diagnosis expects record or group");
}

int cmd_analyze(const AnalyzeArgs& args) {
    auto [rs, report] = load_records(args.in);
    if (rs.empty())
        std::cerr << "warning: no records after filtering; outputs will be empty\n";

    PatientIndex index = group_by_patient(rs);
    AnalysisOptions opts;
    opts.threads = args.threads;
    opts.code_diagnosis = code_diagnosis_mode(args.code_diagnosis);
    AnalysisResult result = analyze(rs, index, opts);

    FacilityCounts admissions = admissions_per_facility(rs);
    FacilityCounts patients = patients_per_facility(rs);

    fs::path outdir(args.outdir);
    fs::create_directories(outdir);
    std::vector<std::string> outputs;
    auto emit = [&](const std::string& name, auto&& writer) {
        auto out = open_output(outdir / name);
        writer(out);
        outputs.push_back(name);
    };

    emit("ingest_report.json", [&](std::ostream& o) { write_ingest_report_json(report, o); });
    emit("overlap_table.csv", [&](std::ostream& o) { write_overlap_table_csv(result.tab.table, o); });
    emit("overlap_table.json", [&](std::ostream& o) { write_analysis_json(result.tab, o); });
    emit("pair_codes.csv", [&](std::ostream& o) { write_pair_code_counts_csv(result.tab, o); });
    emit("pair_code_diagnoses.csv",
         [&](std::ostream& o) { write_code_diagnosis_csv(result.tab, o); });
    emit("overlap_lengths.csv", [&](std::ostream& o) {
        write_duration_histogram_csv(result.tab.overlap_lengths, "days", o);
    });
    emit("overlap_lengths_all_pairs.csv", [&](std::ostream& o) {
        write_duration_histogram_csv(result.tab.overlap_lengths_all_pairs, "days", o);
    });
    emit("stay_durations.csv", [&](std::ostream& o) {
        write_duration_histogram_csv(result.stay_durations, "days", o);
    });
    emit("society_durations.csv", [&](std::ostream& o) {
        write_duration_histogram_csv(result.society_gaps, "days", o);
    });
    emit("entries_per_patient.csv",
         [&](std::ostream& o) { write_entries_summary_csv(result.entries, o); });
    emit("admissions_per_facility.csv",
         [&](std::ostream& o) { write_facility_counts_csv(admissions, "admissions", o); });
    emit("admissions_decades.csv",
         [&](std::ostream& o) { write_decade_histogram_csv(admissions.decades(), o); });
    emit("patients_per_facility.csv",
         [&](std::ostream& o) { write_facility_counts_csv(patients, "patients", o); });
    emit("patients_decades.csv",
         [&](std::ostream& o) { write_decade_histogram_csv(patients.decades(), o); });

    // Occupancy for explicitly requested facilities plus the N busiest.
    std::vector<std::string> occupancy = args.occupancy_facilities;
    if (args.occupancy_top > 0) {
        std::vector<std::pair<std::string, std::uint64_t>> ranked(admissions.counts.begin(),
                                                                  admissions.counts.end());
        std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        for (std::size_t i = 0; i < std::min(args.occupancy_top, ranked.size()); ++i)
            occupancy.push_back(ranked[i].first);
    }
    if (!occupancy.empty() && !rs.empty()) {
        DayRange range;
        if (auto period = parse_period(args.in.period)) {
            range = *period;
        } else {
            range = {rs[0].admission, rs[0].discharge};
            for (const StayRecord& r : rs.records()) {
                range.first = std::min(range.first, r.admission);
                range.last = std::max(range.last, r.discharge);
            }
        }
        std::sort(occupancy.begin(), occupancy.end());
        occupancy.erase(std::unique(occupancy.begin(), occupancy.end()), occupancy.end());
        for (const std::string& facility : occupancy) {
            OccupancySeries series = occupancy_timeseries(rs, facility, range);
            emit("occupancy_" + sanitize_filename(facility) + ".csv",
                 [&](std::ostream& o) { write_occupancy_csv(series, o); });
        }
    }

    write_manifest(outdir, "analyze", std::move(outputs));
    if (args.to_stdout) write_analysis_json(result.tab, std::cout);
    return 0;
}

// --- network -----------------------------------------------------------

struct NetworkArgs {
    InputOptions in;
    std::string outdir;
    int threads = 0;
    std::string kind = "both";
    std::string format = "both";
    std::int64_t max_gap = -1;
    bool to_stdout = false;
};

int cmd_network(const NetworkArgs& args) {
    bool want_direct = args.kind == "direct" || args.kind == "both";
    bool want_indirect = args.kind == "indirect" || args.kind == "both";
    if (!want_direct && !want_indirect)
        throw ConfigError("--kind expects direct, indirect or both");
    bool want_csv = args.format == "csv" || args.format == "both";
    bool want_dot = args.format == "dot" || args.format == "both";
    if (!want_csv && !want_dot) throw ConfigError("--format expects csv, dot or both");

    auto [rs, report] = load_records(args.in);
    if (rs.empty())
        std::cerr << "warning: no records after filtering; outputs will be empty\n";

    PatientIndex index = group_by_patient(rs);
    AnalysisOptions opts;
    opts.threads = args.threads;
    if (args.max_gap >= 0) opts.max_gap = args.max_gap;
    AnalysisResult result = analyze(rs, index, opts);

    std::vector<TransferEvent> events;
    if (want_direct)
        events.insert(events.end(), result.direct_events.begin(), result.direct_events.end());
    if (want_indirect)
        events.insert(events.end(), result.indirect_events.begin(),
                      result.indirect_events.end());
    FacilityNetwork net = build_network(events);

    fs::path outdir(args.outdir);
    fs::create_directories(outdir);
    if (want_csv) {
        auto out = open_output(outdir / "edges.csv");
        export_network(net, NetworkFormat::edge_csv, out);
    }
    if (want_dot) {
        auto out = open_output(outdir / "edges.dot");
        export_network(net, NetworkFormat::dot, out);
    }
    if (want_indirect) {
        auto out = open_output(outdir / "edge_gaps.csv");
        export_edge_gaps_csv(net, out);
    }
    if (args.to_stdout) export_network(net, NetworkFormat::edge_csv, std::cout);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"staynet: rebuilds inter-facility patient-transfer networks from "
                 "hospitalisation admission/discharge records"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Config file (INI/TOML-style keys mirroring the flags)");

    GenerateArgs gen;
    CLI::App* generate_cmd =
        app.add_subcommand("generate", "Emit a synthetic cohort with ground truth");
    generate_cmd->add_option("--out", gen.out_path, "Cohort CSV path")->required();
    generate_cmd->add_option("--truth", gen.truth_path, "Ground-truth JSON path");
    generate_cmd->add_option("--seed", gen.cfg.seed, "Generator seed");
    generate_cmd->add_option("--patients", gen.cfg.noise_patients,
                             "Plain stay-chain patients");
    generate_cmd->add_option("--records", gen.target_records,
                             "Target total record count (overrides --patients)");
    generate_cmd->add_option("--facilities", gen.cfg.facilities, "Facility count");
    generate_cmd->add_option("--start", gen.start, "First admission day (ISO)");
    generate_cmd->add_option("--end", gen.end, "Last admission day (ISO)");
    generate_cmd->add_flag("--plant-all-classes", gen.plant_all_classes,
                           "Plant at least one overlap of every class");
    generate_cmd->add_option("--plant-per-class", gen.plant_per_class,
                             "Plant N overlaps of every class");
    generate_cmd->add_option("--plant-standard", gen.cfg.plant.standard_transfer, "");
    generate_cmd->add_option("--plant-first-day", gen.cfg.plant.first_day_transfer, "");
    generate_cmd->add_option("--plant-last-day", gen.cfg.plant.last_day_transfer, "");
    generate_cmd->add_option("--plant-simultaneous-same",
                             gen.cfg.plant.simultaneous_same_facility, "");
    generate_cmd->add_option("--plant-temporary", gen.cfg.plant.temporary_transfer, "");
    generate_cmd->add_option("--plant-simultaneous-two",
                             gen.cfg.plant.simultaneous_two_facilities, "");
    generate_cmd->add_option("--plant-unknown-two", gen.cfg.plant.unknown_two_facilities, "");
    generate_cmd->add_option("--plant-two-admissions",
                             gen.cfg.plant.two_admissions_same_facility, "");
    generate_cmd->add_option("--plant-multiple3", gen.cfg.plant.unknown_multiple_3, "");
    generate_cmd->add_option("--plant-multiple4", gen.cfg.plant.unknown_multiple_4, "");
    generate_cmd->add_option("--plant-indirect", gen.cfg.plant.indirect_pair,
                             "Plant N two-stay home-gap patients");
    generate_cmd->add_option("--stay-days", gen.stay_days, "Stay duration MIN:MAX");
    generate_cmd->add_option("--gap-days", gen.gap_days, "Home gap MIN:MAX");
    generate_cmd->add_option("--stays-per-patient", gen.stays_per_patient,
                             "Stays per plain patient MIN:MAX");
    generate_cmd->add_option("--region", gen.cfg.region, "Home region code");
    generate_cmd->add_option("--foreign-patients", gen.cfg.foreign_patients,
                             "Single-stay patients outside the home region");
    generate_cmd->add_option("--foreign-region", gen.cfg.foreign_region,
                             "Region code for foreign facilities");

    IngestArgs ing;
    CLI::App* ingest_cmd = app.add_subcommand("ingest", "Parse and validate a record file");
    add_input_options(ingest_cmd, ing.in);
    ingest_cmd->add_option("--report", ing.report_path, "Ingest report JSON path");
    ingest_cmd->add_flag("--stdout", ing.to_stdout, "Also print the report to stdout");

    AnalyzeArgs ana;
    CLI::App* analyze_cmd =
        app.add_subcommand("analyze", "Run the overlap and statistics suite");
    add_input_options(analyze_cmd, ana.in);
    analyze_cmd->add_option("--outdir", ana.outdir, "Output directory")->required();
    analyze_cmd->add_option("--threads", ana.threads, "Worker threads (0 = all cores)");
    analyze_cmd->add_option("--code-diagnosis", ana.code_diagnosis,
                            "Pair-code diagnosis bit: record or group");
    analyze_cmd->add_option("--occupancy-top", ana.occupancy_top,
                            "Occupancy series for the N busiest facilities");
    analyze_cmd->add_option("--occupancy-facility", ana.occupancy_facilities,
                            "Occupancy series for this facility (repeatable)");
    analyze_cmd->add_flag("--stdout", ana.to_stdout, "Also print the analysis JSON to stdout");

    NetworkArgs net;
    CLI::App* network_cmd =
        app.add_subcommand("network", "Infer transfers and export the facility network");
    add_input_options(network_cmd, net.in);
    network_cmd->add_option("--outdir", net.outdir, "Output directory")->required();
    network_cmd->add_option("--threads", net.threads, "Worker threads (0 = all cores)");
    network_cmd->add_option("--kind", net.kind, "direct, indirect or both");
    network_cmd->add_option("--max-gap", net.max_gap,
                            "Drop indirect transfers with a home gap above this");
    network_cmd->add_option("--format", net.format, "csv, dot or both");
    network_cmd->add_flag("--stdout", net.to_stdout, "Also print the edge CSV to stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (generate_cmd->parsed()) return cmd_generate(gen);
        if (ingest_cmd->parsed()) return cmd_ingest(ing);
        if (analyze_cmd->parsed()) return cmd_analyze(ana);
        if (network_cmd->parsed()) return cmd_network(net);
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const IngestError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
