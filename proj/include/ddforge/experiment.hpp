#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "ddforge/benchmarks.hpp"
#include "ddforge/dd.hpp"
#include "ddforge/metrics.hpp"
#include "ddforge/noise.hpp"

namespace ddforge {

/// One experiment grid: a benchmark family swept over sizes, with a baseline
/// plus one method per DD sequence (optionally combined with the
/// pulse-efficient rewrite). Repeats rerun the noise, not the circuits.
struct ExperimentConfig {
    std::string benchmark = "bv"; // bv | hs | qft | gs | qaoa-3reg | qaoa-rand
    std::vector<int> sizes;
    std::vector<std::string> dd; // catalog names; empty or "none" = baseline only
    bool pulse_efficient = false;
    long long shots = 8192;
    int repeats = 3;
    std::uint64_t seed = 1;
    std::string secret_mode = "random"; // random | ones | zeros
    NoiseModel noise;
    std::string noise_file;
    DurationTable durations = DurationTable::defaults();
    std::string out_dir;
    int qaoa_budget = 600;
    double rand_graph_p = 0.5;

    void validate() const;
};

ExperimentConfig load_experiment_config(const std::string& path);

/// "3..6" or "3,4,5" -> {3,4,5,6}.
std::vector<int> parse_size_list(const std::string& text);
/// "cp, xy4" -> {"cp", "xy4"}.
std::vector<std::string> parse_name_list(const std::string& text);

struct CellResult {
    std::string benchmark;
    std::string label;
    int size = 0;
    std::string method; // "baseline", "cp", "pe", "pe+cp", ...
    MetricKind metric = MetricKind::Pst;
    std::vector<double> raw;
    std::vector<std::uint64_t> repeat_seeds;
    double avg = 0;
    double relative = NAN; // NAN = baseline row or not applicable
    std::string flag;      // "ok" | "low_pst" | "not_inserted"
    int windows_considered = 0;
    int windows_filled = 0;
    InsertionReport insertion;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<CellResult> cells;

    const CellResult* find(int size, const std::string& method) const;
};

/// Runs the full grid: generate, transpile (optionally pulse-efficient),
/// schedule, insert DD, simulate, score, aggregate. Writes results.csv,
/// manifest.json and per-figure CSVs into config.out_dir when set. Output is
/// byte-identical for identical config and seed.
ExperimentReport run_experiment(const ExperimentConfig& config);

std::string results_csv(const ExperimentReport& report);
std::string manifest_json(const ExperimentReport& report);

/// One CSV per figure family (BV relative PST, QFT/GS relative JSD, QAOA
/// relative approximation-ratio delta); rows with no DD inserted are omitted.
void emit_plot_data(const ExperimentReport& report, const std::string& dir);

} // namespace ddforge
