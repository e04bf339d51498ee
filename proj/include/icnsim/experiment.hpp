#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "icnsim/config.hpp"
#include "icnsim/csv.hpp"
#include "icnsim/engine.hpp"
#include "icnsim/topology.hpp"

namespace icnsim {

/// Materializes the topology a config describes (generate or snapshot file,
/// plus the AS-level-only collapse when requested).
Topology build_topology(const RunConfig& config);

/// The workload trace a config describes (generated or replayed from file).
std::vector<RequestEvent> build_workload(const RunConfig& config, const Topology& topo);

InterestRegistry registry_for(const RunConfig& config, const Topology& topo);
EngineConfig engine_config_for(const RunConfig& config);

struct RunResult {
    RunConfig config;
    std::string policy_label;
    MetricsReport report;
    std::uint64_t workload_hash = 0;
    std::string error; // non-empty when the run failed
    bool ok() const { return error.empty(); }
};

/// Executes one run over a prebuilt topology/trace (shared across a sweep).
RunResult execute_run(const RunConfig& config, const Topology& topo,
                      std::span<const RequestEvent> trace);

/// Convenience: build everything from the config and run it.
RunResult execute_run(const RunConfig& config);

enum class SweepAxis { Policy, Capacity, Population, AlphaQ };

SweepAxis parse_sweep_axis(const std::string& name);

/// Applies one axis value to a copy of the base config. Policy values are
/// policy names (SCENE2_T style suffixes select the variant), capacity and
/// population are integers, alpha_q values look like "0.6:55".
RunConfig apply_axis_value(const RunConfig& base, SweepAxis axis, const std::string& value);

struct SweepOutcome {
    std::vector<RunResult> results;
    Table summary;
    Table windows;
    bool all_ok = true;
};

/// Runs one config per axis value (policy sweeps share a single workload
/// trace), bounded by `workers` threads. Per-run failures are recorded and the
/// sweep continues.
SweepOutcome run_sweep(const RunConfig& base, SweepAxis axis,
                       const std::vector<std::string>& values, std::uint32_t workers = 1);

Table summary_table(std::span<const RunResult> results);
Table windows_table(std::span<const RunResult> results);
Table per_as_table(std::span<const RunResult> results);
Table scatter_table(const RunResult& result);

/// Known figure keys and their pinned column schemas (docs/formats.md).
std::vector<std::string> figure_keys();
const std::vector<std::string>& figure_columns(const std::string& key);

/// Writes <key>.csv into out_dir selecting the figure's columns from the
/// table; throws ConfigError naming the figure and any missing columns.
std::string emit_plot_data(const Table& table, const std::string& key,
                           const std::string& out_dir);

/// Writes the run directory: effective config, summary/windows/per-AS CSVs,
/// retention scatter, workload hash, optional trace/debug exports. Returns
/// the directory path used.
std::string write_run_dir(const RunResult& result, const std::string& dir,
                          std::span<const RequestEvent> trace);

} // namespace icnsim
