#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "icnsim/cache.hpp"
#include "icnsim/types.hpp"

namespace icnsim {

/// Full run configuration. Flat key=value text with section prefixes
/// (topology.*, policy.*, workload.*, interest.*, run.*, output.*); see
/// docs/formats.md. Every seed is explicit; no wall-clock defaults.
struct RunConfig {
    struct TopologySection {
        std::string source = "generate"; // generate | file
        std::string file;                // snapshot path when source=file
        std::string as_links_file;       // optional AS skeleton for generate
        std::uint32_t n_ases = 20;
        std::uint32_t routers_per_as = 10;
        std::uint32_t capacity = 5;
        std::uint32_t border_count = 2;
        double as_alpha = 0.4;
        double as_beta = 0.6;
        double router_alpha = 0.7;
        double router_beta = 0.7;
        std::uint32_t server_count = 1;
        bool as_level_only = false;
        std::uint64_t seed = 1;

        bool operator==(const TopologySection&) const = default;
    } topology;

    PolicyConfig policy;

    struct WorkloadSection {
        std::uint32_t n_p = 0;      // required
        std::uint64_t n_requests = 0; // required
        double alpha = 0.8;
        double q = 5.0;
        std::string source_strategy = "uniform"; // uniform | subset
        std::vector<RouterId> source_subset;
        std::uint64_t seed = 2;
        std::uint64_t permutation_seed = 3;
        std::string trace_file; // replay source when set

        bool operator==(const WorkloadSection&) const = default;
    } workload;

    struct InterestSection {
        std::string strategy = "partition"; // partition | full | none
        double fraction = 1.0;

        bool operator==(const InterestSection&) const = default;
    } interest;

    struct RunSection {
        std::string designation = "partition"; // partition | ring
        std::uint32_t ring_vnodes = 64;
        std::uint64_t window = 1000;
        std::uint64_t check_uniqueness_every = 0;
        bool debug_trace = false;
        bool export_trace = false;
        std::uint32_t workers = 1;

        bool operator==(const RunSection&) const = default;
    } run;

    struct OutputSection {
        std::string dir = "out";

        bool operator==(const OutputSection&) const = default;
    } output;

    bool operator==(const RunConfig&) const = default;
};

/// Parses and fully validates; unknown keys are rejected by name, missing
/// required keys are reported together. Referenced files must exist.
RunConfig load_config(const std::string& path);
RunConfig load_config_text(const std::string& text);

/// Canonical effective-config text: every key present, defaults materialized.
/// load_config_text(emit_config(c)) == c.
std::string emit_config(const RunConfig& config);

void validate_config(const RunConfig& config);

} // namespace icnsim
