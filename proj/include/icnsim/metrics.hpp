#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "icnsim/graph.hpp"
#include "icnsim/types.hpp"

namespace icnsim {

/// Accumulated run counters (W_t, W_s and friends).
struct Counters {
    std::uint64_t requests = 0;
    std::uint64_t server_hits = 0;
    std::uint64_t cache_hits = 0;
    std::uint64_t router_hops = 0;
    std::uint64_t shortest_hops = 0;
    std::uint64_t as_hops = 0;
    std::uint64_t evictions = 0;
    std::uint64_t insertions = 0;
    std::uint64_t lookups = 0;

    Counters& operator+=(const Counters& o);
    Counters operator-(const Counters& o) const;
};

struct PerAsStats {
    AsId as_id = 0;
    std::uint64_t d_p = 0; // distinct objects that traversed the AS
    std::uint64_t d_q = 0; // distinct objects resident in the AS's caches
    double retention = 0.0;
    double jain = 0.0; // NaN when no router of the AS ever inserted
};

/// Rank scatter row: rank by request count, times requested, resident at end.
struct ScatterPoint {
    std::uint32_t rank = 0;
    std::uint64_t requests = 0;
    bool in_cache = false;
};

struct MetricsReport {
    Counters totals;
    std::uint64_t window_size = 0;
    std::vector<Counters> windows; // per-window deltas, in order
    std::vector<PerAsStats> per_as; // ascending AsId
    std::uint64_t network_d_p = 0;
    std::uint64_t network_d_q = 0;
    double network_jain = 0.0;
    std::uint64_t total_cache_slots = 0;
    std::vector<ScatterPoint> scatter;
};

double server_hit_ratio(const Counters& c); // W_s / W_t
double cache_hit_ratio(const Counters& c);  // 1 - server_hit_ratio
double retention_ratio(std::uint64_t d_q, std::uint64_t d_p);
double hopcount_ratio(const Counters& c); // sum hops / sum shortest hops
double eviction_rate(const Counters& c);  // evictions per million requests
double avg_as_hops(const Counters& c);

/// Jain fairness index (sum x)^2 / (n * sum x^2) over utilization counts.
double jain_index(std::span<const double> values);
double jain_index_u64(std::span<const std::uint64_t> values);

/// Median of per-AS retention ratios, ASes without observed traffic excluded.
double median_as_retention(const MetricsReport& report);

// ---------------------------------------------------------------------------
// Access-cost model over a replica placement.

/// Demand for one object: request rate plus the client nodes issuing it.
struct DemandEntry {
    double rate = 0.0;
    std::vector<std::uint32_t> clients;
};

/// Total access cost of a placement on a unit-link-cost graph that includes
/// the server as a node: each (client, object) pair pays
/// rate x hop-distance to the nearest cached copy, falling back to the server
/// node when no cache holds the object. Throws MetricError when an object is
/// demanded but neither cached nor served.
double total_access_cost(const Graph& g,
                         const std::map<std::uint32_t, std::vector<ObjectId>>& placement,
                         const std::map<ObjectId, DemandEntry>& demand, std::uint32_t server_node);

} // namespace icnsim
