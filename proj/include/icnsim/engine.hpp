#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "icnsim/cache.hpp"
#include "icnsim/metrics.hpp"
#include "icnsim/routing.hpp"
#include "icnsim/topology.hpp"
#include "icnsim/traffic.hpp"

namespace icnsim {

struct EngineConfig {
    PolicyConfig policy;
    DesignationMode designation = DesignationMode::Partition;
    std::uint32_t ring_vnodes = 64;
    std::uint64_t window_size = 1000;
    /// When > 0, verify per-AS designated uniqueness after every N requests
    /// (scene policies only).
    std::uint64_t check_uniqueness_every = 0;
    /// Record one debug line per request.
    bool record_trace = false;
    /// Size of the object-id space; must cover every requested id.
    ObjectId object_space = 1;
};

struct RequestOutcome {
    ObjectId object = 0;
    bool from_server = false;
    RouterId served_by = 0; // cache router, or the server's attachment router
    std::uint32_t router_hops = 0;
    std::uint32_t as_hops = 0; // AS-level edges traversed (revisits counted)
    std::uint32_t shortest_router_hops = 0;
    std::uint32_t evictions_caused = 0;
};

/// One simulation run: owns all mutable state (caches, counters, rng) and
/// executes the request/response lifecycle over an immutable topology and
/// registry. Strictly sequential; safe to move between threads, never shared.
class Engine {
public:
    Engine(const Topology& topo, InterestRegistry registry, EngineConfig config);

    RequestOutcome execute_request(const RequestEvent& event);

    /// Final (or interim) report: closes the current window, scans caches.
    MetricsReport report() const;

    const Topology& topology() const { return *topo_; }
    const InterestRegistry& registry() const { return registry_; }
    const EngineConfig& config() const { return config_; }
    const LruCache& cache_at(std::uint32_t router_idx) const { return caches_[router_idx]; }
    std::uint64_t requests_executed() const { return totals_.requests; }
    const std::vector<std::string>& trace() const { return trace_; }

    /// Throws ValidationError if any AS holds an object in two routers.
    void check_designated_uniqueness() const;

    /// Per-router CSV dump "router_id,as_id,object_id,recency_rank".
    std::string debug_cache_dump() const;

private:
    struct Traversal {
        std::vector<std::uint32_t> routers;   // dense indices, source first
        std::vector<bool> insert_point;       // aligned; designated-router stops
        std::vector<std::uint32_t> as_of;     // aligned; AS index per hop
        bool hit = false;
        std::uint32_t hit_pos = 0;            // index into routers when hit
    };

    Traversal forward_walk(std::uint32_t source_idx, ObjectId id,
                           const std::vector<std::uint32_t>& as_path,
                           std::uint32_t server_router_idx, std::uint32_t* as_edges);
    std::uint32_t reverse_walk(const Traversal& t, ObjectId id);
    void roll_window();

    const Topology* topo_;
    InterestRegistry registry_;
    EngineConfig config_;
    DesignatedMap designation_;
    RoutingContext routing_;
    std::vector<LruCache> caches_;  // per dense router index
    std::vector<bool> as_interested_cache_; // per AS index: registry has entry
    Rng policy_rng_;

    Counters totals_;
    Counters window_mark_; // totals at the start of the current window
    std::vector<Counters> windows_;
    std::vector<std::unordered_set<ObjectId>> as_seen_;
    std::unordered_set<ObjectId> requested_;
    std::vector<std::unordered_set<ObjectId>> router_inserted_;
    std::unordered_map<ObjectId, std::uint64_t> request_counts_;
    std::vector<std::string> trace_;
};

/// Drives a whole workload through a fresh engine and returns the report.
MetricsReport run_simulation(const Topology& topo, const InterestRegistry& registry,
                             const EngineConfig& config, WorkloadGenerator workload);
MetricsReport run_simulation_trace(const Topology& topo, const InterestRegistry& registry,
                                   const EngineConfig& config,
                                   std::span<const RequestEvent> trace);

/// Builds the experiment registry: every interested AS advertises a sector.
///  - "partition": disjoint contiguous sectors proportional to AS capacity,
///    tiling [0, object_space).
///  - "full": every interested AS advertises the whole space.
///  - "none": empty registry.
/// `fraction` selects how many ASes participate (by ascending AsId count,
/// deterministic), default all.
InterestRegistry build_registry(const Topology& topo, const std::string& strategy,
                                ObjectId object_space, double fraction = 1.0);

} // namespace icnsim
