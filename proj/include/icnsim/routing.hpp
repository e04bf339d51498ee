#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "icnsim/graph.hpp"
#include "icnsim/topology.hpp"
#include "icnsim/types.hpp"

namespace icnsim {

/// Contiguous advertised sector [lo, hi], inclusive.
struct InterestRange {
    ObjectId lo = 0, hi = 0;

    bool covers(ObjectId id) const { return id >= lo && id <= hi; }
    std::uint64_t width() const { return static_cast<std::uint64_t>(hi) - lo + 1; }
    bool operator==(const InterestRange&) const = default;
};

/// Smallest contiguous range covering all inputs. Inputs must be pairwise
/// overlapping or adjacent once sorted; otherwise throws ValidationError and
/// the caller keeps them separate.
InterestRange aggregate_interest(std::vector<InterestRange> ranges);

/// AS -> advertised sector. Read-only during a run; absence = not interested.
class InterestRegistry {
public:
    void set(AsId as, InterestRange range) { ranges_[as] = range; }
    std::optional<InterestRange> get(AsId as) const;
    bool covers(AsId as, ObjectId id) const;
    /// All interested ASes whose range covers id, ascending AsId.
    std::vector<AsId> covering(ObjectId id) const;
    bool empty() const { return ranges_.empty(); }
    std::size_t size() const { return ranges_.size(); }
    const std::map<AsId, InterestRange>& ranges() const { return ranges_; }

    /// Dump format: one "ASID lo hi" line per AS, ascending AsId.
    std::string dump() const;
    static InterestRegistry parse(std::istream& in);
    static InterestRegistry parse_text(const std::string& text);

private:
    std::map<AsId, InterestRange> ranges_;
};

/// Per-AS consistent-hash ring. Points are fmix64(fnv1a64(key)) as documented
/// in docs/hashing.md; every ObjectId maps to exactly one router.
class HashRing {
public:
    HashRing(std::vector<RouterId> routers, std::uint32_t vnodes = 64);

    RouterId lookup(ObjectId id) const;
    /// Ring without one router; only ids previously mapped to it move.
    HashRing without(RouterId router) const;
    const std::vector<RouterId>& routers() const { return routers_; }
    std::uint32_t vnodes() const { return vnodes_; }

private:
    std::vector<RouterId> routers_; // sorted
    std::uint32_t vnodes_;
    std::vector<std::pair<std::uint64_t, RouterId>> points_; // sorted by point
};

enum class Scenario { Scene1, Scene2, Scene3 };

/// How the designated router for an object is resolved inside an AS:
///  - Partition: capacity-proportional contiguous slicing of the id space
///    (perfect spread; what the experiments use).
///  - Ring: the consistent-hash ring above (fault-tolerant placement).
enum class DesignationMode { Partition, Ring };

/// Resolves the designated caching router of each AS for any object id.
/// Immutable after construction.
class DesignatedMap {
public:
    DesignatedMap(const Topology& topo, DesignationMode mode, ObjectId object_space,
                  std::uint32_t ring_vnodes = 64);

    /// Dense router index of the designated router of `as_idx` for `id`.
    std::uint32_t designated(std::uint32_t as_idx, ObjectId id) const;
    DesignationMode mode() const { return mode_; }

private:
    struct AsEntry {
        std::vector<std::uint32_t> router_idx;   // caching routers, dense indices
        std::vector<std::uint64_t> cum_capacity; // cumulative, parallel to router_idx
        std::uint64_t total_capacity = 0;
        std::optional<HashRing> ring;
        std::vector<std::uint32_t> all_router_idx; // fallback when nothing caches
    };
    const Topology* topo_;
    DesignationMode mode_;
    ObjectId space_;
    std::vector<AsEntry> entries_;
};

/// Routing context owned by one run: distance memos over the AS graph, the
/// per-AS router graphs and the global router graph. Behaves as a pure cache.
class RoutingContext {
public:
    explicit RoutingContext(const Topology& topo);

    const Topology& topology() const { return *topo_; }
    DistanceCache& as_dist() { return as_dist_; }
    DistanceCache& local_dist(std::uint32_t as_idx) { return local_dist_[as_idx]; }
    DistanceCache& global_dist() { return global_dist_; }

    std::uint32_t as_distance(std::uint32_t from_idx, std::uint32_t to_idx);

    /// All minimal AS paths between two AS indices, lexicographic by AsId
    /// sequence (complete set). Memoized.
    const std::vector<std::vector<std::uint32_t>>& all_shortest_as_paths(std::uint32_t src_idx,
                                                                         std::uint32_t dst_idx);

private:
    const Topology* topo_;
    DistanceCache as_dist_;
    std::vector<DistanceCache> local_dist_;
    DistanceCache global_dist_;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::vector<std::uint32_t>>>
        path_memo_;
};

/// Nearest interested AS whose range covers the object, minimizing AS-hop
/// distance from `from_idx`; ties break on the lower AsId. Empty when no
/// interested AS covers the id.
std::optional<std::uint32_t> nearest_interested_as(const InterestRegistry& registry,
                                                   RoutingContext& ctx, std::uint32_t from_idx,
                                                   ObjectId id);

/// AS path (dense indices) for one request under the given scenario.
/// SCENE1: first minimal path. SCENE2: first minimal path containing a
/// covering AS, else SCENE1's choice. SCENE3: via the nearest covering AS
/// (possibly non-minimal), else SCENE1's choice.
std::vector<std::uint32_t> select_as_path(Scenario scenario, ObjectId id,
                                          std::uint32_t requester_idx, std::uint32_t server_idx,
                                          RoutingContext& ctx, const InterestRegistry& registry);

/// Router path inside one AS: ingress -> via -> egress (local indices),
/// loop-erased only at the junction node.
std::vector<std::uint32_t> intra_as_route(RoutingContext& ctx, std::uint32_t as_idx,
                                          std::uint32_t ingress_local, std::uint32_t via_local,
                                          std::uint32_t egress_local);

} // namespace icnsim
