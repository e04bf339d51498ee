#pragma once

#include <cstdint>
#include <list>
#include <optional>
#include <string>
#include <unordered_map>

#include "icnsim/rng.hpp"
#include "icnsim/routing.hpp"
#include "icnsim/types.hpp"

namespace icnsim {

/// Fixed-capacity LRU store of object ids with hit/miss/insert/evict counters.
/// Capacity 0 is legal: the router is a pure forwarder and insert is a no-op.
class LruCache {
public:
    explicit LruCache(std::uint32_t capacity) : capacity_(capacity) {}

    /// Counted lookup; a hit refreshes recency.
    bool lookup(ObjectId id);

    /// Makes id resident and most-recently-used. Returns the evicted id when
    /// capacity pressure pushed one out; re-inserting a present id only
    /// refreshes recency.
    std::optional<ObjectId> insert(ObjectId id);

    /// Uncounted membership probe (metrics scans).
    bool contains(ObjectId id) const { return map_.count(id) > 0; }

    std::uint32_t size() const { return static_cast<std::uint32_t>(order_.size()); }
    std::uint32_t capacity() const { return capacity_; }
    std::uint64_t hits() const { return hits_; }
    std::uint64_t misses() const { return misses_; }
    std::uint64_t insertions() const { return insertions_; }
    std::uint64_t evictions() const { return evictions_; }
    /// Resident ids, most recently used first.
    const std::list<ObjectId>& entries() const { return order_; }

private:
    std::uint32_t capacity_;
    std::list<ObjectId> order_; // front = MRU
    std::unordered_map<ObjectId, std::list<ObjectId>::iterator> map_;
    std::uint64_t hits_ = 0, misses_ = 0, insertions_ = 0, evictions_ = 0;
};

enum class PolicyKind { Cee, ProbCache, Scene1, Scene2, Scene3 };

PolicyKind parse_policy_kind(const std::string& name);
std::string policy_kind_name(PolicyKind kind);

struct PolicyConfig {
    PolicyKind kind = PolicyKind::Scene1;
    /// T/F variant switch (meaningful for SCENE2/SCENE3): true = every on-path
    /// AS caches, false = only interested ASes cache.
    bool cache_all_ases = false;
    double probcache_target_times = 10.0;
    std::uint64_t seed = 4;

    bool is_scene() const {
        return kind == PolicyKind::Scene1 || kind == PolicyKind::Scene2 ||
               kind == PolicyKind::Scene3;
    }
    /// Routing scenario driving path selection; CEE and ProbCache are
    /// placement policies and ride SCENE1's default paths.
    Scenario scenario() const {
        switch (kind) {
        case PolicyKind::Scene2: return Scenario::Scene2;
        case PolicyKind::Scene3: return Scenario::Scene3;
        default: return Scenario::Scene1;
        }
    }
    /// Label with the F/T suffix for the variant policies.
    std::string label() const;

    bool operator==(const PolicyConfig&) const = default;
};

/// Per-router context for one reverse-path caching decision.
struct CacheDecision {
    bool as_is_interested = false;
    bool router_is_designated = false;
    /// 1-based position among the response path's caching routers, counted
    /// from the server side (ProbCache's x).
    std::uint32_t path_position = 0;
    /// Number of caching routers on the response path (ProbCache's c).
    std::uint32_t path_length = 0;
    /// Sum of capacities from this router to the consumer end, inclusive.
    std::uint64_t downstream_capacity_sum = 0;
    /// Mean capacity over the response path's caching routers.
    double avg_cache_size = 0.0;
};

/// Whether this policy caches the object at this router. Deterministic for
/// everything except ProbCache, which draws from rng.
bool should_cache(const PolicyConfig& policy, const CacheDecision& ctx, Rng& rng);

/// ProbCache admission probability, clamped to [0, 1].
double probcache_probability(const PolicyConfig& policy, const CacheDecision& ctx);

} // namespace icnsim
