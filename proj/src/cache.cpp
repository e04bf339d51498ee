#include "icnsim/cache.hpp"

#include <algorithm>

namespace icnsim {

bool LruCache::lookup(ObjectId id) {
    auto it = map_.find(id);
    if (it == map_.end()) {
        ++misses_;
        return false;
    }
    order_.splice(order_.begin(), order_, it->second);
    ++hits_;
    return true;
}

std::optional<ObjectId> LruCache::insert(ObjectId id) {
    if (capacity_ == 0)
        return std::nullopt;
    auto it = map_.find(id);
    if (it != map_.end()) {
        order_.splice(order_.begin(), order_, it->second);
        return std::nullopt;
    }
    std::optional<ObjectId> evicted;
    if (order_.size() >= capacity_) {
        ObjectId victim = order_.back();
        order_.pop_back();
        map_.erase(victim);
        ++evictions_;
        evicted = victim;
    }
    order_.push_front(id);
    map_[id] = order_.begin();
    ++insertions_;
    return evicted;
}

PolicyKind parse_policy_kind(const std::string& name) {
    std::string up = name;
    std::transform(up.begin(), up.end(), up.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (up == "CEE")
        return PolicyKind::Cee;
    if (up == "PROBCACHE")
        return PolicyKind::ProbCache;
    if (up == "SCENE1")
        return PolicyKind::Scene1;
    if (up == "SCENE2")
        return PolicyKind::Scene2;
    if (up == "SCENE3")
        return PolicyKind::Scene3;
    throw ConfigError("unknown policy '" + name +
                      "' (expected CEE, PROBCACHE, SCENE1, SCENE2 or SCENE3)");
}

std::string policy_kind_name(PolicyKind kind) {
    switch (kind) {
    case PolicyKind::Cee: return "CEE";
    case PolicyKind::ProbCache: return "PROBCACHE";
    case PolicyKind::Scene1: return "SCENE1";
    case PolicyKind::Scene2: return "SCENE2";
    case PolicyKind::Scene3: return "SCENE3";
    }
    return "?";
}

std::string PolicyConfig::label() const {
    std::string base = policy_kind_name(kind);
    if (kind == PolicyKind::Scene2 || kind == PolicyKind::Scene3)
        base += cache_all_ases ? "_T" : "_F";
    return base;
}

double probcache_probability(const PolicyConfig& policy, const CacheDecision& ctx) {
    if (ctx.path_length == 0 || ctx.avg_cache_size <= 0.0)
        return 0.0;
    double times_in = static_cast<double>(ctx.downstream_capacity_sum) /
                      (policy.probcache_target_times * ctx.avg_cache_size);
    double weight = static_cast<double>(ctx.path_position) / ctx.path_length;
    return std::clamp(times_in * weight, 0.0, 1.0);
}

bool should_cache(const PolicyConfig& policy, const CacheDecision& ctx, Rng& rng) {
    switch (policy.kind) {
    case PolicyKind::Cee:
        return true;
    case PolicyKind::ProbCache:
        return rng.uniform01() < probcache_probability(policy, ctx);
    case PolicyKind::Scene1:
        return ctx.router_is_designated;
    case PolicyKind::Scene2:
    case PolicyKind::Scene3:
        return ctx.router_is_designated && (policy.cache_all_ases || ctx.as_is_interested);
    }
    return false;
}

} // namespace icnsim
