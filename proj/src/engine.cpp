#include "icnsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace icnsim {

Engine::Engine(const Topology& topo, InterestRegistry registry, EngineConfig config)
    : topo_(&topo), registry_(std::move(registry)), config_(config),
      designation_(topo, config.designation, config.object_space, config.ring_vnodes),
      routing_(topo), policy_rng_(config.policy.seed) {
    caches_.reserve(topo.router_count());
    for (std::uint32_t i = 0; i < topo.router_count(); ++i)
        caches_.emplace_back(topo.capacity_of(i));
    as_interested_cache_.resize(topo.ases().size());
    for (std::uint32_t ai = 0; ai < topo.ases().size(); ++ai)
        as_interested_cache_[ai] = registry_.get(topo.as_id(ai)).has_value();
    as_seen_.resize(topo.ases().size());
    router_inserted_.resize(topo.router_count());
}

Engine::Traversal Engine::forward_walk(std::uint32_t source_idx, ObjectId id,
                                       const std::vector<std::uint32_t>& as_path,
                                       std::uint32_t server_router_idx, std::uint32_t* as_edges) {
    const Topology& topo = *topo_;
    const bool scene = config_.policy.is_scene();
    Traversal t;

    auto append = [&](std::uint32_t router_idx, std::uint32_t as_idx, bool insert_pt) {
        t.routers.push_back(router_idx);
        t.as_of.push_back(as_idx);
        t.insert_point.push_back(insert_pt);
    };
    auto lookup_here = [&](ObjectId oid) {
        ++totals_.lookups;
        if (caches_[t.routers.back()].lookup(oid)) {
            t.hit = true;
            t.hit_pos = static_cast<std::uint32_t>(t.routers.size() - 1);
            return true;
        }
        return false;
    };
    // Walks the local shortest path from the current tail to `to_local`,
    // appending every hop; optionally looks up at each appended router.
    auto walk_local = [&](std::uint32_t as_idx, std::uint32_t to_local, bool lookup_each) {
        std::uint32_t from_local = topo.local_index(t.routers.back());
        if (from_local == to_local)
            return false;
        const Graph& g = topo.ases()[as_idx].router_graph;
        auto path = shortest_path_with_dist(g, from_local, to_local,
                                            routing_.local_dist(as_idx).to(to_local));
        for (std::size_t i = 1; i < path.size(); ++i) {
            append(topo.router_index(topo.ases()[as_idx].routers[path[i]]), as_idx, false);
            if (lookup_each && lookup_here(id))
                return true;
        }
        return false;
    };

    append(source_idx, as_path.front(), false);
    as_seen_[as_path.front()].insert(id);
    if (!scene && lookup_here(id))
        return t;

    // Visit multiplicity per AS for this request (SCENE3 may revisit).
    std::unordered_map<std::uint32_t, std::uint8_t> visits;

    for (std::size_t i = 0; i < as_path.size(); ++i) {
        std::uint32_t as_idx = as_path[i];
        bool last = i + 1 == as_path.size();
        as_seen_[as_idx].insert(id);
        std::uint8_t& count = visits[as_idx];
        bool first_visit = count == 0;
        if (count < 255)
            ++count;

        std::uint32_t egress_idx;
        if (last) {
            egress_idx = server_router_idx;
        } else {
            const AsLinkPin& pin = topo.pin_between(as_idx, as_path[i + 1]);
            bool a_side = topo.as_index(pin.as_a) == as_idx;
            egress_idx = topo.router_index(a_side ? pin.border_a : pin.border_b);
        }

        if (scene && first_visit) {
            std::uint32_t via_idx = designation_.designated(as_idx, id);
            walk_local(as_idx, topo.local_index(via_idx), false);
            if (lookup_here(id))
                return t;
            t.insert_point.back() = true; // designated stop; reverse path may cache here
            walk_local(as_idx, topo.local_index(egress_idx), false);
        } else if (scene) {
            // Revisited AS passes the object straight through: no designated
            // detour, no cache operations.
            walk_local(as_idx, topo.local_index(egress_idx), false);
        } else {
            if (walk_local(as_idx, topo.local_index(egress_idx), true))
                return t;
        }

        if (!last) {
            const AsLinkPin& pin = topo.pin_between(as_idx, as_path[i + 1]);
            bool a_side = topo.as_index(pin.as_a) == as_idx;
            std::uint32_t remote_idx = topo.router_index(a_side ? pin.border_b : pin.border_a);
            append(remote_idx, as_path[i + 1], false);
            ++*as_edges;
            if (!scene && lookup_here(id))
                return t;
        }
    }
    return t; // miss everywhere; tail is the server's attachment router
}

std::uint32_t Engine::reverse_walk(const Traversal& t, ObjectId id) {
    const bool scene = config_.policy.is_scene();
    std::uint32_t evictions_caused = 0;
    std::size_t serving = t.routers.size() - 1;

    // ProbCache geometry over the response path's caching routers.
    std::vector<std::size_t> caching_pos; // positions into t.routers, response order
    std::uint64_t cap_total = 0;
    if (!scene) {
        for (std::size_t k = 0; k <= serving; ++k) {
            std::size_t j = serving - k;
            if (t.hit && j == serving)
                continue; // serving cache already holds the object
            std::uint32_t cap = caches_[t.routers[j]].capacity();
            if (cap > 0) {
                caching_pos.push_back(j);
                cap_total += cap;
            }
        }
    }
    double avg_cap = caching_pos.empty()
                         ? 0.0
                         : static_cast<double>(cap_total) / static_cast<double>(caching_pos.size());

    auto do_insert = [&](std::uint32_t router_idx) {
        LruCache& c = caches_[router_idx];
        if (c.capacity() == 0)
            return;
        if (!c.contains(id)) {
            ++totals_.insertions;
            router_inserted_[router_idx].insert(id);
        }
        if (auto evicted = c.insert(id)) {
            (void)evicted;
            ++totals_.evictions;
            ++evictions_caused;
        }
    };

    if (scene) {
        for (std::size_t k = 0; k <= serving; ++k) {
            std::size_t j = serving - k;
            if (!t.insert_point[j])
                continue;
            // The hit router is never an insert point (refresh-only AS).
            CacheDecision ctx;
            ctx.router_is_designated = true;
            ctx.as_is_interested =
                registry_.covers(topo_->as_id(t.as_of[j]), id);
            if (should_cache(config_.policy, ctx, policy_rng_))
                do_insert(t.routers[j]);
        }
    } else {
        std::uint64_t downstream = cap_total;
        std::uint32_t c_len = static_cast<std::uint32_t>(caching_pos.size());
        std::uint32_t x = 0;
        for (std::size_t j : caching_pos) {
            ++x; // 1-based from the server side along the response
            CacheDecision ctx;
            ctx.router_is_designated = false;
            ctx.as_is_interested = registry_.covers(topo_->as_id(t.as_of[j]), id);
            ctx.path_position = x;
            ctx.path_length = c_len;
            ctx.downstream_capacity_sum = downstream;
            ctx.avg_cache_size = avg_cap;
            if (should_cache(config_.policy, ctx, policy_rng_))
                do_insert(t.routers[j]);
            downstream -= caches_[t.routers[j]].capacity();
        }
    }
    return evictions_caused;
}

RequestOutcome Engine::execute_request(const RequestEvent& event) {
    const Topology& topo = *topo_;
    if (event.object >= config_.object_space)
        throw ValidationError("request object " + std::to_string(event.object) +
                              " outside the configured object space");
    std::uint32_t source_idx = topo.router_index(event.source_router);
    const ServerEntry& server = topo.server_for(event.object);
    std::uint32_t server_router_idx = topo.router_index(server.router);
    std::uint32_t requester_as = topo.as_of(source_idx);
    std::uint32_t server_as = topo.as_index(server.as_id);

    auto as_path = select_as_path(config_.policy.scenario(), event.object, requester_as, server_as,
                                  routing_, registry_);

    std::uint32_t as_edges = 0;
    Traversal t = forward_walk(source_idx, event.object, as_path, server_router_idx, &as_edges);
    // A hit truncates the AS-hop count to the edges actually crossed; count
    // them from the traversal rather than the planned path.
    if (t.hit) {
        as_edges = 0;
        for (std::size_t j = 1; j <= t.hit_pos; ++j)
            if (t.as_of[j] != t.as_of[j - 1])
                ++as_edges;
    }

    RequestOutcome out;
    out.object = event.object;
    out.from_server = !t.hit;
    out.served_by = topo.router_id(t.routers.back());
    out.router_hops = static_cast<std::uint32_t>(t.routers.size() - 1);
    out.as_hops = as_edges;
    out.shortest_router_hops = routing_.global_dist().to(server_router_idx)[source_idx];
    out.evictions_caused = reverse_walk(t, event.object);

    ++totals_.requests;
    totals_.router_hops += out.router_hops;
    totals_.shortest_hops += out.shortest_router_hops;
    totals_.as_hops += out.as_hops;
    if (t.hit)
        ++totals_.cache_hits;
    else
        ++totals_.server_hits;
    requested_.insert(event.object);
    ++request_counts_[event.object];

    if (config_.record_trace) {
        std::ostringstream line;
        line << event.seq << "," << event.object << "," << config_.policy.label() << ",";
        for (std::size_t i = 0; i < as_path.size(); ++i)
            line << (i ? "-" : "") << topo.as_id(as_path[i]);
        line << "," << (t.hit ? "cache:" + std::to_string(out.served_by) : "server") << ","
             << out.router_hops;
        trace_.push_back(line.str());
    }

    if (config_.window_size > 0 && totals_.requests % config_.window_size == 0)
        roll_window();
    if (config_.check_uniqueness_every > 0 && config_.policy.is_scene() &&
        totals_.requests % config_.check_uniqueness_every == 0)
        check_designated_uniqueness();
    return out;
}

void Engine::roll_window() {
    windows_.push_back(totals_ - window_mark_);
    window_mark_ = totals_;
}

void Engine::check_designated_uniqueness() const {
    for (const auto& as : topo_->ases()) {
        std::unordered_set<ObjectId> seen;
        std::size_t entries = 0;
        for (RouterId r : as.routers) {
            const LruCache& c = caches_[topo_->router_index(r)];
            entries += c.size();
            for (ObjectId id : c.entries())
                seen.insert(id);
        }
        if (seen.size() != entries)
            throw ValidationError("designated-router uniqueness violated in AS " +
                                  std::to_string(as.id) + ": " + std::to_string(entries) +
                                  " entries but " + std::to_string(seen.size()) + " distinct");
    }
}

std::string Engine::debug_cache_dump() const {
    std::ostringstream out;
    out << "router_id,as_id,object_id,recency_rank\n";
    for (std::uint32_t idx = 0; idx < topo_->router_count(); ++idx) {
        const LruCache& c = caches_[idx];
        std::uint32_t rank = 0;
        for (ObjectId id : c.entries())
            out << topo_->router_id(idx) << "," << topo_->as_id(topo_->as_of(idx)) << "," << id
                << "," << rank++ << "\n";
    }
    return out.str();
}

MetricsReport Engine::report() const {
    MetricsReport rep;
    rep.totals = totals_;
    rep.window_size = config_.window_size;
    rep.windows = windows_;
    if (totals_.requests > window_mark_.requests)
        rep.windows.push_back(totals_ - window_mark_);
    rep.total_cache_slots = topo_->total_capacity();

    std::unordered_set<ObjectId> network;
    for (std::uint32_t ai = 0; ai < topo_->ases().size(); ++ai) {
        const auto& as = topo_->ases()[ai];
        PerAsStats stats;
        stats.as_id = as.id;
        stats.d_p = as_seen_[ai].size();
        std::unordered_set<ObjectId> held;
        std::vector<std::uint64_t> usage;
        for (RouterId r : as.routers) {
            std::uint32_t idx = topo_->router_index(r);
            for (ObjectId id : caches_[idx].entries()) {
                held.insert(id);
                network.insert(id);
            }
            usage.push_back(router_inserted_[idx].size());
        }
        stats.d_q = held.size();
        stats.retention = stats.d_p > 0
                              ? retention_ratio(stats.d_q, stats.d_p)
                              : std::numeric_limits<double>::quiet_NaN();
        bool any = std::any_of(usage.begin(), usage.end(), [](std::uint64_t u) { return u > 0; });
        stats.jain = any ? jain_index_u64(usage) : std::numeric_limits<double>::quiet_NaN();
        rep.per_as.push_back(stats);
    }
    rep.network_d_p = requested_.size();
    rep.network_d_q = network.size();
    std::vector<std::uint64_t> all_usage;
    all_usage.reserve(router_inserted_.size());
    for (const auto& s : router_inserted_)
        all_usage.push_back(s.size());
    bool any = std::any_of(all_usage.begin(), all_usage.end(),
                           [](std::uint64_t u) { return u > 0; });
    rep.network_jain =
        any ? jain_index_u64(all_usage) : std::numeric_limits<double>::quiet_NaN();

    // Popularity-rank scatter: rank by observed request count, descending;
    // ties by object id for a stable order.
    std::vector<std::pair<std::uint64_t, ObjectId>> ranked;
    ranked.reserve(request_counts_.size());
    for (const auto& [id, n] : request_counts_)
        ranked.emplace_back(n, id);
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first)
            return a.first > b.first;
        return a.second < b.second;
    });
    rep.scatter.reserve(ranked.size());
    for (std::uint32_t i = 0; i < ranked.size(); ++i) {
        ScatterPoint pt;
        pt.rank = i + 1;
        pt.requests = ranked[i].first;
        pt.in_cache = network.count(ranked[i].second) > 0;
        rep.scatter.push_back(pt);
    }
    return rep;
}

MetricsReport run_simulation(const Topology& topo, const InterestRegistry& registry,
                             const EngineConfig& config, WorkloadGenerator workload) {
    Engine engine(topo, registry, config);
    while (auto ev = workload.next())
        engine.execute_request(*ev);
    return engine.report();
}

MetricsReport run_simulation_trace(const Topology& topo, const InterestRegistry& registry,
                                   const EngineConfig& config,
                                   std::span<const RequestEvent> trace) {
    Engine engine(topo, registry, config);
    for (const auto& ev : trace)
        engine.execute_request(ev);
    return engine.report();
}

InterestRegistry build_registry(const Topology& topo, const std::string& strategy,
                                ObjectId object_space, double fraction) {
    if (object_space < 1)
        throw ValidationError("registry needs a non-empty object space");
    if (!(fraction >= 0.0 && fraction <= 1.0))
        throw ValidationError("interest fraction must be in [0, 1]");
    InterestRegistry reg;
    if (strategy == "none")
        return reg;
    std::size_t n = topo.ases().size();
    std::size_t take = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n)));
    take = std::min(take, n);
    if (strategy == "full") {
        for (std::size_t i = 0; i < take; ++i)
            reg.set(topo.ases()[i].id, {0, object_space - 1});
        return reg;
    }
    if (strategy == "partition") {
        // Contiguous sectors proportional to each interested AS's capacity.
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < take; ++i)
            total += topo.ases()[i].total_capacity();
        if (total == 0)
            return reg;
        std::uint64_t cum = 0;
        for (std::size_t i = 0; i < take; ++i) {
            std::uint64_t lo = (static_cast<std::uint64_t>(object_space) * cum) / total;
            cum += topo.ases()[i].total_capacity();
            std::uint64_t hi = (static_cast<std::uint64_t>(object_space) * cum) / total;
            if (hi > lo)
                reg.set(topo.ases()[i].id,
                        {static_cast<ObjectId>(lo), static_cast<ObjectId>(hi - 1)});
        }
        return reg;
    }
    throw ConfigError("unknown interest strategy '" + strategy +
                      "' (expected partition, full or none)");
}

} // namespace icnsim
