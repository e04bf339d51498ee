#include "icnsim/routing.hpp"

#include <algorithm>
#include <sstream>

#include "icnsim/hashing.hpp"

namespace icnsim {

// ---------------------------------------------------------------------------
// Interest ranges

InterestRange aggregate_interest(std::vector<InterestRange> ranges) {
    if (ranges.empty())
        throw ValidationError("aggregate_interest: no ranges given");
    std::sort(ranges.begin(), ranges.end(),
              [](const InterestRange& a, const InterestRange& b) { return a.lo < b.lo; });
    InterestRange acc = ranges.front();
    for (std::size_t i = 1; i < ranges.size(); ++i) {
        const auto& r = ranges[i];
        // Overlapping or adjacent extends the sector; a gap is an error.
        if (r.lo > acc.hi && r.lo - acc.hi > 1)
            throw ValidationError("aggregate_interest: gap between " + std::to_string(acc.hi) +
                                  " and " + std::to_string(r.lo));
        acc.hi = std::max(acc.hi, r.hi);
    }
    return acc;
}

std::optional<InterestRange> InterestRegistry::get(AsId as) const {
    auto it = ranges_.find(as);
    if (it == ranges_.end())
        return std::nullopt;
    return it->second;
}

bool InterestRegistry::covers(AsId as, ObjectId id) const {
    auto it = ranges_.find(as);
    return it != ranges_.end() && it->second.covers(id);
}

std::vector<AsId> InterestRegistry::covering(ObjectId id) const {
    std::vector<AsId> out;
    for (const auto& [as, range] : ranges_)
        if (range.covers(id))
            out.push_back(as);
    return out;
}

std::string InterestRegistry::dump() const {
    std::ostringstream out;
    for (const auto& [as, range] : ranges_)
        out << as << " " << range.lo << " " << range.hi << "\n";
    return out.str();
}

InterestRegistry InterestRegistry::parse(std::istream& in) {
    InterestRegistry reg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ss(line);
        AsId as;
        ObjectId lo, hi;
        if (!(ss >> as))
            continue; // blank
        if (!(ss >> lo >> hi))
            throw ParseError("registry line " + std::to_string(line_no) +
                             ": expected 'ASID lo hi'");
        if (lo > hi)
            throw ValidationError("registry line " + std::to_string(line_no) +
                                  ": inverted range");
        reg.set(as, {lo, hi});
    }
    return reg;
}

InterestRegistry InterestRegistry::parse_text(const std::string& text) {
    std::istringstream ss(text);
    return parse(ss);
}

// ---------------------------------------------------------------------------
// Consistent-hash ring

HashRing::HashRing(std::vector<RouterId> routers, std::uint32_t vnodes)
    : routers_(std::move(routers)), vnodes_(vnodes) {
    if (routers_.empty())
        throw ValidationError("hash ring needs at least one router");
    if (vnodes_ < 1)
        throw ValidationError("hash ring needs at least one virtual node per router");
    std::sort(routers_.begin(), routers_.end());
    routers_.erase(std::unique(routers_.begin(), routers_.end()), routers_.end());
    points_.reserve(static_cast<std::size_t>(routers_.size()) * vnodes_);
    for (RouterId r : routers_)
        for (std::uint32_t v = 0; v < vnodes_; ++v)
            points_.emplace_back(vnode_point(r, v), r);
    std::sort(points_.begin(), points_.end());
}

RouterId HashRing::lookup(ObjectId id) const {
    std::uint64_t h = object_point(id);
    auto it = std::upper_bound(points_.begin(), points_.end(), h,
                               [](std::uint64_t v, const auto& p) { return v < p.first; });
    if (it == points_.end())
        it = points_.begin(); // wrap
    return it->second;
}

HashRing HashRing::without(RouterId router) const {
    if (!std::binary_search(routers_.begin(), routers_.end(), router))
        throw ValidationError("ring does not contain router " + std::to_string(router));
    if (routers_.size() < 2)
        throw ValidationError("cannot remove the last router from a ring");
    std::vector<RouterId> rest;
    rest.reserve(routers_.size() - 1);
    for (RouterId r : routers_)
        if (r != router)
            rest.push_back(r);
    return HashRing(std::move(rest), vnodes_);
}

// ---------------------------------------------------------------------------
// Designated-router resolution

DesignatedMap::DesignatedMap(const Topology& topo, DesignationMode mode, ObjectId object_space,
                             std::uint32_t ring_vnodes)
    : topo_(&topo), mode_(mode), space_(object_space) {
    if (space_ < 1)
        throw ValidationError("designated map needs a non-empty object space");
    entries_.resize(topo.ases().size());
    for (std::uint32_t ai = 0; ai < topo.ases().size(); ++ai) {
        const auto& as = topo.ases()[ai];
        AsEntry& e = entries_[ai];
        std::vector<RouterId> caching_ids;
        for (std::uint32_t li = 0; li < as.routers.size(); ++li) {
            e.all_router_idx.push_back(topo.router_index(as.routers[li]));
            if (as.capacities[li] > 0) {
                e.router_idx.push_back(topo.router_index(as.routers[li]));
                e.total_capacity += as.capacities[li];
                e.cum_capacity.push_back(e.total_capacity);
                caching_ids.push_back(as.routers[li]);
            }
        }
        if (mode_ == DesignationMode::Ring && !caching_ids.empty())
            e.ring.emplace(std::move(caching_ids), ring_vnodes);
    }
}

std::uint32_t DesignatedMap::designated(std::uint32_t as_idx, ObjectId id) const {
    const AsEntry& e = entries_[as_idx];
    if (e.router_idx.empty()) {
        // Pure-forwarder AS (all capacities zero): spread by router count so
        // the detour stays deterministic.
        const auto& all = e.all_router_idx;
        return all[static_cast<std::size_t>(
            (static_cast<std::uint64_t>(id) * all.size()) / space_ % all.size())];
    }
    if (mode_ == DesignationMode::Ring)
        return topo_->router_index(e.ring->lookup(id));
    // Capacity-proportional contiguous slice of [0, space): router i owns slot
    // positions [cum[i-1], cum[i]).
    std::uint64_t slot = (static_cast<std::uint64_t>(id) * e.total_capacity) / space_;
    auto it = std::upper_bound(e.cum_capacity.begin(), e.cum_capacity.end(), slot);
    std::size_t pos = static_cast<std::size_t>(it - e.cum_capacity.begin());
    if (pos >= e.router_idx.size())
        pos = e.router_idx.size() - 1;
    return e.router_idx[pos];
}

// ---------------------------------------------------------------------------
// Routing context and path selection

RoutingContext::RoutingContext(const Topology& topo)
    : topo_(&topo), as_dist_(&topo.as_graph()), global_dist_(&topo.router_graph()) {
    local_dist_.reserve(topo.ases().size());
    for (const auto& as : topo.ases())
        local_dist_.emplace_back(&as.router_graph);
}

std::uint32_t RoutingContext::as_distance(std::uint32_t from_idx, std::uint32_t to_idx) {
    return as_dist_.to(to_idx)[from_idx];
}

const std::vector<std::vector<std::uint32_t>>&
RoutingContext::all_shortest_as_paths(std::uint32_t src_idx, std::uint32_t dst_idx) {
    auto key = std::make_pair(src_idx, dst_idx);
    auto it = path_memo_.find(key);
    if (it != path_memo_.end())
        return it->second;
    auto paths = all_shortest_paths(topo_->as_graph(), src_idx, dst_idx);
    return path_memo_.emplace(key, std::move(paths)).first->second;
}

std::optional<std::uint32_t> nearest_interested_as(const InterestRegistry& registry,
                                                   RoutingContext& ctx, std::uint32_t from_idx,
                                                   ObjectId id) {
    const Topology& topo = ctx.topology();
    std::optional<std::uint32_t> best;
    std::uint32_t best_dist = kUnreachable;
    for (AsId as : registry.covering(id)) {
        std::uint32_t idx = topo.as_index(as);
        std::uint32_t d = ctx.as_distance(from_idx, idx);
        if (d == kUnreachable)
            continue;
        if (d < best_dist) { // ascending AsId iteration makes ties keep the lower id
            best_dist = d;
            best = idx;
        }
    }
    return best;
}

std::vector<std::uint32_t> select_as_path(Scenario scenario, ObjectId id,
                                          std::uint32_t requester_idx, std::uint32_t server_idx,
                                          RoutingContext& ctx, const InterestRegistry& registry) {
    const Topology& topo = ctx.topology();
    auto scene1 = [&]() {
        return shortest_path_with_dist(topo.as_graph(), requester_idx, server_idx,
                                       ctx.as_dist().to(server_idx));
    };
    switch (scenario) {
    case Scenario::Scene1:
        return scene1();
    case Scenario::Scene2: {
        // Cheap pre-check: does any covering AS exist at all?
        auto covering = registry.covering(id);
        if (covering.empty())
            return scene1();
        std::vector<bool> is_covering(topo.ases().size(), false);
        for (AsId as : covering)
            is_covering[topo.as_index(as)] = true;
        std::vector<std::uint32_t> chosen;
        for_each_shortest_path(topo.as_graph(), requester_idx, server_idx,
                               [&](const std::vector<std::uint32_t>& path) {
                                   for (std::uint32_t as : path) {
                                       if (is_covering[as]) {
                                           chosen = path;
                                           return true;
                                       }
                                   }
                                   return false;
                               });
        if (!chosen.empty())
            return chosen;
        return scene1();
    }
    case Scenario::Scene3: {
        auto via = nearest_interested_as(registry, ctx, requester_idx, id);
        if (!via)
            return scene1();
        auto leg1 = shortest_path_with_dist(topo.as_graph(), requester_idx, *via,
                                            ctx.as_dist().to(*via));
        auto leg2 = shortest_path_with_dist(topo.as_graph(), *via, server_idx,
                                            ctx.as_dist().to(server_idx));
        // Concatenate, dropping the duplicated junction. AS revisits along the
        // out-and-back are allowed; the engine counts every traversal.
        leg1.insert(leg1.end(), leg2.begin() + 1, leg2.end());
        return leg1;
    }
    }
    throw RoutingError("unknown scenario");
}

std::vector<std::uint32_t> intra_as_route(RoutingContext& ctx, std::uint32_t as_idx,
                                          std::uint32_t ingress_local, std::uint32_t via_local,
                                          std::uint32_t egress_local) {
    const Graph& g = ctx.topology().ases()[as_idx].router_graph;
    auto& dc = ctx.local_dist(as_idx);
    auto leg1 = shortest_path_with_dist(g, ingress_local, via_local, dc.to(via_local));
    auto leg2 = shortest_path_with_dist(g, via_local, egress_local, dc.to(egress_local));
    leg1.insert(leg1.end(), leg2.begin() + 1, leg2.end());
    return leg1;
}

} // namespace icnsim
