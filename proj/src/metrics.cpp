#include "icnsim/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace icnsim {

Counters& Counters::operator+=(const Counters& o) {
    requests += o.requests;
    server_hits += o.server_hits;
    cache_hits += o.cache_hits;
    router_hops += o.router_hops;
    shortest_hops += o.shortest_hops;
    as_hops += o.as_hops;
    evictions += o.evictions;
    insertions += o.insertions;
    lookups += o.lookups;
    return *this;
}

Counters Counters::operator-(const Counters& o) const {
    Counters r;
    r.requests = requests - o.requests;
    r.server_hits = server_hits - o.server_hits;
    r.cache_hits = cache_hits - o.cache_hits;
    r.router_hops = router_hops - o.router_hops;
    r.shortest_hops = shortest_hops - o.shortest_hops;
    r.as_hops = as_hops - o.as_hops;
    r.evictions = evictions - o.evictions;
    r.insertions = insertions - o.insertions;
    r.lookups = lookups - o.lookups;
    return r;
}

double server_hit_ratio(const Counters& c) {
    if (c.requests == 0)
        throw MetricError("server_hit_ratio undefined for zero requests");
    return static_cast<double>(c.server_hits) / static_cast<double>(c.requests);
}

double cache_hit_ratio(const Counters& c) { return 1.0 - server_hit_ratio(c); }

double retention_ratio(std::uint64_t d_q, std::uint64_t d_p) {
    if (d_p == 0)
        throw MetricError("retention_ratio undefined for empty observed set");
    return static_cast<double>(d_q) / static_cast<double>(d_p);
}

double hopcount_ratio(const Counters& c) {
    if (c.shortest_hops == 0)
        throw MetricError("hopcount_ratio undefined without accumulated shortest hops");
    return static_cast<double>(c.router_hops) / static_cast<double>(c.shortest_hops);
}

double eviction_rate(const Counters& c) {
    if (c.requests == 0)
        throw MetricError("eviction_rate undefined for zero requests");
    return 1e6 * static_cast<double>(c.evictions) / static_cast<double>(c.requests);
}

double avg_as_hops(const Counters& c) {
    if (c.requests == 0)
        throw MetricError("avg_as_hops undefined for zero requests");
    return static_cast<double>(c.as_hops) / static_cast<double>(c.requests);
}

double jain_index(std::span<const double> values) {
    if (values.empty())
        throw MetricError("jain_index needs at least one value");
    double sum = 0.0, sq = 0.0;
    for (double v : values) {
        if (v < 0.0)
            throw MetricError("jain_index values must be non-negative");
        sum += v;
        sq += v * v;
    }
    if (sq == 0.0)
        throw MetricError("jain_index undefined for all-zero values");
    return (sum * sum) / (static_cast<double>(values.size()) * sq);
}

double jain_index_u64(std::span<const std::uint64_t> values) {
    std::vector<double> v(values.begin(), values.end());
    return jain_index(v);
}

double median_as_retention(const MetricsReport& report) {
    std::vector<double> vals;
    for (const auto& as : report.per_as)
        if (as.d_p > 0)
            vals.push_back(as.retention);
    if (vals.empty())
        throw MetricError("median_as_retention: no AS observed traffic");
    std::sort(vals.begin(), vals.end());
    std::size_t n = vals.size();
    return n % 2 == 1 ? vals[n / 2] : 0.5 * (vals[n / 2 - 1] + vals[n / 2]);
}

double total_access_cost(const Graph& g,
                         const std::map<std::uint32_t, std::vector<ObjectId>>& placement,
                         const std::map<ObjectId, DemandEntry>& demand, std::uint32_t server_node) {
    if (server_node >= g.size())
        throw MetricError("server node not in graph");
    // Distance fields from every replica-bearing node and the server.
    std::map<std::uint32_t, std::vector<std::uint32_t>> dist;
    auto dist_from = [&](std::uint32_t node) -> const std::vector<std::uint32_t>& {
        auto it = dist.find(node);
        if (it == dist.end())
            it = dist.emplace(node, dijkstra_distances(g, node)).first;
        return it->second;
    };
    double cost = 0.0;
    for (const auto& [object, entry] : demand) {
        std::vector<std::uint32_t> holders;
        for (const auto& [node, objs] : placement)
            if (std::find(objs.begin(), objs.end(), object) != objs.end())
                holders.push_back(node);
        // Nearest cached copy; uncached objects come from the server node.
        bool cached = !holders.empty();
        for (std::uint32_t client : entry.clients) {
            if (client >= g.size())
                throw MetricError("demand client node not in graph");
            std::uint32_t best = kUnreachable;
            if (cached) {
                for (std::uint32_t h : holders)
                    best = std::min(best, dist_from(h)[client]);
            } else {
                best = dist_from(server_node)[client];
            }
            if (best == kUnreachable)
                throw MetricError("object " + std::to_string(object) +
                                  " unreachable from client " + std::to_string(client));
            cost += entry.rate * static_cast<double>(best);
        }
    }
    return cost;
}

} // namespace icnsim
