#include "icnsim/graph.hpp"

#include <algorithm>
#include <queue>
#include <string>

namespace icnsim {

std::uint32_t Graph::add_node() {
    adj_.emplace_back();
    return static_cast<std::uint32_t>(adj_.size() - 1);
}

void Graph::add_edge(std::uint32_t a, std::uint32_t b) {
    if (a == b)
        throw ValidationError("self-loop rejected on node " + std::to_string(a));
    if (a >= size() || b >= size())
        throw ValidationError("edge endpoint out of range: " + std::to_string(a) + "-" +
                              std::to_string(b));
    auto insert_sorted = [](std::vector<std::uint32_t>& v, std::uint32_t x) {
        auto it = std::lower_bound(v.begin(), v.end(), x);
        if (it == v.end() || *it != x)
            v.insert(it, x);
    };
    insert_sorted(adj_[a], b);
    insert_sorted(adj_[b], a);
}

bool Graph::has_edge(std::uint32_t a, std::uint32_t b) const {
    if (a >= size() || b >= size())
        return false;
    return std::binary_search(adj_[a].begin(), adj_[a].end(), b);
}

std::size_t Graph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& nb : adj_)
        twice += nb.size();
    return twice / 2;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> Graph::edges() const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::uint32_t a = 0; a < size(); ++a)
        for (std::uint32_t b : adj_[a])
            if (a < b)
                out.emplace_back(a, b);
    return out;
}

std::vector<std::vector<std::uint32_t>> Graph::components() const {
    std::vector<std::vector<std::uint32_t>> comps;
    std::vector<bool> seen(size(), false);
    for (std::uint32_t s = 0; s < size(); ++s) {
        if (seen[s])
            continue;
        std::vector<std::uint32_t> comp;
        std::queue<std::uint32_t> q;
        q.push(s);
        seen[s] = true;
        while (!q.empty()) {
            std::uint32_t v = q.front();
            q.pop();
            comp.push_back(v);
            for (std::uint32_t w : adj_[v]) {
                if (!seen[w]) {
                    seen[w] = true;
                    q.push(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

bool Graph::connected() const {
    if (size() == 0)
        return true;
    return components().size() == 1;
}

std::vector<std::uint32_t> dijkstra_distances(const Graph& g, std::uint32_t src) {
    if (src >= g.size())
        throw RoutingError("source node " + std::to_string(src) + " not in graph");
    std::vector<std::uint32_t> dist(g.size(), kUnreachable);
    using Entry = std::pair<std::uint32_t, std::uint32_t>; // (dist, node)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    dist[src] = 0;
    heap.emplace(0, src);
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (d > dist[v])
            continue;
        for (std::uint32_t w : g.neighbors(v)) {
            std::uint32_t nd = d + 1;
            if (nd < dist[w]) {
                dist[w] = nd;
                heap.emplace(nd, w);
            }
        }
    }
    return dist;
}

std::vector<std::uint32_t> shortest_path_with_dist(const Graph& g, std::uint32_t src,
                                                   std::uint32_t dst,
                                                   const std::vector<std::uint32_t>& dist_to_dst) {
    if (src >= g.size() || dst >= g.size())
        throw RoutingError("path endpoint not in graph");
    if (dist_to_dst[src] == kUnreachable)
        throw RoutingError("no route from " + std::to_string(src) + " to " + std::to_string(dst));
    std::vector<std::uint32_t> path{src};
    std::uint32_t cur = src;
    while (cur != dst) {
        // Neighbors are sorted, so the first strictly-descending neighbor
        // yields the lexicographically smallest minimal path.
        std::uint32_t next = kUnreachable;
        for (std::uint32_t w : g.neighbors(cur)) {
            if (dist_to_dst[w] != kUnreachable && dist_to_dst[w] + 1 == dist_to_dst[cur]) {
                next = w;
                break;
            }
        }
        path.push_back(next);
        cur = next;
    }
    return path;
}

std::vector<std::uint32_t> shortest_path(const Graph& g, std::uint32_t src, std::uint32_t dst) {
    return shortest_path_with_dist(g, src, dst, dijkstra_distances(g, dst));
}

bool for_each_shortest_path(const Graph& g, std::uint32_t src, std::uint32_t dst,
                            const std::function<bool(const std::vector<std::uint32_t>&)>& visit) {
    std::vector<std::uint32_t> dist = dijkstra_distances(g, dst);
    if (src >= g.size() || dist[src] == kUnreachable)
        throw RoutingError("no route from " + std::to_string(src) + " to " + std::to_string(dst));
    std::vector<std::uint32_t> path{src};
    // Iterative DFS over the shortest-path DAG, descending distance by one per
    // step; sorted neighbor order makes the emission order lexicographic.
    std::vector<std::size_t> cursor{0};
    while (!path.empty()) {
        std::uint32_t cur = path.back();
        if (cur == dst) {
            if (visit(path))
                return true;
            path.pop_back();
            cursor.pop_back();
            continue;
        }
        const auto& nbs = g.neighbors(cur);
        bool advanced = false;
        for (std::size_t& i = cursor.back(); i < nbs.size();) {
            std::uint32_t w = nbs[i];
            ++i;
            if (dist[w] != kUnreachable && dist[w] + 1 == dist[cur]) {
                path.push_back(w);
                cursor.push_back(0);
                advanced = true;
                break;
            }
        }
        if (!advanced) {
            path.pop_back();
            cursor.pop_back();
        }
    }
    return false;
}

std::vector<std::vector<std::uint32_t>> all_shortest_paths(const Graph& g, std::uint32_t src,
                                                           std::uint32_t dst) {
    std::vector<std::vector<std::uint32_t>> out;
    for_each_shortest_path(g, src, dst, [&](const std::vector<std::uint32_t>& p) {
        out.push_back(p);
        return false;
    });
    return out;
}

const std::vector<std::uint32_t>& DistanceCache::to(std::uint32_t target) {
    auto it = rows_.find(target);
    if (it != rows_.end()) {
        order_.splice(order_.begin(), order_, it->second.second);
        return it->second.first;
    }
    if (rows_.size() >= max_rows_ && !order_.empty()) {
        rows_.erase(order_.back());
        order_.pop_back();
    }
    order_.push_front(target);
    auto [ins, ok] = rows_.emplace(target,
                                   std::make_pair(dijkstra_distances(*g_, target), order_.begin()));
    (void)ok;
    return ins->second.first;
}

} // namespace icnsim
