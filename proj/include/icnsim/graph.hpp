#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <list>
#include <unordered_map>
#include <vector>

#include "icnsim/types.hpp"

namespace icnsim {

constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

/// Undirected simple graph over dense node indices 0..n-1.
/// Neighbor lists are kept sorted so traversals are deterministic.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::uint32_t n) : adj_(n) {}

    std::uint32_t size() const { return static_cast<std::uint32_t>(adj_.size()); }
    std::uint32_t add_node();
    /// Inserts an undirected edge; duplicate edges are ignored, self-loops rejected.
    void add_edge(std::uint32_t a, std::uint32_t b);
    bool has_edge(std::uint32_t a, std::uint32_t b) const;
    const std::vector<std::uint32_t>& neighbors(std::uint32_t v) const { return adj_[v]; }
    std::uint32_t degree(std::uint32_t v) const { return static_cast<std::uint32_t>(adj_[v].size()); }
    std::size_t edge_count() const;
    /// Canonical (a<b) edge list, sorted.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const;
    bool connected() const;
    std::vector<std::vector<std::uint32_t>> components() const;

private:
    std::vector<std::vector<std::uint32_t>> adj_;
};

/// Single-source hop distances via Dijkstra on unit weights; ties settle on the
/// lowest node index. Unreachable nodes get kUnreachable.
std::vector<std::uint32_t> dijkstra_distances(const Graph& g, std::uint32_t src);

/// Minimal-hop path from src to dst, the lexicographically smallest one among
/// all minimal paths (deterministic tie-break). Throws RoutingError when dst
/// is unreachable. path(a, a) == [a].
std::vector<std::uint32_t> shortest_path(const Graph& g, std::uint32_t src, std::uint32_t dst);

/// Same, but reuses a precomputed distance field for dst (distances TO dst).
std::vector<std::uint32_t> shortest_path_with_dist(const Graph& g, std::uint32_t src,
                                                   std::uint32_t dst,
                                                   const std::vector<std::uint32_t>& dist_to_dst);

/// Complete set of minimal-hop paths, emitted in lexicographic order.
std::vector<std::vector<std::uint32_t>> all_shortest_paths(const Graph& g, std::uint32_t src,
                                                           std::uint32_t dst);

/// Visits minimal-hop paths in lexicographic order until the visitor returns
/// true; returns whether a visitor accepted a path. Enables early-exit path
/// selection without materializing the whole set.
bool for_each_shortest_path(const Graph& g, std::uint32_t src, std::uint32_t dst,
                            const std::function<bool(const std::vector<std::uint32_t>&)>& visit);

/// Memo of single-target distance fields over one graph, LRU-capped so
/// large-topology runs keep bounded memory. Lookups are pure; eviction only
/// discards cached rows.
class DistanceCache {
public:
    explicit DistanceCache(const Graph* g = nullptr, std::size_t max_rows = 4096)
        : g_(g), max_rows_(max_rows) {}

    void reset(const Graph* g) {
        g_ = g;
        rows_.clear();
        order_.clear();
    }

    const std::vector<std::uint32_t>& to(std::uint32_t target);

private:
    const Graph* g_ = nullptr;
    std::size_t max_rows_;
    std::unordered_map<std::uint32_t, std::pair<std::vector<std::uint32_t>, std::list<std::uint32_t>::iterator>> rows_;
    std::list<std::uint32_t> order_; // front = most recently used
};

} // namespace icnsim
