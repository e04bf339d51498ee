#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "icnsim/graph.hpp"
#include "icnsim/types.hpp"

namespace icnsim {

/// One AS of the two-level topology. Router indices inside router_graph are
/// positions in `routers`; router ids themselves are network-wide unique.
struct AutonomousSystem {
    AsId id = 0;
    std::vector<RouterId> routers;        // sorted, globally unique ids
    std::vector<RouterId> border_routers; // subset of routers, sorted
    Graph router_graph;                   // over local positions
    std::vector<std::uint32_t> capacities; // per local router, objects

    std::uint64_t total_capacity() const;
    bool is_border(RouterId r) const;
};

/// AS-level link pinned to one border-router pair (a < b canonical).
struct AsLinkPin {
    AsId as_a = 0, as_b = 0;
    RouterId border_a = 0, border_b = 0;
};

/// Authoritative server for the inclusive object range [lo, hi].
struct ServerEntry {
    ObjectId lo = 0, hi = 0;
    AsId as_id = 0;
    RouterId router = 0;
};

/// Product of parsing an AS-link file: the AS-level skeleton.
struct AsLinkList {
    std::vector<AsId> as_ids;                   // sorted unique
    std::vector<std::pair<AsId, AsId>> links;   // canonical (a<b), sorted, deduplicated
};

/// Immutable two-level AS/router topology. Construct via build_hierarchy,
/// from_parts or from_snapshot; all run-time accessors are read-only.
class Topology {
public:
    static Topology from_parts(std::vector<AutonomousSystem> ases, std::vector<AsLinkPin> links,
                               std::vector<ServerEntry> servers);

    const std::vector<AutonomousSystem>& ases() const { return ases_; }
    const Graph& as_graph() const { return as_graph_; }
    const std::vector<AsLinkPin>& as_links() const { return as_links_; }
    const std::vector<ServerEntry>& servers() const { return servers_; }

    std::uint32_t as_index(AsId id) const;
    AsId as_id(std::uint32_t index) const { return ases_[index].id; }

    std::uint32_t router_count() const { return static_cast<std::uint32_t>(router_ids_.size()); }
    std::uint32_t router_index(RouterId id) const;
    RouterId router_id(std::uint32_t idx) const { return router_ids_[idx]; }
    std::uint32_t as_of(std::uint32_t router_idx) const { return router_as_[router_idx]; }
    std::uint32_t local_index(std::uint32_t router_idx) const { return router_local_[router_idx]; }
    std::uint32_t capacity_of(std::uint32_t router_idx) const;

    /// Border pin for the AS-level edge between two AS indices.
    const AsLinkPin& pin_between(std::uint32_t as_idx_a, std::uint32_t as_idx_b) const;

    const ServerEntry& server_for(ObjectId id) const;
    /// One past the highest object id covered by servers (the id space size).
    ObjectId object_space() const;
    std::uint64_t total_capacity() const;

    /// Router-level graph over dense router indices covering the whole
    /// network (intra-AS edges plus pinned inter-AS edges).
    const Graph& router_graph() const { return global_graph_; }

    /// Checks every structural invariant; throws ValidationError.
    void validate() const;

    /// Collapses each AS to a single caching node with the summed capacity.
    Topology collapse_to_as_level() const;

    std::string to_snapshot() const;
    static Topology from_snapshot(std::istream& in);
    static Topology from_snapshot_text(const std::string& text);

private:
    void index();

    std::vector<AutonomousSystem> ases_; // sorted by id
    std::vector<AsLinkPin> as_links_;    // canonical, sorted
    std::vector<ServerEntry> servers_;   // sorted by lo
    Graph as_graph_;
    Graph global_graph_;
    std::vector<RouterId> router_ids_;   // dense index -> id, sorted
    std::vector<std::uint32_t> router_as_;
    std::vector<std::uint32_t> router_local_;
    std::unordered_map<RouterId, std::uint32_t> router_index_;
    std::unordered_map<AsId, std::uint32_t> as_index_;
    std::unordered_map<std::uint64_t, std::uint32_t> pin_index_; // (a_idx<<32|b_idx) -> as_links_ pos
};

/// Parses an AS-link file: one "ASID ASID" edge per line, '#' comments.
/// Close enough to CAIDA skitter AS-links exports stripped to id pairs.
AsLinkList parse_as_links(std::istream& in);
AsLinkList parse_as_links_text(const std::string& text);
std::string as_links_to_text(const AsLinkList& list);

/// Waxman random graph: nodes on the unit square, edge probability
/// alpha*exp(-d/(beta*L)) with L the maximum pairwise distance. The result is
/// post-connected by joining components at their nearest coordinate pairs.
Graph generate_waxman(std::uint32_t n, double alpha, double beta, std::uint64_t seed);

/// Barabasi-Albert preferential attachment: seed clique of m nodes, then each
/// new node attaches m edges to distinct existing nodes with probability
/// proportional to degree.
Graph generate_ba(std::uint32_t n, std::uint32_t m, std::uint64_t seed);

struct HierarchyParams {
    std::uint32_t routers_per_as = 10;
    std::uint32_t capacity = 5;
    std::uint32_t border_count = 2;
    double router_alpha = 0.7;
    double router_beta = 0.7;
    std::uint32_t server_count = 1;
    ObjectId object_space = 1;
    std::uint64_t seed = 1;
};

/// Realizes a two-level topology over an AS-level skeleton: per-AS Waxman
/// router graphs, seeded border selection, AS links pinned to border pairs,
/// and servers splitting [0, object_space) into equal contiguous slices.
Topology build_hierarchy(const AsLinkList& as_links, const HierarchyParams& params);

} // namespace icnsim
