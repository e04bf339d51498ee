#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "icnsim/rng.hpp"
#include "icnsim/routing.hpp"

using namespace icnsim;

namespace {

// Line AS skeleton 0-1-...-(n-1), one router per AS, used where only AS-level
// routing matters.
Topology line_topology(std::uint32_t n, ObjectId space = 100) {
    std::vector<AutonomousSystem> ases;
    for (std::uint32_t i = 0; i < n; ++i) {
        AutonomousSystem as;
        as.id = i;
        as.routers = {i};
        as.border_routers = {i};
        as.router_graph = Graph(1);
        as.capacities = {5};
        ases.push_back(as);
    }
    std::vector<AsLinkPin> pins;
    for (std::uint32_t i = 0; i + 1 < n; ++i)
        pins.push_back({i, i + 1, i, i + 1});
    std::vector<ServerEntry> servers{{0, space - 1, n - 1, n - 1}};
    return Topology::from_parts(std::move(ases), std::move(pins), std::move(servers));
}

Topology custom_topology(std::uint32_t n, const std::vector<std::pair<AsId, AsId>>& links,
                         AsId server_as, ObjectId space = 100) {
    std::vector<AutonomousSystem> ases;
    for (std::uint32_t i = 0; i < n; ++i) {
        AutonomousSystem as;
        as.id = i;
        as.routers = {i};
        as.border_routers = {i};
        as.router_graph = Graph(1);
        as.capacities = {5};
        ases.push_back(as);
    }
    std::vector<AsLinkPin> pins;
    for (auto [a, b] : links)
        pins.push_back({a, b, a, b});
    std::vector<ServerEntry> servers{{0, space - 1, server_as, server_as}};
    return Topology::from_parts(std::move(ases), std::move(pins), std::move(servers));
}

} // namespace

TEST_CASE("aggregate_interest") {
    CHECK(aggregate_interest({{100, 200}, {200, 500}}) == InterestRange{100, 500});
    CHECK(aggregate_interest({{7, 9}}) == InterestRange{7, 9});
    CHECK(aggregate_interest({{10, 20}, {21, 30}}) == InterestRange{10, 30}); // adjacent
    CHECK_THROWS_AS(aggregate_interest({{0, 10}, {20, 30}}), ValidationError);
    CHECK_THROWS_AS(aggregate_interest({}), ValidationError);
}

TEST_CASE("aggregate_interest is order-insensitive") {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<InterestRange> ranges;
        ObjectId lo = static_cast<ObjectId>(rng.below(50));
        std::uint32_t k = 1 + static_cast<std::uint32_t>(rng.below(5));
        ObjectId cur = lo;
        for (std::uint32_t i = 0; i < k; ++i) {
            ObjectId hi = cur + static_cast<ObjectId>(rng.below(20));
            ranges.push_back({cur, hi});
            cur = hi + static_cast<ObjectId>(rng.below(2)); // overlap or adjacency
            if (cur < hi)
                cur = hi;
        }
        auto expected = aggregate_interest(ranges);
        for (int p = 0; p < 8; ++p) {
            rng.shuffle(ranges);
            CHECK(aggregate_interest(ranges) == expected);
        }
    }
}

TEST_CASE("registry dump and parse") {
    InterestRegistry reg;
    reg.set(3, {10, 19});
    reg.set(1, {0, 9});
    CHECK(reg.dump() == "1 0 9\n3 10 19\n");
    auto back = InterestRegistry::parse_text(reg.dump());
    CHECK(back.ranges() == reg.ranges());
    CHECK(back.covers(1, 5));
    CHECK_FALSE(back.covers(1, 15));
    CHECK(back.covering(12) == std::vector<AsId>{3});
    CHECK_THROWS_AS(InterestRegistry::parse_text("1 9 0\n"), ValidationError);
    CHECK_THROWS_AS(InterestRegistry::parse_text("1 2\n"), ParseError);
}

TEST_CASE("hash ring determinism and single-router case") {
    HashRing single({42});
    for (ObjectId id = 0; id < 50; ++id)
        CHECK(single.lookup(id) == 42);

    HashRing ring({0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
    for (ObjectId id = 0; id < 200; ++id)
        CHECK(ring.lookup(id) == ring.lookup(id));
}

TEST_CASE("ring load spread within 25 percent") {
    HashRing ring({0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, 64);
    std::map<RouterId, std::uint32_t> load;
    for (ObjectId id = 0; id < 10000; ++id)
        ++load[ring.lookup(id)];
    REQUIRE(load.size() == 10);
    for (const auto& [r, n] : load) {
        CHECK(n >= 750);
        CHECK(n <= 1250);
    }
}

TEST_CASE("ring removal relocates only the removed router's ids") {
    std::vector<RouterId> routers{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    HashRing ring(routers, 64);
    HashRing smaller = ring.without(3);
    std::uint32_t moved = 0, was_on_removed = 0;
    for (ObjectId id = 0; id < 10000; ++id) {
        RouterId before = ring.lookup(id);
        RouterId after = smaller.lookup(id);
        if (before == 3) {
            ++was_on_removed;
            CHECK(after != 3);
        } else {
            CHECK(after == before);
        }
        if (before != after)
            ++moved;
    }
    CHECK(moved == was_on_removed);
    CHECK(was_on_removed > 0);

    // Re-adding restores the original mapping.
    HashRing restored(smaller.routers(), 64);
    std::vector<RouterId> with3 = smaller.routers();
    with3.push_back(3);
    HashRing readded(with3, 64);
    for (ObjectId id = 0; id < 10000; ++id)
        CHECK(readded.lookup(id) == ring.lookup(id));

    HashRing two({1, 2}, 64);
    HashRing one = two.without(1);
    for (ObjectId id = 0; id < 100; ++id)
        CHECK(one.lookup(id) == 2);
    CHECK_THROWS_AS(one.without(2), ValidationError);
    CHECK_THROWS_AS(two.without(9), ValidationError);
}

TEST_CASE("partition designation spreads exactly by capacity") {
    AsLinkList skel;
    skel.as_ids = {0, 1};
    skel.links = {{0, 1}};
    HierarchyParams p;
    p.routers_per_as = 10;
    p.capacity = 5;
    p.border_count = 1;
    p.object_space = 50;
    p.seed = 2;
    Topology t = build_hierarchy(skel, p);
    DesignatedMap dmap(t, DesignationMode::Partition, 50);
    std::map<std::uint32_t, std::uint32_t> load;
    for (ObjectId id = 0; id < 50; ++id)
        ++load[dmap.designated(0, id)];
    CHECK(load.size() == 10);
    for (const auto& [router, n] : load)
        CHECK(n == 5); // capacity-perfect balance
    // Deterministic.
    for (ObjectId id = 0; id < 50; ++id)
        CHECK(dmap.designated(1, id) == dmap.designated(1, id));
}

TEST_CASE("nearest interested AS") {
    Topology t = line_topology(6);
    RoutingContext ctx(t);
    InterestRegistry reg;
    reg.set(2, {0, 49});
    reg.set(4, {0, 99});

    CHECK(nearest_interested_as(reg, ctx, 2, 10) == t.as_index(2)); // itself
    CHECK(nearest_interested_as(reg, ctx, 0, 10) == t.as_index(2)); // distance 2 vs 4
    CHECK(nearest_interested_as(reg, ctx, 0, 80) == t.as_index(4)); // only 4 covers
    CHECK_FALSE(nearest_interested_as(InterestRegistry{}, ctx, 0, 10).has_value());

    // Tie at equal distance goes to the lower AsId.
    InterestRegistry tie;
    tie.set(1, {0, 99});
    tie.set(3, {0, 99});
    CHECK(nearest_interested_as(tie, ctx, 2, 5) == t.as_index(1));
}

TEST_CASE("nearest interested AS equals exhaustive scan on random graphs") {
    Rng rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        std::uint32_t n = 4 + static_cast<std::uint32_t>(rng.below(12)); // up to 15 ASes
        // Random connected AS graph via a random tree plus extra edges.
        std::vector<std::pair<AsId, AsId>> links;
        for (std::uint32_t v = 1; v < n; ++v)
            links.emplace_back(static_cast<AsId>(rng.below(v)), v);
        for (int extra = 0; extra < 4; ++extra) {
            AsId a = static_cast<AsId>(rng.below(n));
            AsId b = static_cast<AsId>(rng.below(n));
            if (a != b)
                links.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(links.begin(), links.end());
        links.erase(std::unique(links.begin(), links.end()), links.end());
        Topology t = custom_topology(n, links, n - 1);
        RoutingContext ctx(t);

        InterestRegistry reg;
        for (std::uint32_t as = 0; as < n; ++as)
            if (rng.uniform01() < 0.5) {
                ObjectId lo = static_cast<ObjectId>(rng.below(80));
                reg.set(as, {lo, lo + static_cast<ObjectId>(rng.below(20))});
            }

        for (ObjectId id = 0; id < 100; id += 7) {
            std::uint32_t from = static_cast<std::uint32_t>(rng.below(n));
            auto got = nearest_interested_as(reg, ctx, from, id);
            // Oracle: scan every covering AS with fresh Dijkstra distances.
            std::optional<std::uint32_t> want;
            std::uint32_t best = kUnreachable;
            for (AsId as : reg.covering(id)) {
                std::uint32_t idx = t.as_index(as);
                std::uint32_t d = dijkstra_distances(t.as_graph(), from)[idx];
                if (d < best) {
                    best = d;
                    want = idx;
                }
            }
            CHECK(got == want);
        }
    }
}

TEST_CASE("scenario path selection on a diamond") {
    // 0 - 1 - 3, 0 - 2 - 3; requester AS 0, server AS 3.
    Topology t = custom_topology(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, 3);
    RoutingContext ctx(t);
    InterestRegistry empty;

    auto s1 = select_as_path(Scenario::Scene1, 5, 0, 3, ctx, empty);
    CHECK(s1 == std::vector<std::uint32_t>{0, 1, 3});

    // Only AS 2 interested: SCENE2 picks the path through it.
    InterestRegistry reg2;
    reg2.set(2, {0, 99});
    auto s2 = select_as_path(Scenario::Scene2, 5, 0, 3, ctx, reg2);
    CHECK(s2 == std::vector<std::uint32_t>{0, 2, 3});

    // Nothing covers the id: SCENE2 and SCENE3 fall back to SCENE1.
    InterestRegistry misses;
    misses.set(2, {50, 99});
    CHECK(select_as_path(Scenario::Scene2, 5, 0, 3, ctx, misses) == s1);
    CHECK(select_as_path(Scenario::Scene3, 5, 0, 3, ctx, misses) == s1);
}

TEST_CASE("scene3 detours through the nearest covering AS") {
    // Line 0-1-2 with AS 3 hanging off 1; server in AS 2.
    Topology t = custom_topology(4, {{0, 1}, {1, 2}, {1, 3}}, 2);
    RoutingContext ctx(t);
    InterestRegistry reg;
    reg.set(3, {0, 99});
    auto path = select_as_path(Scenario::Scene3, 7, 0, 2, ctx, reg);
    // Out-and-back through the interested AS, revisiting AS 1.
    CHECK(path == std::vector<std::uint32_t>{0, 1, 3, 1, 2});
    // Total AS hops equal dist(requester, via) + dist(via, server).
    std::uint32_t d1 = dijkstra_distances(t.as_graph(), 0)[3];
    std::uint32_t d2 = dijkstra_distances(t.as_graph(), 3)[2];
    CHECK(path.size() - 1 == d1 + d2);
}

TEST_CASE("scene3 two-leg length equals brute force on random graphs") {
    Rng rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        std::uint32_t n = 4 + static_cast<std::uint32_t>(rng.below(9));
        std::vector<std::pair<AsId, AsId>> links;
        for (std::uint32_t v = 1; v < n; ++v)
            links.emplace_back(static_cast<AsId>(rng.below(v)), v);
        std::sort(links.begin(), links.end());
        Topology t = custom_topology(n, links, n - 1);
        RoutingContext ctx(t);
        InterestRegistry reg;
        std::uint32_t interested = static_cast<std::uint32_t>(rng.below(n));
        reg.set(interested, {0, 99});
        std::uint32_t from = static_cast<std::uint32_t>(rng.below(n));
        auto path = select_as_path(Scenario::Scene3, 3, from, n - 1, ctx, reg);
        auto d = dijkstra_distances(t.as_graph(), interested);
        CHECK(path.size() - 1 == d[from] + d[n - 1]);
        CHECK(path.front() == from);
        CHECK(path.back() == n - 1);
        CHECK(std::find(path.begin(), path.end(), interested) != path.end());
    }
}

TEST_CASE("scenario invariants over random worlds") {
    Rng rng(47);
    for (int trial = 0; trial < 40; ++trial) {
        std::uint32_t n = 4 + static_cast<std::uint32_t>(rng.below(7));
        std::vector<std::pair<AsId, AsId>> links;
        for (std::uint32_t v = 1; v < n; ++v)
            links.emplace_back(static_cast<AsId>(rng.below(v)), v);
        for (int extra = 0; extra < 3; ++extra) {
            AsId a = static_cast<AsId>(rng.below(n)), b = static_cast<AsId>(rng.below(n));
            if (a != b)
                links.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(links.begin(), links.end());
        links.erase(std::unique(links.begin(), links.end()), links.end());
        std::uint32_t server = static_cast<std::uint32_t>(rng.below(n));
        Topology t = custom_topology(n, links, server);
        RoutingContext ctx(t);

        InterestRegistry reg;
        for (std::uint32_t as = 0; as < n; ++as)
            if (rng.uniform01() < 0.4)
                reg.set(as, {static_cast<ObjectId>(rng.below(50)), 99});

        for (std::uint32_t from = 0; from < n; ++from) {
            ObjectId id = static_cast<ObjectId>(rng.below(100));
            std::uint32_t min_len = dijkstra_distances(t.as_graph(), from)[server];
            for (Scenario sc : {Scenario::Scene1, Scenario::Scene2, Scenario::Scene3}) {
                auto path = select_as_path(sc, id, from, server, ctx, reg);
                CHECK(path.front() == from);
                CHECK(path.back() == server);
                if (sc == Scenario::Scene3)
                    CHECK(path.size() - 1 >= min_len);
                else
                    CHECK(path.size() - 1 == min_len);
                for (std::size_t i = 0; i + 1 < path.size(); ++i)
                    CHECK(t.as_graph().has_edge(path[i], path[i + 1]));
            }
            // SCENE2 equals SCENE1 under an empty registry.
            InterestRegistry none;
            CHECK(select_as_path(Scenario::Scene2, id, from, server, ctx, none) ==
                  select_as_path(Scenario::Scene1, id, from, server, ctx, none));
        }
    }
}

TEST_CASE("intra_as_route composes two legs") {
    AsLinkList skel;
    skel.as_ids = {0, 1};
    skel.links = {{0, 1}};
    HierarchyParams p;
    p.routers_per_as = 8;
    p.capacity = 2;
    p.border_count = 1;
    p.object_space = 10;
    p.seed = 13;
    Topology t = build_hierarchy(skel, p);
    RoutingContext ctx(t);

    const Graph& g = t.ases()[0].router_graph;
    auto ident = intra_as_route(ctx, 0, 3, 3, 3);
    CHECK(ident == std::vector<std::uint32_t>{3});

    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        std::uint32_t a = static_cast<std::uint32_t>(rng.below(8));
        std::uint32_t via = static_cast<std::uint32_t>(rng.below(8));
        std::uint32_t b = static_cast<std::uint32_t>(rng.below(8));
        auto path = intra_as_route(ctx, 0, a, via, b);
        auto da = dijkstra_distances(g, a);
        auto dv = dijkstra_distances(g, via);
        CHECK(path.size() - 1 == da[via] + dv[b]);
        CHECK(path.front() == a);
        CHECK(path.back() == b);
        CHECK(std::find(path.begin(), path.end(), via) != path.end());
    }
}
