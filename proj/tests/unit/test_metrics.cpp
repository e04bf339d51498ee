#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>

#include "icnsim/metrics.hpp"
#include "icnsim/rng.hpp"

using namespace icnsim;

TEST_CASE("hit ratios") {
    Counters c;
    c.requests = 4;
    c.server_hits = 3;
    c.cache_hits = 1;
    CHECK(server_hit_ratio(c) == doctest::Approx(0.75));
    CHECK(cache_hit_ratio(c) == doctest::Approx(0.25));
    CHECK(server_hit_ratio(c) + cache_hit_ratio(c) == doctest::Approx(1.0));

    Counters none;
    CHECK_THROWS_AS(server_hit_ratio(none), MetricError);

    Counters all_server;
    all_server.requests = 10;
    all_server.server_hits = 10;
    CHECK(server_hit_ratio(all_server) == 1.0);
    CHECK(cache_hit_ratio(all_server) == 0.0);
}

TEST_CASE("retention ratio") {
    CHECK(retention_ratio(0, 5) == 0.0);               // every cache empty
    CHECK(retention_ratio(10000, 20000) == 0.5);       // ideal bound n_c / n_p
    CHECK(retention_ratio(1, 2) == 0.5);               // dedupe: {7} vs {7, 8}
    CHECK_THROWS_AS(retention_ratio(1, 0), MetricError);
}

TEST_CASE("jain index") {
    std::array<double, 4> equal{5, 5, 5, 5};
    CHECK(jain_index(equal) == doctest::Approx(1.0));
    std::array<double, 4> one{1, 0, 0, 0};
    CHECK(jain_index(one) == doctest::Approx(0.25));
    std::array<double, 2> two{3, 1};
    CHECK(jain_index(two) == doctest::Approx(0.8));
    std::array<double, 3> zero{0, 0, 0};
    CHECK_THROWS_AS(jain_index(zero), MetricError);

    // Bounds and scale invariance.
    Rng rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> v;
        std::uint32_t n = 1 + static_cast<std::uint32_t>(rng.below(20));
        for (std::uint32_t i = 0; i < n; ++i)
            v.push_back(static_cast<double>(rng.below(30)));
        v[rng.below(n)] += 1.0; // not all zero
        double j = jain_index(v);
        CHECK(j >= 1.0 / n - 1e-12);
        CHECK(j <= 1.0 + 1e-12);
        std::vector<double> scaled = v;
        for (double& x : scaled)
            x *= 7.5;
        CHECK(jain_index(scaled) == doctest::Approx(j));
    }
}

TEST_CASE("hopcount ratio and eviction rate") {
    Counters c;
    c.requests = 1;
    c.router_hops = 6;
    c.shortest_hops = 4;
    CHECK(hopcount_ratio(c) == doctest::Approx(1.5));

    Counters same;
    same.requests = 3;
    same.router_hops = 12;
    same.shortest_hops = 12;
    CHECK(hopcount_ratio(same) == doctest::Approx(1.0));

    Counters zero;
    CHECK_THROWS_AS(hopcount_ratio(zero), MetricError);

    Counters ev;
    ev.requests = 1000;
    ev.evictions = 5;
    CHECK(eviction_rate(ev) == doctest::Approx(5000.0));
    ev.evictions = 0;
    CHECK(eviction_rate(ev) == 0.0);
}

namespace {

// Access-cost example fixture: star tree with center router 3, leaf routers
// 1, 2, 4, clients at 1 and 2, and the server one link beyond router 4.
// Node 0 is the server.
constexpr std::uint32_t kServer = 0;
constexpr ObjectId kA = 0, kB = 1, kC = 2, kD = 3;

Graph example_graph() {
    Graph g(5);
    g.add_edge(1, 3);
    g.add_edge(2, 3);
    g.add_edge(3, 4);
    g.add_edge(4, kServer);
    return g;
}

std::map<ObjectId, DemandEntry> example_demand(double ra, double rb, double rc, double rd) {
    return {
        {kA, {ra, {1, 2}}}, // both clients request a
        {kB, {rb, {1}}},
        {kC, {rc, {2}}},
        {kD, {rd, {1, 2}}},
    };
}

// Non-cooperative steady placement: edges keep the most popular object, the
// shared router sees d at twice its rate, c stays at the server.
std::map<std::uint32_t, std::vector<ObjectId>> case1_placement() {
    return {{1, {kA}}, {2, {kA}}, {3, {kD}}, {4, {kB}}};
}

// Cooperative placement.
std::map<std::uint32_t, std::vector<ObjectId>> case2_placement() {
    return {{1, {kB}}, {2, {kC}}, {3, {kA}}, {4, {kD}}};
}

} // namespace

TEST_CASE("access cost reproduces both closed forms") {
    Graph g = example_graph();
    auto demand = example_demand(10, 4, 3, 2);
    // Case 1: 2*r_b + 3*r_c + 2*r_d = 8 + 9 + 4.
    CHECK(total_access_cost(g, case1_placement(), demand, kServer) == 21.0);
    // Case 2: 2*r_a + 4*r_d = 20 + 8.
    CHECK(total_access_cost(g, case2_placement(), demand, kServer) == 28.0);
}

TEST_CASE("closed forms hold symbolically for random positive rates") {
    Graph g = example_graph();
    Rng rng(55);
    for (int trial = 0; trial < 200; ++trial) {
        double ra = 1.0 + static_cast<double>(rng.below(100));
        double rb = 1.0 + static_cast<double>(rng.below(100));
        double rc = 1.0 + static_cast<double>(rng.below(100));
        double rd = 1.0 + static_cast<double>(rng.below(100));
        auto demand = example_demand(ra, rb, rc, rd);
        CHECK(total_access_cost(g, case1_placement(), demand, kServer) ==
              2 * rb + 3 * rc + 2 * rd);
        CHECK(total_access_cost(g, case2_placement(), demand, kServer) == 2 * ra + 4 * rd);
    }
}

TEST_CASE("preference condition flips exactly at the boundary") {
    Graph g = example_graph();
    // Case2 preferable iff r_b + 1.5*r_c > r_a + r_d. At r_b=4, r_c=2,
    // r_a=5, r_d=2 both sides equal 7 and the costs tie.
    auto at = [&](double ra, double rb, double rc, double rd) {
        auto demand = example_demand(ra, rb, rc, rd);
        return std::make_pair(total_access_cost(g, case1_placement(), demand, kServer),
                              total_access_cost(g, case2_placement(), demand, kServer));
    };
    auto [c1_eq, c2_eq] = at(5, 4, 2, 2);
    CHECK(c1_eq == c2_eq);
    auto [c1_hi, c2_hi] = at(5, 5, 2, 2); // lhs above: case 1 dearer
    CHECK(c1_hi > c2_hi);
    auto [c1_lo, c2_lo] = at(5, 3, 2, 2);
    CHECK(c1_lo < c2_lo);

    // The worked rates land on the non-cooperative side: 8.5 > 12 fails.
    auto [c1, c2] = at(10, 4, 3, 2);
    CHECK(c1 < c2);
}

TEST_CASE("brute force confirms the non-cooperative optimum") {
    Graph g = example_graph();
    auto demand = example_demand(10, 4, 3, 2);
    double case1 = total_access_cost(g, case1_placement(), demand, kServer);
    double best = std::numeric_limits<double>::infinity();
    // All single-object-per-router placements over {a,b,c,d}.
    for (ObjectId o1 = 0; o1 < 4; ++o1)
        for (ObjectId o2 = 0; o2 < 4; ++o2)
            for (ObjectId o3 = 0; o3 < 4; ++o3)
                for (ObjectId o4 = 0; o4 < 4; ++o4) {
                    std::map<std::uint32_t, std::vector<ObjectId>> placement{
                        {1, {o1}}, {2, {o2}}, {3, {o3}}, {4, {o4}}};
                    best = std::min(best, total_access_cost(g, placement, demand, kServer));
                }
    CHECK(case1 == best);
}

TEST_CASE("access cost error paths") {
    Graph g = example_graph();
    auto demand = example_demand(1, 1, 1, 1);
    Graph disconnected(5);
    disconnected.add_edge(1, 3);
    disconnected.add_edge(2, 3);
    disconnected.add_edge(3, 4); // server node 0 unreachable
    CHECK_THROWS_AS(total_access_cost(disconnected, {}, demand, kServer), MetricError);
    CHECK_THROWS_AS(total_access_cost(g, {}, demand, 99), MetricError);
}

TEST_CASE("median AS retention excludes silent ASes") {
    MetricsReport rep;
    rep.per_as.push_back({1, 10, 5, 0.5, 1.0});
    rep.per_as.push_back({2, 10, 9, 0.9, 1.0});
    rep.per_as.push_back({3, 0, 0, 0.0, 0.0}); // no traffic, excluded
    CHECK(median_as_retention(rep) == doctest::Approx(0.7));
    rep.per_as.push_back({4, 10, 7, 0.7, 1.0});
    CHECK(median_as_retention(rep) == doctest::Approx(0.7));

    MetricsReport empty;
    CHECK_THROWS_AS(median_as_retention(empty), MetricError);
}

TEST_CASE("counter window arithmetic") {
    Counters a;
    a.requests = 10;
    a.server_hits = 6;
    a.cache_hits = 4;
    a.router_hops = 80;
    Counters b = a;
    b.requests = 25;
    b.server_hits = 12;
    b.cache_hits = 13;
    b.router_hops = 150;
    Counters d = b - a;
    CHECK(d.requests == 15);
    CHECK(d.server_hits == 6);
    CHECK(d.cache_hits == 9);
    CHECK(d.router_hops == 70);
    Counters sum = a;
    sum += d;
    CHECK(sum.requests == b.requests);
    CHECK(sum.server_hits == b.server_hits);
}
