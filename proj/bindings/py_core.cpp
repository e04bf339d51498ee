#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "icnsim/experiment.hpp"

namespace py = pybind11;
using namespace icnsim;

namespace {

py::dict summary_dict(const RunResult& result) {
    py::dict d;
    d["policy"] = result.policy_label;
    d["ok"] = result.ok();
    d["error"] = result.error;
    d["workload_hash"] = result.workload_hash;
    const auto& t = result.report.totals;
    d["requests"] = t.requests;
    d["server_hits"] = t.server_hits;
    d["cache_hits"] = t.cache_hits;
    d["router_hops"] = t.router_hops;
    d["shortest_hops"] = t.shortest_hops;
    d["evictions"] = t.evictions;
    d["network_d_p"] = result.report.network_d_p;
    d["network_d_q"] = result.report.network_d_q;
    if (t.requests > 0) {
        d["server_hit_ratio"] = server_hit_ratio(t);
        d["cache_hit_ratio"] = cache_hit_ratio(t);
    }
    if (result.report.network_d_p > 0)
        d["network_retention"] =
            retention_ratio(result.report.network_d_q, result.report.network_d_p);
    try {
        d["median_as_retention"] = median_as_retention(result.report);
    } catch (const MetricError&) {
    }
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "In-network caching simulator core";

    py::register_exception<SimError>(m, "SimError");

    m.def("zm_pmf", &zm_pmf, py::arg("k"), py::arg("alpha"), py::arg("q"), py::arg("n_p"),
          "Zipf-Mandelbrot pmf over 1-based ranks");

    m.def(
        "sample_zm",
        [](std::uint32_t n_p, double alpha, double q, std::uint64_t n, std::uint64_t seed,
           std::uint64_t permutation_seed) {
            ZmSampler s(n_p, alpha, q, seed, permutation_seed);
            std::vector<ObjectId> out;
            out.reserve(n);
            for (std::uint64_t i = 0; i < n; ++i)
                out.push_back(s.sample());
            return out;
        },
        py::arg("n_p"), py::arg("alpha"), py::arg("q"), py::arg("n"), py::arg("seed") = 2,
        py::arg("permutation_seed") = 3, "Draw n object ids from a seeded sampler");

    m.def(
        "jain_index",
        [](const std::vector<double>& values) {
            return jain_index(std::span<const double>(values.data(), values.size()));
        },
        py::arg("values"));

    m.def(
        "aggregate_interest",
        [](const std::vector<std::pair<ObjectId, ObjectId>>& ranges) {
            std::vector<InterestRange> rs;
            rs.reserve(ranges.size());
            for (auto [lo, hi] : ranges)
                rs.push_back({lo, hi});
            InterestRange r = aggregate_interest(rs);
            return std::make_pair(r.lo, r.hi);
        },
        py::arg("ranges"), "Smallest contiguous range covering all inputs");

    py::class_<LruCache>(m, "LruCache")
        .def(py::init<std::uint32_t>(), py::arg("capacity"))
        .def("lookup", &LruCache::lookup, py::arg("id"))
        .def("insert", &LruCache::insert, py::arg("id"))
        .def("contains", &LruCache::contains, py::arg("id"))
        .def_property_readonly("size", &LruCache::size)
        .def_property_readonly("capacity", &LruCache::capacity)
        .def_property_readonly("hits", &LruCache::hits)
        .def_property_readonly("misses", &LruCache::misses)
        .def_property_readonly("evictions", &LruCache::evictions);

    py::class_<HashRing>(m, "HashRing")
        .def(py::init<std::vector<RouterId>, std::uint32_t>(), py::arg("routers"),
             py::arg("vnodes") = 64)
        .def("lookup", &HashRing::lookup, py::arg("object_id"))
        .def("without", &HashRing::without, py::arg("router"))
        .def_property_readonly("routers", &HashRing::routers);

    m.def(
        "generate_topology_snapshot",
        [](std::uint32_t n_ases, std::uint32_t routers_per_as, std::uint32_t capacity,
           std::uint32_t border_count, std::uint32_t servers, ObjectId object_space,
           std::uint64_t seed) {
            Graph as_graph = generate_waxman(n_ases, 0.4, 0.6, seed);
            AsLinkList skel;
            for (std::uint32_t i = 0; i < n_ases; ++i)
                skel.as_ids.push_back(i);
            for (auto [a, b] : as_graph.edges())
                skel.links.emplace_back(a, b);
            HierarchyParams p;
            p.routers_per_as = routers_per_as;
            p.capacity = capacity;
            p.border_count = border_count;
            p.server_count = servers;
            p.object_space = object_space;
            p.seed = seed;
            return build_hierarchy(skel, p).to_snapshot();
        },
        py::arg("n_ases"), py::arg("routers_per_as"), py::arg("capacity"),
        py::arg("border_count") = 2, py::arg("servers") = 1, py::arg("object_space") = 1000,
        py::arg("seed") = 1, "Generate a two-level topology and return its snapshot text");

    m.def(
        "validate_topology_snapshot",
        [](const std::string& text) {
            Topology::from_snapshot_text(text).validate();
            return true;
        },
        py::arg("text"));

    m.def(
        "total_access_cost",
        [](const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
           const std::map<std::uint32_t, std::vector<ObjectId>>& placement,
           const std::map<ObjectId, std::pair<double, std::vector<std::uint32_t>>>& demand,
           std::uint32_t server_node) {
            std::uint32_t n = server_node + 1;
            for (auto [a, b] : edges)
                n = std::max({n, a + 1, b + 1});
            Graph g(n);
            for (auto [a, b] : edges)
                g.add_edge(a, b);
            std::map<ObjectId, DemandEntry> dm;
            for (const auto& [obj, entry] : demand)
                dm[obj] = DemandEntry{entry.first, entry.second};
            return total_access_cost(g, placement, dm, server_node);
        },
        py::arg("edges"), py::arg("placement"), py::arg("demand"), py::arg("server_node"),
        "Total access cost of a placement on a unit-cost graph");

    m.def(
        "run_config_text",
        [](const std::string& text) {
            RunConfig config = load_config_text(text);
            return summary_dict(execute_run(config));
        },
        py::arg("config_text"), "Run one simulation from config text and return its summary");

    m.def(
        "run_config_file",
        [](const std::string& path, const std::string& out_dir) {
            RunConfig config = load_config(path);
            if (!out_dir.empty())
                config.output.dir = out_dir;
            Topology topo = build_topology(config);
            auto trace = build_workload(config, topo);
            RunResult result = execute_run(config, topo, trace);
            write_run_dir(result, config.output.dir, trace);
            return summary_dict(result);
        },
        py::arg("path"), py::arg("out_dir") = std::string(),
        "Run one simulation from a config file, writing the run directory");

    m.attr("__version__") = "0.1.0";
}
