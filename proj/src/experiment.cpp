#include "icnsim/experiment.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace icnsim {

namespace fs = std::filesystem;

Topology build_topology(const RunConfig& c) {
    Topology topo = [&]() {
        if (c.topology.source == "file") {
            std::ifstream in(c.topology.file);
            if (!in)
                throw ConfigError("cannot read topology file '" + c.topology.file + "'");
            return Topology::from_snapshot(in);
        }
        AsLinkList skeleton;
        if (!c.topology.as_links_file.empty()) {
            std::ifstream in(c.topology.as_links_file);
            if (!in)
                throw ConfigError("cannot read AS links file '" + c.topology.as_links_file + "'");
            skeleton = parse_as_links(in);
        } else {
            Graph as_graph =
                generate_waxman(c.topology.n_ases, c.topology.as_alpha, c.topology.as_beta,
                                c.topology.seed);
            for (std::uint32_t i = 0; i < as_graph.size(); ++i)
                skeleton.as_ids.push_back(i);
            for (auto [a, b] : as_graph.edges())
                skeleton.links.emplace_back(a, b);
        }
        HierarchyParams p;
        p.routers_per_as = c.topology.routers_per_as;
        p.capacity = c.topology.capacity;
        p.border_count = c.topology.border_count;
        p.router_alpha = c.topology.router_alpha;
        p.router_beta = c.topology.router_beta;
        p.server_count = c.topology.server_count;
        p.object_space = std::max<ObjectId>(c.workload.n_p, 1);
        p.seed = c.topology.seed;
        return build_hierarchy(skeleton, p);
    }();
    topo.validate();
    if (topo.object_space() < c.workload.n_p)
        throw ConfigError("topology servers cover " + std::to_string(topo.object_space()) +
                          " objects but workload.n_p is " + std::to_string(c.workload.n_p));
    if (c.topology.as_level_only) {
        topo = topo.collapse_to_as_level();
        topo.validate();
    }
    return topo;
}

std::vector<RequestEvent> build_workload(const RunConfig& c, const Topology& topo) {
    if (!c.workload.trace_file.empty()) {
        std::ifstream in(c.workload.trace_file);
        if (!in)
            throw ConfigError("cannot read trace file '" + c.workload.trace_file + "'");
        auto trace = trace_from_csv(in);
        for (const auto& ev : trace)
            topo.router_index(ev.source_router); // throws on unknown source
        return trace;
    }
    std::vector<RouterId> sources;
    if (c.workload.source_strategy == "subset") {
        sources = c.workload.source_subset;
        for (RouterId r : sources)
            topo.router_index(r);
    } else {
        sources.reserve(topo.router_count());
        for (std::uint32_t i = 0; i < topo.router_count(); ++i)
            sources.push_back(topo.router_id(i));
    }
    ZmSampler sampler(c.workload.n_p, c.workload.alpha, c.workload.q, c.workload.seed,
                      c.workload.permutation_seed);
    WorkloadGenerator gen(c.workload.n_requests, std::move(sources), std::move(sampler),
                          c.workload.seed);
    return WorkloadGenerator::materialize(std::move(gen));
}

InterestRegistry registry_for(const RunConfig& c, const Topology& topo) {
    return build_registry(topo, c.interest.strategy, std::max<ObjectId>(c.workload.n_p, 1),
                          c.interest.fraction);
}

EngineConfig engine_config_for(const RunConfig& c) {
    EngineConfig ec;
    ec.policy = c.policy;
    ec.designation =
        c.run.designation == "ring" ? DesignationMode::Ring : DesignationMode::Partition;
    ec.ring_vnodes = c.run.ring_vnodes;
    ec.window_size = c.run.window;
    ec.check_uniqueness_every = c.run.check_uniqueness_every;
    ec.record_trace = c.run.debug_trace;
    ec.object_space = std::max<ObjectId>(c.workload.n_p, 1);
    return ec;
}

RunResult execute_run(const RunConfig& config, const Topology& topo,
                      std::span<const RequestEvent> trace) {
    RunResult res;
    res.config = config;
    res.policy_label = config.policy.label();
    try {
        res.workload_hash = trace_hash(trace);
        res.report = run_simulation_trace(topo, registry_for(config, topo),
                                          engine_config_for(config), trace);
    } catch (const std::exception& e) {
        res.error = e.what();
    }
    return res;
}

RunResult execute_run(const RunConfig& config) {
    RunResult res;
    res.config = config;
    res.policy_label = config.policy.label();
    try {
        Topology topo = build_topology(config);
        auto trace = build_workload(config, topo);
        return execute_run(config, topo, trace);
    } catch (const std::exception& e) {
        res.error = e.what();
        return res;
    }
}

SweepAxis parse_sweep_axis(const std::string& name) {
    if (name == "policy")
        return SweepAxis::Policy;
    if (name == "capacity")
        return SweepAxis::Capacity;
    if (name == "population")
        return SweepAxis::Population;
    if (name == "alpha_q")
        return SweepAxis::AlphaQ;
    throw ConfigError("unknown sweep axis '" + name +
                      "' (expected policy, capacity, population or alpha_q)");
}

RunConfig apply_axis_value(const RunConfig& base, SweepAxis axis, const std::string& value) {
    RunConfig c = base;
    switch (axis) {
    case SweepAxis::Policy: {
        // Accept SCENE2_F / SCENE2_T style names to pick the variant.
        std::string name = value;
        if (name.size() > 2 && (name.ends_with("_T") || name.ends_with("_t"))) {
            c.policy.cache_all_ases = true;
            name = name.substr(0, name.size() - 2);
        } else if (name.size() > 2 && (name.ends_with("_F") || name.ends_with("_f"))) {
            c.policy.cache_all_ases = false;
            name = name.substr(0, name.size() - 2);
        }
        c.policy.kind = parse_policy_kind(name);
        break;
    }
    case SweepAxis::Capacity: {
        std::istringstream ss(value);
        std::uint32_t cap;
        if (value.find('-') != std::string::npos || !(ss >> cap) || !ss.eof())
            throw ConfigError("bad capacity value '" + value + "'");
        c.topology.capacity = cap;
        break;
    }
    case SweepAxis::Population: {
        std::istringstream ss(value);
        std::uint32_t np;
        if (value.find('-') != std::string::npos || !(ss >> np) || !ss.eof())
            throw ConfigError("bad population value '" + value + "'");
        c.workload.n_p = np;
        break;
    }
    case SweepAxis::AlphaQ: {
        auto colon = value.find(':');
        if (colon == std::string::npos)
            throw ConfigError("alpha_q value must look like 'alpha:q', got '" + value + "'");
        std::istringstream sa(value.substr(0, colon)), sq(value.substr(colon + 1));
        double alpha, q;
        if (!(sa >> alpha) || !sa.eof() || !(sq >> q) || !sq.eof())
            throw ConfigError("bad alpha_q value '" + value + "'");
        c.workload.alpha = alpha;
        c.workload.q = q;
        break;
    }
    }
    validate_config(c);
    return c;
}

namespace {

void run_indexed(std::size_t count, std::uint32_t workers,
                 const std::function<void(std::size_t)>& work) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            work(i);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t next = 0;
    std::mutex mu;
    for (std::uint32_t w = 0; w < std::min<std::size_t>(workers, count); ++w) {
        pool.emplace_back([&]() {
            while (true) {
                std::size_t i;
                {
                    std::lock_guard<std::mutex> lock(mu);
                    if (next >= count)
                        return;
                    i = next++;
                }
                work(i);
            }
        });
    }
    for (auto& th : pool)
        th.join();
}

} // namespace

SweepOutcome run_sweep(const RunConfig& base, SweepAxis axis,
                       const std::vector<std::string>& values, std::uint32_t workers) {
    if (values.empty())
        throw ConfigError("sweep needs at least one axis value");
    std::vector<RunConfig> configs;
    configs.reserve(values.size());
    for (const auto& v : values)
        configs.push_back(apply_axis_value(base, axis, v));

    SweepOutcome out;
    out.results.resize(configs.size());

    // Policy sweeps compare policies on one shared workload over one topology;
    // the other axes change the world per run.
    if (axis == SweepAxis::Policy) {
        Topology topo = build_topology(base);
        auto trace = build_workload(base, topo);
        run_indexed(configs.size(), workers,
                    [&](std::size_t i) { out.results[i] = execute_run(configs[i], topo, trace); });
    } else {
        run_indexed(configs.size(), workers,
                    [&](std::size_t i) { out.results[i] = execute_run(configs[i]); });
    }
    for (const auto& r : out.results)
        out.all_ok = out.all_ok && r.ok();
    out.summary = summary_table(out.results);
    out.windows = windows_table(out.results);
    return out;
}

namespace {

std::string u64s(std::uint64_t v) { return std::to_string(v); }

std::string safe_ratio(const Counters& c, double (*fn)(const Counters&)) {
    try {
        return format_double(fn(c));
    } catch (const MetricError&) {
        return "nan";
    }
}

} // namespace

Table summary_table(std::span<const RunResult> results) {
    Table t;
    t.columns = {"run_id",        "policy",          "n_ases",
                 "routers_per_as", "capacity",        "n_p",
                 "n_requests",     "alpha",           "q",
                 "interest_strategy", "interest_fraction", "designation",
                 "topology_seed",  "workload_seed",   "permutation_seed",
                 "policy_seed",    "window",          "workload_hash",
                 "requests",       "server_hits",     "cache_hits",
                 "server_hit_ratio", "cache_hit_ratio", "network_d_p",
                 "network_d_q",    "network_retention", "ideal_retention",
                 "median_as_retention", "network_jain", "hopcount_ratio",
                 "avg_as_hops",    "evictions",       "eviction_rate",
                 "router_hops",    "shortest_hops",   "status"};
    for (std::size_t i = 0; i < results.size(); ++i) {
        const RunResult& r = results[i];
        const RunConfig& c = r.config;
        const MetricsReport& rep = r.report;
        std::string median = "nan";
        try {
            median = format_double(median_as_retention(rep));
        } catch (const MetricError&) {
        }
        std::string network_ret = "nan";
        if (rep.network_d_p > 0)
            network_ret = format_double(retention_ratio(rep.network_d_q, rep.network_d_p));
        double ideal = c.workload.n_p > 0 ? static_cast<double>(rep.total_cache_slots) /
                                                static_cast<double>(c.workload.n_p)
                                          : 0.0;
        t.append_row({u64s(i),
                      r.policy_label,
                      u64s(c.topology.n_ases),
                      u64s(c.topology.routers_per_as),
                      u64s(c.topology.capacity),
                      u64s(c.workload.n_p),
                      u64s(c.workload.n_requests),
                      format_double(c.workload.alpha),
                      format_double(c.workload.q),
                      c.interest.strategy,
                      format_double(c.interest.fraction),
                      c.run.designation,
                      u64s(c.topology.seed),
                      u64s(c.workload.seed),
                      u64s(c.workload.permutation_seed),
                      u64s(c.policy.seed),
                      u64s(c.run.window),
                      u64s(r.workload_hash),
                      u64s(rep.totals.requests),
                      u64s(rep.totals.server_hits),
                      u64s(rep.totals.cache_hits),
                      safe_ratio(rep.totals, server_hit_ratio),
                      safe_ratio(rep.totals, cache_hit_ratio),
                      u64s(rep.network_d_p),
                      u64s(rep.network_d_q),
                      network_ret,
                      format_double(std::min(1.0, ideal)),
                      median,
                      format_double(rep.network_jain),
                      safe_ratio(rep.totals, hopcount_ratio),
                      safe_ratio(rep.totals, avg_as_hops),
                      u64s(rep.totals.evictions),
                      safe_ratio(rep.totals, eviction_rate),
                      u64s(rep.totals.router_hops),
                      u64s(rep.totals.shortest_hops),
                      r.ok() ? "ok" : "error: " + r.error});
    }
    return t;
}

Table windows_table(std::span<const RunResult> results) {
    Table t;
    t.columns = {"run_id",        "policy",         "window_index",   "window_end",
                 "requests",      "server_hits",    "cache_hits",     "server_hit_ratio",
                 "cache_hit_ratio", "hopcount_ratio", "avg_as_hops",  "evictions",
                 "eviction_rate"};
    for (std::size_t i = 0; i < results.size(); ++i) {
        const RunResult& r = results[i];
        std::uint64_t end = 0;
        for (std::size_t w = 0; w < r.report.windows.size(); ++w) {
            const Counters& c = r.report.windows[w];
            end += c.requests;
            t.append_row({u64s(i), r.policy_label, u64s(w), u64s(end), u64s(c.requests),
                          u64s(c.server_hits), u64s(c.cache_hits),
                          safe_ratio(c, server_hit_ratio), safe_ratio(c, cache_hit_ratio),
                          safe_ratio(c, hopcount_ratio), safe_ratio(c, avg_as_hops),
                          u64s(c.evictions), safe_ratio(c, eviction_rate)});
        }
    }
    return t;
}

Table per_as_table(std::span<const RunResult> results) {
    Table t;
    t.columns = {"run_id", "policy", "as_id", "d_p", "d_q", "retention", "jain"};
    for (std::size_t i = 0; i < results.size(); ++i) {
        for (const auto& as : results[i].report.per_as)
            t.append_row({u64s(i), results[i].policy_label, u64s(as.as_id), u64s(as.d_p),
                          u64s(as.d_q), format_double(as.retention), format_double(as.jain)});
    }
    return t;
}

Table scatter_table(const RunResult& result) {
    Table t;
    t.columns = {"rank", "requests", "in_cache"};
    for (const auto& pt : result.report.scatter)
        t.append_row({u64s(pt.rank), u64s(pt.requests), pt.in_cache ? "1" : "0"});
    return t;
}

namespace {
const std::map<std::string, std::vector<std::string>>& figure_registry() {
    static const std::map<std::string, std::vector<std::string>> reg = {
        {"fig4", {"rank", "requests", "in_cache"}},
        {"fig5", {"policy", "median_as_retention"}},
        {"fig6", {"n_p", "policy", "network_retention", "ideal_retention"}},
        {"fig7", {"policy", "server_hit_ratio"}},
        {"fig8", {"rank", "frequency", "alpha", "q"}},
        {"fig9", {"window_end", "policy", "server_hit_ratio"}},
        {"fig10", {"window_end", "policy", "cache_hit_ratio"}},
        {"fig11", {"window_end", "policy", "hopcount_ratio"}},
        {"fig12", {"window_end", "policy", "avg_as_hops"}},
        {"fig15", {"policy", "eviction_rate"}},
        {"fig16", {"capacity", "policy", "server_hit_ratio"}},
    };
    return reg;
}
} // namespace

std::vector<std::string> figure_keys() {
    std::vector<std::string> keys;
    for (const auto& [k, cols] : figure_registry())
        keys.push_back(k);
    return keys;
}

const std::vector<std::string>& figure_columns(const std::string& key) {
    auto it = figure_registry().find(key);
    if (it == figure_registry().end()) {
        std::ostringstream msg;
        msg << "unknown figure key '" << key << "'; known keys:";
        for (const auto& k : figure_keys())
            msg << " " << k;
        throw ConfigError(msg.str());
    }
    return it->second;
}

std::string emit_plot_data(const Table& table, const std::string& key,
                           const std::string& out_dir) {
    const auto& cols = figure_columns(key);
    std::vector<std::string> missing;
    for (const auto& c : cols)
        if (!table.has_column(c))
            missing.push_back(c);
    if (!missing.empty()) {
        std::ostringstream msg;
        msg << "figure " << key << " needs missing column";
        if (missing.size() > 1)
            msg << "s";
        for (const auto& c : missing)
            msg << " " << c;
        throw ConfigError(msg.str());
    }
    fs::create_directories(out_dir);
    fs::path path = fs::path(out_dir) / (key + ".csv");
    std::ofstream out(path, std::ios::binary);
    out << table.select(cols).to_csv();
    return path.string();
}

std::string write_run_dir(const RunResult& result, const std::string& dir,
                          std::span<const RequestEvent> trace) {
    fs::create_directories(dir);
    auto write_file = [&](const std::string& name, const std::string& content) {
        std::ofstream out(fs::path(dir) / name, std::ios::binary);
        out << content;
    };
    write_file("effective.config", emit_config(result.config));
    std::vector<RunResult> one{result};
    write_file("summary.csv", summary_table(one).to_csv());
    write_file("windows.csv", windows_table(one).to_csv());
    write_file("per_as.csv", per_as_table(one).to_csv());
    write_file("retention_scatter.csv", scatter_table(result).to_csv());
    write_file("workload.hash", std::to_string(result.workload_hash) + "\n");
    if (result.config.run.export_trace)
        write_file("trace.csv", trace_to_csv(trace));
    return dir;
}

} // namespace icnsim
