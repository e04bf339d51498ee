#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "icnsim/experiment.hpp"

namespace fs = std::filesystem;
using namespace icnsim;

namespace {

std::vector<std::string> split_values(const std::string& csv) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : csv) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty())
        out.push_back(cur);
    return out;
}

void emit_figures(const SweepOutcome& outcome, const std::vector<std::string>& figures,
                  const std::string& dir) {
    for (const auto& key : figures) {
        const auto& cols = figure_columns(key);
        // Pick whichever table carries the figure's columns.
        const Table* source = nullptr;
        bool in_summary = true, in_windows = true;
        for (const auto& c : cols) {
            in_summary = in_summary && outcome.summary.has_column(c);
            in_windows = in_windows && outcome.windows.has_column(c);
        }
        if (in_summary)
            source = &outcome.summary;
        else if (in_windows)
            source = &outcome.windows;
        if (source == nullptr) {
            emit_plot_data(outcome.summary, key, dir); // throws naming the columns
            continue;
        }
        std::string path = emit_plot_data(*source, key, dir);
        std::cout << "wrote " << path << "\n";
    }
}

int cmd_run(const std::string& config_path, const std::string& out_override,
            const std::vector<std::string>& figures) {
    RunConfig config = load_config(config_path);
    if (!out_override.empty())
        config.output.dir = out_override;
    Topology topo = build_topology(config);
    auto trace = build_workload(config, topo);
    RunResult result = execute_run(config, topo, trace);
    std::string dir = write_run_dir(result, config.output.dir, trace);
    if (!result.ok()) {
        std::cerr << "run failed: " << result.error << "\n";
        return 1;
    }
    if (!figures.empty()) {
        SweepOutcome one;
        one.results = {result};
        one.summary = summary_table(one.results);
        one.windows = windows_table(one.results);
        emit_figures(one, figures, dir);
    }
    const auto& rep = result.report;
    std::cout << "policy=" << result.policy_label << " requests=" << rep.totals.requests
              << " server_hit_ratio=" << format_double(server_hit_ratio(rep.totals))
              << " network_retention="
              << (rep.network_d_p > 0
                      ? format_double(retention_ratio(rep.network_d_q, rep.network_d_p))
                      : "nan")
              << " results=" << dir << "\n";
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& axis_name,
              const std::string& values_csv, std::uint32_t workers_override,
              const std::string& out_override, const std::vector<std::string>& figures) {
    RunConfig base = load_config(config_path);
    if (!out_override.empty())
        base.output.dir = out_override;
    SweepAxis axis = parse_sweep_axis(axis_name);
    auto values = split_values(values_csv);
    std::uint32_t workers = workers_override > 0 ? workers_override : base.run.workers;
    SweepOutcome outcome = run_sweep(base, axis, values, workers);

    fs::create_directories(base.output.dir);
    {
        std::ofstream out(fs::path(base.output.dir) / "summary.csv", std::ios::binary);
        out << outcome.summary.to_csv();
    }
    {
        std::ofstream out(fs::path(base.output.dir) / "windows.csv", std::ios::binary);
        out << outcome.windows.to_csv();
    }
    {
        std::ofstream out(fs::path(base.output.dir) / "per_as.csv", std::ios::binary);
        out << per_as_table(outcome.results).to_csv();
    }
    for (std::size_t i = 0; i < outcome.results.size(); ++i) {
        const auto& r = outcome.results[i];
        std::cout << "run " << i << " [" << r.policy_label << ", " << axis_name << "="
                  << values[i] << "] "
                  << (r.ok() ? "ok" : std::string("FAILED: ") + r.error) << "\n";
    }
    if (!figures.empty())
        emit_figures(outcome, figures, base.output.dir);
    std::cout << "results: " << base.output.dir << "\n";
    return outcome.all_ok ? 0 : 1;
}

int cmd_gen_topology(std::uint32_t n_ases, std::uint32_t routers_per_as, std::uint32_t capacity,
                     std::uint32_t border_count, double as_alpha, double as_beta,
                     double router_alpha, double router_beta, std::uint32_t servers,
                     std::uint32_t object_space, std::uint64_t seed,
                     const std::string& as_links_file, const std::string& out_path) {
    AsLinkList skeleton;
    if (!as_links_file.empty()) {
        std::ifstream in(as_links_file);
        if (!in) {
            std::cerr << "cannot read " << as_links_file << "\n";
            return 1;
        }
        skeleton = parse_as_links(in);
    } else {
        Graph as_graph = generate_waxman(n_ases, as_alpha, as_beta, seed);
        for (std::uint32_t i = 0; i < as_graph.size(); ++i)
            skeleton.as_ids.push_back(i);
        for (auto [a, b] : as_graph.edges())
            skeleton.links.emplace_back(a, b);
    }
    HierarchyParams p;
    p.routers_per_as = routers_per_as;
    p.capacity = capacity;
    p.border_count = border_count;
    p.router_alpha = router_alpha;
    p.router_beta = router_beta;
    p.server_count = servers;
    p.object_space = object_space;
    p.seed = seed;
    Topology topo = build_hierarchy(skeleton, p);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot write " << out_path << "\n";
        return 1;
    }
    out << topo.to_snapshot();
    std::cout << "wrote " << out_path << " (" << topo.ases().size() << " ASes, "
              << topo.router_count() << " routers, " << topo.total_capacity() << " slots)\n";
    return 0;
}

int cmd_replay(const std::string& trace_path, const std::string& config_path,
               const std::string& out_override) {
    RunConfig config = load_config(config_path);
    config.workload.trace_file = trace_path;
    validate_config(config);
    if (!out_override.empty())
        config.output.dir = out_override;
    Topology topo = build_topology(config);
    auto trace = build_workload(config, topo);
    RunResult result = execute_run(config, topo, trace);
    std::string dir = write_run_dir(result, config.output.dir, trace);
    if (!result.ok()) {
        std::cerr << "replay failed: " << result.error << "\n";
        return 1;
    }
    std::cout << "replayed " << trace.size() << " requests, results: " << dir << "\n";
    return 0;
}

int cmd_validate(const std::string& config_path) {
    RunConfig config = load_config(config_path);
    if (config.topology.source == "file") {
        Topology topo = build_topology(config);
        std::cout << "# topology ok: " << topo.ases().size() << " ASes, " << topo.router_count()
                  << " routers\n";
    }
    std::cout << emit_config(config);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Request-driven simulator of in-network caching for ICN"};
    app.require_subcommand(1);

    std::string config_path, out_dir, axis, values, trace_path, as_links_file;
    std::string figures_csv;
    std::uint32_t workers = 0;

    auto* run = app.add_subcommand("run", "Execute one configured run");
    run->add_option("config", config_path, "config file")->required();
    run->add_option("--out", out_dir, "override output.dir");
    run->add_option("--figures", figures_csv, "figure CSVs to emit (e.g. fig9,fig11)");

    auto* sweep = app.add_subcommand("sweep", "Run a config across an axis of values");
    sweep->add_option("config", config_path, "base config file")->required();
    sweep->add_option("--axis", axis, "policy|capacity|population|alpha_q")->required();
    sweep->add_option("--values", values, "comma-separated axis values")->required();
    sweep->add_option("--workers", workers, "parallel runs (default from config)");
    sweep->add_option("--out", out_dir, "override output.dir");
    sweep->add_option("--figures", figures_csv, "figure CSVs to emit");

    std::uint32_t g_ases = 20, g_routers = 10, g_capacity = 5, g_border = 2, g_servers = 1;
    std::uint32_t g_space = 1000;
    double g_as_alpha = 0.4, g_as_beta = 0.6, g_r_alpha = 0.7, g_r_beta = 0.7;
    std::uint64_t g_seed = 1;
    std::string g_out = "topology.txt";
    auto* gen = app.add_subcommand("gen-topology", "Generate a topology snapshot file");
    gen->add_option("--n-ases", g_ases, "AS count (ignored with --as-links)");
    gen->add_option("--routers-per-as", g_routers, "routers per AS");
    gen->add_option("--capacity", g_capacity, "cache capacity per router");
    gen->add_option("--border-count", g_border, "border routers per AS");
    gen->add_option("--as-alpha", g_as_alpha, "AS-level Waxman alpha");
    gen->add_option("--as-beta", g_as_beta, "AS-level Waxman beta");
    gen->add_option("--router-alpha", g_r_alpha, "router-level Waxman alpha");
    gen->add_option("--router-beta", g_r_beta, "router-level Waxman beta");
    gen->add_option("--servers", g_servers, "server count");
    gen->add_option("--object-space", g_space, "object id space covered by servers");
    gen->add_option("--seed", g_seed, "generator seed");
    gen->add_option("--as-links", as_links_file, "AS-link file instead of Waxman skeleton");
    gen->add_option("--out", g_out, "output snapshot path");

    auto* replay = app.add_subcommand("replay", "Re-run a config against an exported trace");
    replay->add_option("trace", trace_path, "workload trace CSV")->required();
    replay->add_option("config", config_path, "config file")->required();
    replay->add_option("--out", out_dir, "override output.dir");

    auto* validate = app.add_subcommand("validate", "Validate a config and print it resolved");
    validate->add_option("config", config_path, "config file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(config_path, out_dir, split_values(figures_csv));
        if (sweep->parsed())
            return cmd_sweep(config_path, axis, values, workers, out_dir,
                             split_values(figures_csv));
        if (gen->parsed())
            return cmd_gen_topology(g_ases, g_routers, g_capacity, g_border, g_as_alpha, g_as_beta,
                                    g_r_alpha, g_r_beta, g_servers, g_space, g_seed, as_links_file,
                                    g_out);
        if (replay->parsed())
            return cmd_replay(trace_path, config_path, out_dir);
        if (validate->parsed())
            return cmd_validate(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
