#include "icnsim/config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace icnsim {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    return s.substr(b, e - b + 1);
}

struct KeyValues {
    std::map<std::string, std::string> kv;
    std::vector<std::string> consumed;

    bool take(const std::string& key, std::string& out) {
        auto it = kv.find(key);
        if (it == kv.end())
            return false;
        out = it->second;
        consumed.push_back(key);
        kv.erase(it);
        return true;
    }
};

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
    if (std::is_unsigned_v<T> && value.find('-') != std::string::npos)
        throw ConfigError("bad value for " + key + ": '" + value + "' (must be non-negative)");
    std::istringstream ss(value);
    T v{};
    ss >> v;
    if (ss.fail() || !ss.eof())
        throw ConfigError("bad value for " + key + ": '" + value + "'");
    return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1")
        return true;
    if (value == "false" || value == "0")
        return false;
    throw ConfigError("bad value for " + key + ": '" + value + "' (expected true|false)");
}

std::vector<RouterId> parse_router_list(const std::string& key, const std::string& value) {
    std::vector<RouterId> out;
    std::string cur;
    auto flush = [&]() {
        if (cur.empty())
            return;
        out.push_back(parse_number<RouterId>(key, cur));
        cur.clear();
    };
    for (char c : value) {
        if (c == ',')
            flush();
        else if (!std::isspace(static_cast<unsigned char>(c)))
            cur.push_back(c);
    }
    flush();
    return out;
}

std::string router_list_to_string(const std::vector<RouterId>& v) {
    std::ostringstream out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out << (i ? "," : "") << v[i];
    return out.str();
}

// Shortest decimal representation that parses back to the same double.
std::string double_to_config(double v) {
    for (int precision = 1; precision <= 17; ++precision) {
        std::ostringstream out;
        out.precision(precision);
        out << v;
        std::istringstream in(out.str());
        double back;
        in >> back;
        if (back == v)
            return out.str();
    }
    return std::to_string(v);
}

} // namespace

RunConfig load_config_text(const std::string& text) {
    KeyValues kvs;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        if (!kvs.kv.emplace(key, value).second)
            throw ConfigError("duplicate config key '" + key + "'");
    }

    RunConfig c;
    std::string v;
    auto& t = c.topology;
    if (kvs.take("topology.source", v))
        t.source = v;
    if (kvs.take("topology.file", v))
        t.file = v;
    if (kvs.take("topology.as_links_file", v))
        t.as_links_file = v;
    if (kvs.take("topology.n_ases", v))
        t.n_ases = parse_number<std::uint32_t>("topology.n_ases", v);
    if (kvs.take("topology.routers_per_as", v))
        t.routers_per_as = parse_number<std::uint32_t>("topology.routers_per_as", v);
    if (kvs.take("topology.capacity", v))
        t.capacity = parse_number<std::uint32_t>("topology.capacity", v);
    if (kvs.take("topology.border_count", v))
        t.border_count = parse_number<std::uint32_t>("topology.border_count", v);
    if (kvs.take("topology.as_alpha", v))
        t.as_alpha = parse_number<double>("topology.as_alpha", v);
    if (kvs.take("topology.as_beta", v))
        t.as_beta = parse_number<double>("topology.as_beta", v);
    if (kvs.take("topology.router_alpha", v))
        t.router_alpha = parse_number<double>("topology.router_alpha", v);
    if (kvs.take("topology.router_beta", v))
        t.router_beta = parse_number<double>("topology.router_beta", v);
    if (kvs.take("topology.server_count", v))
        t.server_count = parse_number<std::uint32_t>("topology.server_count", v);
    if (kvs.take("topology.as_level_only", v))
        t.as_level_only = parse_bool("topology.as_level_only", v);
    if (kvs.take("topology.seed", v))
        t.seed = parse_number<std::uint64_t>("topology.seed", v);

    if (kvs.take("policy.kind", v))
        c.policy.kind = parse_policy_kind(v);
    if (kvs.take("policy.cache_all_ases", v))
        c.policy.cache_all_ases = parse_bool("policy.cache_all_ases", v);
    if (kvs.take("policy.probcache_target_times", v))
        c.policy.probcache_target_times =
            parse_number<double>("policy.probcache_target_times", v);
    if (kvs.take("policy.seed", v))
        c.policy.seed = parse_number<std::uint64_t>("policy.seed", v);

    auto& w = c.workload;
    std::vector<std::string> missing;
    if (kvs.take("workload.n_p", v))
        w.n_p = parse_number<std::uint32_t>("workload.n_p", v);
    else
        missing.push_back("workload.n_p");
    if (kvs.take("workload.n_requests", v))
        w.n_requests = parse_number<std::uint64_t>("workload.n_requests", v);
    else
        missing.push_back("workload.n_requests");
    if (kvs.take("workload.alpha", v))
        w.alpha = parse_number<double>("workload.alpha", v);
    if (kvs.take("workload.q", v))
        w.q = parse_number<double>("workload.q", v);
    if (kvs.take("workload.source_strategy", v))
        w.source_strategy = v;
    if (kvs.take("workload.source_subset", v))
        w.source_subset = parse_router_list("workload.source_subset", v);
    if (kvs.take("workload.seed", v))
        w.seed = parse_number<std::uint64_t>("workload.seed", v);
    if (kvs.take("workload.permutation_seed", v))
        w.permutation_seed = parse_number<std::uint64_t>("workload.permutation_seed", v);
    if (kvs.take("workload.trace_file", v))
        w.trace_file = v;

    if (kvs.take("interest.strategy", v))
        c.interest.strategy = v;
    if (kvs.take("interest.fraction", v))
        c.interest.fraction = parse_number<double>("interest.fraction", v);

    auto& r = c.run;
    if (kvs.take("run.designation", v))
        r.designation = v;
    if (kvs.take("run.ring_vnodes", v))
        r.ring_vnodes = parse_number<std::uint32_t>("run.ring_vnodes", v);
    if (kvs.take("run.window", v))
        r.window = parse_number<std::uint64_t>("run.window", v);
    if (kvs.take("run.check_uniqueness_every", v))
        r.check_uniqueness_every = parse_number<std::uint64_t>("run.check_uniqueness_every", v);
    if (kvs.take("run.debug_trace", v))
        r.debug_trace = parse_bool("run.debug_trace", v);
    if (kvs.take("run.export_trace", v))
        r.export_trace = parse_bool("run.export_trace", v);
    if (kvs.take("run.workers", v))
        r.workers = parse_number<std::uint32_t>("run.workers", v);

    if (kvs.take("output.dir", v))
        c.output.dir = v;

    if (!kvs.kv.empty()) {
        std::ostringstream msg;
        msg << "unknown config key";
        if (kvs.kv.size() > 1)
            msg << "s";
        for (const auto& [key, unused] : kvs.kv)
            msg << " '" << key << "'";
        throw ConfigError(msg.str());
    }
    if (!missing.empty()) {
        std::ostringstream msg;
        msg << "missing required config key";
        if (missing.size() > 1)
            msg << "s";
        for (const auto& key : missing)
            msg << " " << key;
        throw ConfigError(msg.str());
    }
    validate_config(c);
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_config_text(buf.str());
}

void validate_config(const RunConfig& c) {
    std::vector<std::string> errors;
    auto check = [&](bool ok, const std::string& msg) {
        if (!ok)
            errors.push_back(msg);
    };
    check(c.topology.source == "generate" || c.topology.source == "file",
          "topology.source must be generate|file");
    if (c.topology.source == "file") {
        check(!c.topology.file.empty(), "topology.file required when topology.source=file");
        if (!c.topology.file.empty())
            check(std::filesystem::exists(c.topology.file),
                  "topology.file does not exist: " + c.topology.file);
    } else {
        check(c.topology.n_ases >= 1, "topology.n_ases must be >= 1");
        check(c.topology.routers_per_as >= 1, "topology.routers_per_as must be >= 1");
        check(c.topology.border_count >= 1 &&
                  c.topology.border_count <= c.topology.routers_per_as,
              "topology.border_count must be in [1, routers_per_as]");
        check(c.topology.as_alpha > 0 && c.topology.as_alpha <= 1,
              "topology.as_alpha must be in (0,1]");
        check(c.topology.as_beta > 0 && c.topology.as_beta <= 1,
              "topology.as_beta must be in (0,1]");
        check(c.topology.router_alpha > 0 && c.topology.router_alpha <= 1,
              "topology.router_alpha must be in (0,1]");
        check(c.topology.router_beta > 0 && c.topology.router_beta <= 1,
              "topology.router_beta must be in (0,1]");
        check(c.topology.server_count >= 1, "topology.server_count must be >= 1");
        if (!c.topology.as_links_file.empty())
            check(std::filesystem::exists(c.topology.as_links_file),
                  "topology.as_links_file does not exist: " + c.topology.as_links_file);
    }
    check(c.workload.n_p >= 1, "workload.n_p must be >= 1");
    check(c.workload.alpha > 0, "workload.alpha must be > 0");
    check(c.workload.q >= 0, "workload.q must be >= 0");
    check(c.workload.source_strategy == "uniform" || c.workload.source_strategy == "subset",
          "workload.source_strategy must be uniform|subset");
    if (c.workload.source_strategy == "subset")
        check(!c.workload.source_subset.empty(),
              "workload.source_subset required when source_strategy=subset");
    if (!c.workload.trace_file.empty())
        check(std::filesystem::exists(c.workload.trace_file),
              "workload.trace_file does not exist: " + c.workload.trace_file);
    check(c.interest.strategy == "partition" || c.interest.strategy == "full" ||
              c.interest.strategy == "none",
          "interest.strategy must be partition|full|none");
    check(c.interest.fraction >= 0 && c.interest.fraction <= 1,
          "interest.fraction must be in [0,1]");
    check(c.run.designation == "partition" || c.run.designation == "ring",
          "run.designation must be partition|ring");
    check(c.run.ring_vnodes >= 1, "run.ring_vnodes must be >= 1");
    check(c.run.window >= 1, "run.window must be >= 1");
    check(c.run.workers >= 1, "run.workers must be >= 1");
    check(c.policy.probcache_target_times > 0, "policy.probcache_target_times must be > 0");
    check(!c.output.dir.empty(), "output.dir must not be empty");
    if (!errors.empty()) {
        std::ostringstream msg;
        msg << "invalid config:";
        for (const auto& e : errors)
            msg << "\n  " << e;
        throw ConfigError(msg.str());
    }
}

std::string emit_config(const RunConfig& c) {
    std::ostringstream out;
    out << "# icnsim effective config\n";
    out << "topology.source = " << c.topology.source << "\n";
    if (!c.topology.file.empty())
        out << "topology.file = " << c.topology.file << "\n";
    if (!c.topology.as_links_file.empty())
        out << "topology.as_links_file = " << c.topology.as_links_file << "\n";
    out << "topology.n_ases = " << c.topology.n_ases << "\n";
    out << "topology.routers_per_as = " << c.topology.routers_per_as << "\n";
    out << "topology.capacity = " << c.topology.capacity << "\n";
    out << "topology.border_count = " << c.topology.border_count << "\n";
    out << "topology.as_alpha = " << double_to_config(c.topology.as_alpha) << "\n";
    out << "topology.as_beta = " << double_to_config(c.topology.as_beta) << "\n";
    out << "topology.router_alpha = " << double_to_config(c.topology.router_alpha) << "\n";
    out << "topology.router_beta = " << double_to_config(c.topology.router_beta) << "\n";
    out << "topology.server_count = " << c.topology.server_count << "\n";
    out << "topology.as_level_only = " << (c.topology.as_level_only ? "true" : "false") << "\n";
    out << "topology.seed = " << c.topology.seed << "\n";
    out << "policy.kind = " << policy_kind_name(c.policy.kind) << "\n";
    out << "policy.cache_all_ases = " << (c.policy.cache_all_ases ? "true" : "false") << "\n";
    out << "policy.probcache_target_times = " << double_to_config(c.policy.probcache_target_times)
        << "\n";
    out << "policy.seed = " << c.policy.seed << "\n";
    out << "workload.n_p = " << c.workload.n_p << "\n";
    out << "workload.n_requests = " << c.workload.n_requests << "\n";
    out << "workload.alpha = " << double_to_config(c.workload.alpha) << "\n";
    out << "workload.q = " << double_to_config(c.workload.q) << "\n";
    out << "workload.source_strategy = " << c.workload.source_strategy << "\n";
    if (!c.workload.source_subset.empty())
        out << "workload.source_subset = " << router_list_to_string(c.workload.source_subset)
            << "\n";
    out << "workload.seed = " << c.workload.seed << "\n";
    out << "workload.permutation_seed = " << c.workload.permutation_seed << "\n";
    if (!c.workload.trace_file.empty())
        out << "workload.trace_file = " << c.workload.trace_file << "\n";
    out << "interest.strategy = " << c.interest.strategy << "\n";
    out << "interest.fraction = " << double_to_config(c.interest.fraction) << "\n";
    out << "run.designation = " << c.run.designation << "\n";
    out << "run.ring_vnodes = " << c.run.ring_vnodes << "\n";
    out << "run.window = " << c.run.window << "\n";
    out << "run.check_uniqueness_every = " << c.run.check_uniqueness_every << "\n";
    out << "run.debug_trace = " << (c.run.debug_trace ? "true" : "false") << "\n";
    out << "run.export_trace = " << (c.run.export_trace ? "true" : "false") << "\n";
    out << "run.workers = " << c.run.workers << "\n";
    out << "output.dir = " << c.output.dir << "\n";
    return out.str();
}

} // namespace icnsim
