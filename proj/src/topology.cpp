#include "icnsim/topology.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "icnsim/rng.hpp"

namespace icnsim {

namespace {

std::uint64_t pin_key(std::uint32_t a, std::uint32_t b) {
    if (a > b)
        std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok)
        out.push_back(tok);
    return out;
}

std::uint32_t parse_u32(const std::string& tok, const std::string& what, std::size_t line_no) {
    try {
        std::size_t pos = 0;
        unsigned long v = std::stoul(tok, &pos);
        if (pos != tok.size() || v > 0xffffffffUL)
            throw std::invalid_argument("range");
        return static_cast<std::uint32_t>(v);
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": bad " + what + " '" + tok + "'");
    }
}

} // namespace

std::uint64_t AutonomousSystem::total_capacity() const {
    std::uint64_t sum = 0;
    for (std::uint32_t c : capacities)
        sum += c;
    return sum;
}

bool AutonomousSystem::is_border(RouterId r) const {
    return std::binary_search(border_routers.begin(), border_routers.end(), r);
}

// ---------------------------------------------------------------------------
// AS-link parsing

AsLinkList parse_as_links(std::istream& in) {
    AsLinkList list;
    std::set<AsId> ids;
    std::set<std::pair<AsId, AsId>> links;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        auto toks = split_ws(line);
        if (toks.empty())
            continue;
        if (toks.size() != 2)
            throw ParseError("line " + std::to_string(line_no) + ": expected two AS ids, got " +
                             std::to_string(toks.size()) + " fields");
        AsId a = parse_u32(toks[0], "AS id", line_no);
        AsId b = parse_u32(toks[1], "AS id", line_no);
        if (a == b)
            throw ValidationError("line " + std::to_string(line_no) + ": self-loop on AS " +
                                  std::to_string(a));
        ids.insert(a);
        ids.insert(b);
        links.emplace(std::min(a, b), std::max(a, b));
    }
    list.as_ids.assign(ids.begin(), ids.end());
    list.links.assign(links.begin(), links.end());
    return list;
}

AsLinkList parse_as_links_text(const std::string& text) {
    std::istringstream ss(text);
    return parse_as_links(ss);
}

std::string as_links_to_text(const AsLinkList& list) {
    std::ostringstream out;
    for (const auto& [a, b] : list.links)
        out << a << " " << b << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Generators

Graph generate_waxman(std::uint32_t n, double alpha, double beta, std::uint64_t seed) {
    if (n < 1)
        throw ValidationError("waxman: n must be >= 1");
    if (!(alpha > 0.0 && alpha <= 1.0) || !(beta > 0.0 && beta <= 1.0))
        throw ValidationError("waxman: alpha and beta must be in (0, 1]");
    Rng rng(seed);
    std::vector<double> x(n), y(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        x[i] = rng.uniform01();
        y[i] = rng.uniform01();
    }
    auto dist = [&](std::uint32_t i, std::uint32_t j) {
        return std::hypot(x[i] - x[j], y[i] - y[j]);
    };
    double maxd = 0.0;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
            maxd = std::max(maxd, dist(i, j));
    Graph g(n);
    if (n == 1)
        return g;
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            double p = maxd > 0.0 ? alpha * std::exp(-dist(i, j) / (beta * maxd)) : alpha;
            if (rng.uniform01() < p)
                g.add_edge(i, j);
        }
    }
    // Join components with the minimal set of edges, nearest coordinate pair
    // first, so every generated graph is routable.
    auto comps = g.components();
    while (comps.size() > 1) {
        double best = std::numeric_limits<double>::infinity();
        std::pair<std::uint32_t, std::uint32_t> pick{0, 0};
        std::pair<std::size_t, std::size_t> merge{0, 0};
        for (std::size_t ca = 0; ca < comps.size(); ++ca) {
            for (std::size_t cb = ca + 1; cb < comps.size(); ++cb) {
                for (std::uint32_t u : comps[ca]) {
                    for (std::uint32_t v : comps[cb]) {
                        double d = dist(u, v);
                        if (d < best) {
                            best = d;
                            pick = {u, v};
                            merge = {ca, cb};
                        }
                    }
                }
            }
        }
        g.add_edge(pick.first, pick.second);
        auto& dst = comps[merge.first];
        auto& src = comps[merge.second];
        dst.insert(dst.end(), src.begin(), src.end());
        std::sort(dst.begin(), dst.end());
        comps.erase(comps.begin() + static_cast<std::ptrdiff_t>(merge.second));
    }
    return g;
}

Graph generate_ba(std::uint32_t n, std::uint32_t m, std::uint64_t seed) {
    if (m < 1 || n <= m)
        throw ValidationError("ba: need n > m >= 1");
    Rng rng(seed);
    Graph g(n);
    // Degree-proportional sampling over the endpoint multiset.
    std::vector<std::uint32_t> endpoints;
    for (std::uint32_t i = 0; i < m; ++i)
        for (std::uint32_t j = i + 1; j < m; ++j) {
            g.add_edge(i, j);
            endpoints.push_back(i);
            endpoints.push_back(j);
        }
    for (std::uint32_t v = m; v < n; ++v) {
        std::set<std::uint32_t> targets;
        while (targets.size() < m) {
            std::uint32_t t;
            if (endpoints.empty())
                t = static_cast<std::uint32_t>(rng.below(v)); // lone seed node case (m == 1)
            else
                t = endpoints[rng.below(endpoints.size())];
            targets.insert(t);
        }
        for (std::uint32_t t : targets) {
            g.add_edge(v, t);
            endpoints.push_back(v);
            endpoints.push_back(t);
        }
    }
    return g;
}

// ---------------------------------------------------------------------------
// Topology assembly

Topology Topology::from_parts(std::vector<AutonomousSystem> ases, std::vector<AsLinkPin> links,
                              std::vector<ServerEntry> servers) {
    Topology t;
    t.ases_ = std::move(ases);
    std::sort(t.ases_.begin(), t.ases_.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    for (auto& pin : links) {
        if (pin.as_a > pin.as_b) {
            std::swap(pin.as_a, pin.as_b);
            std::swap(pin.border_a, pin.border_b);
        }
    }
    std::sort(links.begin(), links.end(), [](const auto& a, const auto& b) {
        return std::tie(a.as_a, a.as_b) < std::tie(b.as_a, b.as_b);
    });
    t.as_links_ = std::move(links);
    std::sort(servers.begin(), servers.end(),
              [](const auto& a, const auto& b) { return a.lo < b.lo; });
    t.servers_ = std::move(servers);
    t.index();
    return t;
}

void Topology::index() {
    as_index_.clear();
    router_ids_.clear();
    router_as_.clear();
    router_local_.clear();
    router_index_.clear();
    pin_index_.clear();

    for (std::uint32_t i = 0; i < ases_.size(); ++i) {
        if (!as_index_.emplace(ases_[i].id, i).second)
            throw ValidationError("duplicate AS id " + std::to_string(ases_[i].id));
    }
    for (std::uint32_t i = 0; i < ases_.size(); ++i) {
        auto& as = ases_[i];
        for (std::uint32_t li = 0; li < as.routers.size(); ++li) {
            RouterId r = as.routers[li];
            router_ids_.push_back(r);
        }
    }
    std::sort(router_ids_.begin(), router_ids_.end());
    router_as_.resize(router_ids_.size());
    router_local_.resize(router_ids_.size());
    for (std::uint32_t idx = 0; idx < router_ids_.size(); ++idx) {
        if (idx > 0 && router_ids_[idx] == router_ids_[idx - 1])
            throw ValidationError("duplicate router id " + std::to_string(router_ids_[idx]));
        router_index_.emplace(router_ids_[idx], idx);
    }
    for (std::uint32_t i = 0; i < ases_.size(); ++i) {
        auto& as = ases_[i];
        for (std::uint32_t li = 0; li < as.routers.size(); ++li) {
            std::uint32_t idx = router_index_.at(as.routers[li]);
            router_as_[idx] = i;
            router_local_[idx] = li;
        }
    }

    as_graph_ = Graph(static_cast<std::uint32_t>(ases_.size()));
    for (std::uint32_t pos = 0; pos < as_links_.size(); ++pos) {
        const auto& pin = as_links_[pos];
        auto ia = as_index_.find(pin.as_a);
        auto ib = as_index_.find(pin.as_b);
        if (ia == as_index_.end() || ib == as_index_.end())
            throw ValidationError("AS link references unknown AS " +
                                  std::to_string(ia == as_index_.end() ? pin.as_a : pin.as_b));
        as_graph_.add_edge(ia->second, ib->second);
        if (!pin_index_.emplace(pin_key(ia->second, ib->second), pos).second)
            throw ValidationError("duplicate AS link " + std::to_string(pin.as_a) + "-" +
                                  std::to_string(pin.as_b));
    }

    global_graph_ = Graph(router_count());
    for (const auto& as : ases_) {
        for (auto [la, lb] : as.router_graph.edges())
            global_graph_.add_edge(router_index_.at(as.routers[la]),
                                   router_index_.at(as.routers[lb]));
    }
    for (const auto& pin : as_links_)
        global_graph_.add_edge(router_index_.at(pin.border_a), router_index_.at(pin.border_b));
}

std::uint32_t Topology::as_index(AsId id) const {
    auto it = as_index_.find(id);
    if (it == as_index_.end())
        throw RoutingError("unknown AS " + std::to_string(id));
    return it->second;
}

std::uint32_t Topology::router_index(RouterId id) const {
    auto it = router_index_.find(id);
    if (it == router_index_.end())
        throw RoutingError("unknown router " + std::to_string(id));
    return it->second;
}

std::uint32_t Topology::capacity_of(std::uint32_t router_idx) const {
    const auto& as = ases_[router_as_[router_idx]];
    return as.capacities[router_local_[router_idx]];
}

const AsLinkPin& Topology::pin_between(std::uint32_t as_idx_a, std::uint32_t as_idx_b) const {
    auto it = pin_index_.find(pin_key(as_idx_a, as_idx_b));
    if (it == pin_index_.end())
        throw RoutingError("no AS link between " + std::to_string(as_id(as_idx_a)) + " and " +
                           std::to_string(as_id(as_idx_b)));
    return as_links_[it->second];
}

const ServerEntry& Topology::server_for(ObjectId id) const {
    for (const auto& s : servers_)
        if (id >= s.lo && id <= s.hi)
            return s;
    throw RoutingError("no authoritative server for object " + std::to_string(id));
}

ObjectId Topology::object_space() const {
    ObjectId hi = 0;
    for (const auto& s : servers_)
        hi = std::max(hi, s.hi);
    return servers_.empty() ? 0 : hi + 1;
}

std::uint64_t Topology::total_capacity() const {
    std::uint64_t sum = 0;
    for (const auto& as : ases_)
        sum += as.total_capacity();
    return sum;
}

void Topology::validate() const {
    if (ases_.empty())
        throw ValidationError("topology has no ASes");
    for (const auto& as : ases_) {
        if (as.routers.empty())
            throw ValidationError("AS " + std::to_string(as.id) + " has no routers");
        if (!std::is_sorted(as.routers.begin(), as.routers.end()))
            throw ValidationError("AS " + std::to_string(as.id) + " router list not sorted");
        if (as.capacities.size() != as.routers.size())
            throw ValidationError("AS " + std::to_string(as.id) + " capacity list size mismatch");
        if (as.router_graph.size() != as.routers.size())
            throw ValidationError("AS " + std::to_string(as.id) + " router graph size mismatch");
        if (!as.router_graph.connected())
            throw ValidationError("AS " + std::to_string(as.id) + " router graph disconnected");
        for (RouterId b : as.border_routers)
            if (!std::binary_search(as.routers.begin(), as.routers.end(), b))
                throw ValidationError("AS " + std::to_string(as.id) + " border router " +
                                      std::to_string(b) + " not in AS");
    }
    if (!as_graph_.connected())
        throw ValidationError("AS graph disconnected");
    for (const auto& pin : as_links_) {
        const auto& a = ases_[as_index_.at(pin.as_a)];
        const auto& b = ases_[as_index_.at(pin.as_b)];
        if (!a.is_border(pin.border_a))
            throw ValidationError("link " + std::to_string(pin.as_a) + "-" +
                                  std::to_string(pin.as_b) + " pinned to non-border router " +
                                  std::to_string(pin.border_a));
        if (!b.is_border(pin.border_b))
            throw ValidationError("link " + std::to_string(pin.as_a) + "-" +
                                  std::to_string(pin.as_b) + " pinned to non-border router " +
                                  std::to_string(pin.border_b));
    }
    // Every AS with external links needs a border router.
    for (const auto& as : ases_) {
        std::uint32_t idx = as_index_.at(as.id);
        if (as_graph_.degree(idx) > 0 && as.border_routers.empty())
            throw ValidationError("AS " + std::to_string(as.id) +
                                  " has external links but no border routers");
    }
    if (servers_.empty())
        throw ValidationError("no servers defined");
    ObjectId expect = 0;
    for (const auto& s : servers_) {
        if (s.lo != expect)
            throw ValidationError("server ranges must tile the id space; gap before " +
                                  std::to_string(s.lo));
        if (s.hi < s.lo)
            throw ValidationError("server range inverted at " + std::to_string(s.lo));
        expect = s.hi + 1;
        auto it = as_index_.find(s.as_id);
        if (it == as_index_.end())
            throw ValidationError("server attached to unknown AS " + std::to_string(s.as_id));
        const auto& as = ases_[it->second];
        if (!std::binary_search(as.routers.begin(), as.routers.end(), s.router))
            throw ValidationError("server router " + std::to_string(s.router) + " not in AS " +
                                  std::to_string(s.as_id));
    }
    if (!global_graph_.connected())
        throw ValidationError("router-level graph disconnected");
}

Topology Topology::collapse_to_as_level() const {
    std::vector<AutonomousSystem> ases;
    ases.reserve(ases_.size());
    for (const auto& as : ases_) {
        AutonomousSystem one;
        one.id = as.id;
        // The collapsed node reuses the lowest router id of the AS.
        one.routers = {as.routers.front()};
        one.border_routers = one.routers;
        one.router_graph = Graph(1);
        one.capacities = {static_cast<std::uint32_t>(as.total_capacity())};
        ases.push_back(std::move(one));
    }
    std::vector<AsLinkPin> links;
    links.reserve(as_links_.size());
    for (const auto& pin : as_links_) {
        AsLinkPin p;
        p.as_a = pin.as_a;
        p.as_b = pin.as_b;
        p.border_a = ases_[as_index_.at(pin.as_a)].routers.front();
        p.border_b = ases_[as_index_.at(pin.as_b)].routers.front();
        links.push_back(p);
    }
    std::vector<ServerEntry> servers;
    servers.reserve(servers_.size());
    for (const auto& s : servers_) {
        ServerEntry e = s;
        e.router = ases_[as_index_.at(s.as_id)].routers.front();
        servers.push_back(e);
    }
    return from_parts(std::move(ases), std::move(links), std::move(servers));
}

// ---------------------------------------------------------------------------
// Snapshot format (documented in docs/formats.md):
//   [AS] <as_id>
//   [ROUTER] <router_id> <as_id> <capacity> <border 0|1>
//   [LINK] <router_a> <router_b>
//   [SERVER] <lo> <hi> <as_id> <router_id>

std::string Topology::to_snapshot() const {
    std::ostringstream out;
    out << "# icnsim topology v1\n";
    for (const auto& as : ases_)
        out << "[AS] " << as.id << "\n";
    for (const auto& as : ases_)
        for (std::uint32_t li = 0; li < as.routers.size(); ++li)
            out << "[ROUTER] " << as.routers[li] << " " << as.id << " " << as.capacities[li] << " "
                << (as.is_border(as.routers[li]) ? 1 : 0) << "\n";
    std::vector<std::pair<RouterId, RouterId>> links;
    for (const auto& as : ases_)
        for (auto [la, lb] : as.router_graph.edges()) {
            RouterId a = as.routers[la], b = as.routers[lb];
            links.emplace_back(std::min(a, b), std::max(a, b));
        }
    for (const auto& pin : as_links_)
        links.emplace_back(std::min(pin.border_a, pin.border_b),
                           std::max(pin.border_a, pin.border_b));
    std::sort(links.begin(), links.end());
    for (const auto& [a, b] : links)
        out << "[LINK] " << a << " " << b << "\n";
    for (const auto& s : servers_)
        out << "[SERVER] " << s.lo << " " << s.hi << " " << s.as_id << " " << s.router << "\n";
    return out.str();
}

Topology Topology::from_snapshot(std::istream& in) {
    struct RouterRow {
        RouterId id;
        AsId as;
        std::uint32_t capacity;
        bool border;
    };
    std::vector<AsId> as_rows;
    std::vector<RouterRow> router_rows;
    std::vector<std::pair<RouterId, RouterId>> link_rows;
    std::vector<ServerEntry> server_rows;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        auto toks = split_ws(line);
        if (toks.empty())
            continue;
        const std::string& tag = toks[0];
        auto need = [&](std::size_t n) {
            if (toks.size() != n + 1)
                throw ParseError("line " + std::to_string(line_no) + ": " + tag + " expects " +
                                 std::to_string(n) + " fields");
        };
        if (tag == "[AS]") {
            need(1);
            as_rows.push_back(parse_u32(toks[1], "AS id", line_no));
        } else if (tag == "[ROUTER]") {
            need(4);
            RouterRow r;
            r.id = parse_u32(toks[1], "router id", line_no);
            r.as = parse_u32(toks[2], "AS id", line_no);
            r.capacity = parse_u32(toks[3], "capacity", line_no);
            std::uint32_t border = parse_u32(toks[4], "border flag", line_no);
            if (border > 1)
                throw ParseError("line " + std::to_string(line_no) + ": border flag must be 0|1");
            r.border = border == 1;
            router_rows.push_back(r);
        } else if (tag == "[LINK]") {
            need(2);
            link_rows.emplace_back(parse_u32(toks[1], "router id", line_no),
                                   parse_u32(toks[2], "router id", line_no));
        } else if (tag == "[SERVER]") {
            need(4);
            ServerEntry s;
            s.lo = parse_u32(toks[1], "range lo", line_no);
            s.hi = parse_u32(toks[2], "range hi", line_no);
            s.as_id = parse_u32(toks[3], "AS id", line_no);
            s.router = parse_u32(toks[4], "router id", line_no);
            server_rows.push_back(s);
        } else {
            throw ParseError("line " + std::to_string(line_no) + ": unknown section tag '" + tag +
                             "'");
        }
    }

    std::map<AsId, AutonomousSystem> ases;
    for (AsId id : as_rows) {
        AutonomousSystem as;
        as.id = id;
        ases.emplace(id, std::move(as));
    }
    for (const auto& r : router_rows) {
        auto it = ases.find(r.as);
        if (it == ases.end())
            throw ParseError("router " + std::to_string(r.id) + " references undeclared AS " +
                             std::to_string(r.as));
        it->second.routers.push_back(r.id);
    }
    std::map<RouterId, AsId> router_as;
    std::map<RouterId, std::uint32_t> router_local;
    for (auto& [id, as] : ases) {
        std::sort(as.routers.begin(), as.routers.end());
        as.router_graph = Graph(static_cast<std::uint32_t>(as.routers.size()));
        as.capacities.resize(as.routers.size(), 0);
        for (std::uint32_t li = 0; li < as.routers.size(); ++li) {
            router_as[as.routers[li]] = id;
            router_local[as.routers[li]] = li;
        }
    }
    for (const auto& r : router_rows) {
        auto& as = ases.at(r.as);
        as.capacities[router_local.at(r.id)] = r.capacity;
        if (r.border)
            as.border_routers.push_back(r.id);
    }
    for (auto& [id, as] : ases)
        std::sort(as.border_routers.begin(), as.border_routers.end());

    std::map<std::pair<AsId, AsId>, AsLinkPin> pins;
    for (auto [a, b] : link_rows) {
        auto ita = router_as.find(a);
        auto itb = router_as.find(b);
        if (ita == router_as.end() || itb == router_as.end())
            throw ParseError("link references unknown router " +
                             std::to_string(ita == router_as.end() ? a : b));
        if (ita->second == itb->second) {
            auto& as = ases.at(ita->second);
            as.router_graph.add_edge(router_local.at(a), router_local.at(b));
        } else {
            AsId asa = ita->second, asb = itb->second;
            RouterId ra = a, rb = b;
            if (asa > asb) {
                std::swap(asa, asb);
                std::swap(ra, rb);
            }
            AsLinkPin pin{asa, asb, ra, rb};
            auto [pit, fresh] = pins.emplace(std::make_pair(asa, asb), pin);
            if (!fresh)
                throw ParseError("duplicate inter-AS link between " + std::to_string(asa) +
                                 " and " + std::to_string(asb));
        }
    }

    std::vector<AutonomousSystem> as_vec;
    as_vec.reserve(ases.size());
    for (auto& [id, as] : ases)
        as_vec.push_back(std::move(as));
    std::vector<AsLinkPin> pin_vec;
    pin_vec.reserve(pins.size());
    for (auto& [k, pin] : pins)
        pin_vec.push_back(pin);
    return from_parts(std::move(as_vec), std::move(pin_vec), std::move(server_rows));
}

Topology Topology::from_snapshot_text(const std::string& text) {
    std::istringstream ss(text);
    return from_snapshot(ss);
}

// ---------------------------------------------------------------------------
// Hierarchy builder

Topology build_hierarchy(const AsLinkList& as_links, const HierarchyParams& p) {
    if (p.routers_per_as < 1)
        throw ValidationError("hierarchy: routers_per_as must be >= 1");
    if (p.border_count < 1 || p.border_count > p.routers_per_as)
        throw ValidationError("hierarchy: need routers_per_as >= border_count >= 1");
    if (as_links.as_ids.empty())
        throw ValidationError("hierarchy: empty AS skeleton");
    if (p.object_space < 1)
        throw ValidationError("hierarchy: object_space must be >= 1");
    if (p.server_count < 1 || p.server_count > p.object_space)
        throw ValidationError("hierarchy: server_count must be in [1, object_space]");

    // Skeleton connectivity check up front; per-AS graphs are made connected
    // by the Waxman post-pass.
    {
        Graph skel(static_cast<std::uint32_t>(as_links.as_ids.size()));
        std::unordered_map<AsId, std::uint32_t> pos;
        for (std::uint32_t i = 0; i < as_links.as_ids.size(); ++i)
            pos.emplace(as_links.as_ids[i], i);
        for (auto [a, b] : as_links.links)
            skel.add_edge(pos.at(a), pos.at(b));
        if (!skel.connected())
            throw ValidationError("hierarchy: AS skeleton graph disconnected");
    }

    Rng rng(p.seed);
    std::vector<AutonomousSystem> ases;
    ases.reserve(as_links.as_ids.size());
    std::unordered_map<AsId, std::uint32_t> as_pos;
    RouterId next_router = 0;
    for (AsId id : as_links.as_ids) {
        AutonomousSystem as;
        as.id = id;
        as.router_graph =
            generate_waxman(p.routers_per_as, p.router_alpha, p.router_beta, rng.next());
        for (std::uint32_t i = 0; i < p.routers_per_as; ++i)
            as.routers.push_back(next_router++);
        as.capacities.assign(p.routers_per_as, p.capacity);
        // Border routers: seeded draw without replacement.
        std::vector<RouterId> pool = as.routers;
        rng.shuffle(pool);
        as.border_routers.assign(pool.begin(), pool.begin() + p.border_count);
        std::sort(as.border_routers.begin(), as.border_routers.end());
        as_pos.emplace(id, static_cast<std::uint32_t>(ases.size()));
        ases.push_back(std::move(as));
    }

    // Pin each AS link to a border pair, rotating through each side's borders.
    std::vector<std::uint32_t> rotation(ases.size(), 0);
    std::vector<AsLinkPin> pins;
    pins.reserve(as_links.links.size());
    for (auto [a, b] : as_links.links) {
        const auto& as_a = ases[as_pos.at(a)];
        const auto& as_b = ases[as_pos.at(b)];
        AsLinkPin pin;
        pin.as_a = a;
        pin.as_b = b;
        pin.border_a = as_a.border_routers[rotation[as_pos.at(a)]++ % as_a.border_routers.size()];
        pin.border_b = as_b.border_routers[rotation[as_pos.at(b)]++ % as_b.border_routers.size()];
        pins.push_back(pin);
    }

    // Servers: equal contiguous slices of [0, object_space), each attached to
    // a uniformly drawn router (distinct routers while possible).
    std::vector<ServerEntry> servers;
    std::uint64_t total_routers = static_cast<std::uint64_t>(ases.size()) * p.routers_per_as;
    std::set<RouterId> used;
    ObjectId space = p.object_space;
    for (std::uint32_t s = 0; s < p.server_count; ++s) {
        ServerEntry e;
        e.lo = static_cast<ObjectId>((static_cast<std::uint64_t>(space) * s) / p.server_count);
        e.hi = static_cast<ObjectId>((static_cast<std::uint64_t>(space) * (s + 1)) / p.server_count -
                                     1);
        RouterId r;
        do {
            r = static_cast<RouterId>(rng.below(total_routers));
        } while (used.count(r) && used.size() < total_routers);
        used.insert(r);
        e.router = r;
        e.as_id = ases[r / p.routers_per_as].id;
        servers.push_back(e);
    }

    Topology t = Topology::from_parts(std::move(ases), std::move(pins), std::move(servers));
    t.validate();
    return t;
}

} // namespace icnsim
