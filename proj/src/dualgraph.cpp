#include "neron/dualgraph.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace neron {

const Vertex& DualGraph::vertex(const std::string& id) const {
    for (const Vertex& v : vertices)
        if (v.id == id) return v;
    throw std::out_of_range("DualGraph: no vertex " + id);
}

const Edge& DualGraph::edge(const std::string& id) const {
    for (const Edge& e : edges)
        if (e.id == id) return e;
    throw std::out_of_range("DualGraph: no edge " + id);
}

size_t DualGraph::vertex_index(const std::string& id) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].id == id) return i;
    throw std::out_of_range("DualGraph: no vertex " + id);
}

void validate(DualGraph& g) {
    std::sort(g.vertices.begin(), g.vertices.end(),
              [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
    std::sort(g.edges.begin(), g.edges.end(),
              [](const Edge& a, const Edge& b) { return a.id < b.id; });
    std::set<std::string> vids;
    for (const Vertex& v : g.vertices) {
        if (!vids.insert(v.id).second) throw std::invalid_argument("duplicate vertex id " + v.id);
    }
    std::set<std::string> eids;
    for (const Edge& e : g.edges) {
        if (!eids.insert(e.id).second) throw std::invalid_argument("duplicate edge id " + e.id);
        if (!vids.count(e.tail)) throw std::invalid_argument("edge " + e.id + ": dangling tail " + e.tail);
        if (!vids.count(e.head)) throw std::invalid_argument("edge " + e.id + ": dangling head " + e.head);
        if (e.e < 1) throw std::invalid_argument("edge " + e.id + ": thickness must be >= 1");
    }
    if (g.vertices.empty()) throw std::invalid_argument("graph has no vertices");
    // connectivity
    std::map<std::string, std::vector<std::string>> adj;
    for (const Edge& e : g.edges) {
        adj[e.tail].push_back(e.head);
        adj[e.head].push_back(e.tail);
    }
    std::set<std::string> seen;
    std::vector<std::string> stack = {g.vertices.front().id};
    seen.insert(stack.front());
    while (!stack.empty()) {
        std::string v = stack.back();
        stack.pop_back();
        for (const std::string& w : adj[v])
            if (seen.insert(w).second) stack.push_back(w);
    }
    if (seen.size() != g.vertices.size()) throw std::invalid_argument("graph is disconnected");
}

DualGraph validated(DualGraph g) {
    validate(g);
    return g;
}

ResolveResult resolve_edges(const DualGraph& g, const std::set<std::string>& which) {
    ResolveResult out;
    out.graph.p = g.p;
    out.graph.vertices = g.vertices;
    for (const Edge& e : g.edges) {
        if (!which.count(e.id) || e.e == 1) {
            out.graph.edges.push_back(e);
            out.chains[e.id] = {e.id};
            out.provenance[e.id] = {e.id, 1};
            continue;
        }
        // chain of e.e unit edges through e.e - 1 fresh genus-0 vertices;
        // interior nodes use the conventional (entering t=0, leaving t=inf)
        // coordinates of the two-pointed line
        std::vector<std::string> chain_edges;
        std::string prev = e.tail;
        for (long long i = 1; i <= e.e; ++i) {
            std::string nxt;
            if (i < e.e) {
                Vertex v;
                v.id = e.id + "@" + std::to_string(i);
                v.genus = 0;
                v.name = v.id;
                out.graph.vertices.push_back(v);
                nxt = v.id;
            } else {
                nxt = e.head;
            }
            Edge ne;
            ne.id = e.id + "#" + std::to_string(i);
            ne.tail = prev;
            ne.head = nxt;
            ne.e = 1;
            if (e.branch) {
                BranchData bd;
                bd.tail_coord = i == 1 ? e.branch->tail_coord : "inf";
                bd.head_coord = i == e.e ? e.branch->head_coord : "0";
                ne.branch = bd;
            }
            if (e.c) ne.c = i == 1 ? *e.c : "1";
            out.graph.edges.push_back(ne);
            chain_edges.push_back(ne.id);
            out.provenance[ne.id] = {e.id, static_cast<int>(i)};
            prev = nxt;
        }
        out.chains[e.id] = chain_edges;
    }
    validate(out.graph);
    return out;
}

ResolveResult resolve(const DualGraph& g) {
    std::set<std::string> all;
    for (const Edge& e : g.edges) all.insert(e.id);
    return resolve_edges(g, all);
}

std::set<std::string> bridges(const DualGraph& g) {
    // iterative DFS lowlink over the multigraph; parallel edges handled by
    // tracking the incoming edge index, not the parent vertex
    size_t n = g.vertices.size();
    std::map<std::string, size_t> vidx;
    for (size_t i = 0; i < n; ++i) vidx[g.vertices[i].id] = i;
    struct Arc {
        size_t to;
        size_t eidx;
    };
    std::vector<std::vector<Arc>> adj(n);
    for (size_t k = 0; k < g.edges.size(); ++k) {
        const Edge& e = g.edges[k];
        size_t a = vidx[e.tail], b = vidx[e.head];
        if (a == b) continue;  // self-loops are never bridges
        adj[a].push_back({b, k});
        adj[b].push_back({a, k});
    }
    std::vector<int> disc(n, -1), low(n, -1);
    std::set<std::string> out;
    int timer = 0;
    for (size_t root = 0; root < n; ++root) {
        if (disc[root] != -1) continue;
        struct Frame {
            size_t v;
            size_t in_edge;  // edge index used to enter v, SIZE_MAX for root
            size_t next = 0;
        };
        std::vector<Frame> stack = {{root, static_cast<size_t>(-1), 0}};
        disc[root] = low[root] = timer++;
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.next < adj[f.v].size()) {
                Arc arc = adj[f.v][f.next++];
                if (arc.eidx == f.in_edge) continue;
                if (disc[arc.to] == -1) {
                    disc[arc.to] = low[arc.to] = timer++;
                    stack.push_back({arc.to, arc.eidx, 0});
                } else {
                    low[f.v] = std::min(low[f.v], disc[arc.to]);
                }
            } else {
                size_t v = f.v;
                size_t in_edge = f.in_edge;
                stack.pop_back();
                if (!stack.empty()) {
                    size_t parent = stack.back().v;
                    low[parent] = std::min(low[parent], low[v]);
                    if (low[v] > disc[parent]) out.insert(g.edges[in_edge].id);
                }
            }
        }
    }
    return out;
}

std::vector<Cycle> cycle_basis(const DualGraph& g, unsigned tree_seed) {
    size_t n = g.vertices.size();
    std::map<std::string, size_t> vidx;
    for (size_t i = 0; i < n; ++i) vidx[g.vertices[i].id] = i;
    struct Arc {
        size_t to;
        size_t eidx;
        bool forward;
    };
    std::vector<std::vector<Arc>> adj(n);
    for (size_t k = 0; k < g.edges.size(); ++k) {
        const Edge& e = g.edges[k];
        size_t a = vidx[e.tail], b = vidx[e.head];
        if (a == b) continue;  // self-loop: its own cycle, handled below
        adj[a].push_back({b, k, true});
        adj[b].push_back({a, k, false});
    }
    // deterministic neighbor order, scrambled by tree_seed
    auto key = [&](const Arc& arc) {
        std::hash<std::string> h;
        return std::pair<size_t, std::string>(
            tree_seed == 0 ? 0 : h(g.edges[arc.eidx].id + "#" + std::to_string(tree_seed)),
            g.edges[arc.eidx].id);
    };
    for (auto& lst : adj)
        std::sort(lst.begin(), lst.end(), [&](const Arc& x, const Arc& y) { return key(x) < key(y); });

    // BFS tree from the first vertex
    std::vector<int> parent_edge(n, -1);
    std::vector<int> parent(n, -1);
    std::vector<bool> in_tree_edge(g.edges.size(), false);
    std::vector<size_t> order = {0};
    std::vector<bool> seen(n, false);
    seen[0] = true;
    for (size_t qi = 0; qi < order.size(); ++qi) {
        size_t v = order[qi];
        for (const Arc& arc : adj[v]) {
            if (seen[arc.to]) continue;
            seen[arc.to] = true;
            parent[arc.to] = static_cast<int>(v);
            parent_edge[arc.to] = static_cast<int>(arc.eidx);
            in_tree_edge[arc.eidx] = true;
            order.push_back(arc.to);
        }
    }

    auto path_to_root = [&](size_t v) {
        // list of (edge idx, forward-when-walking-toward-root)
        std::vector<std::pair<size_t, bool>> steps;
        while (parent[v] != -1) {
            size_t eidx = static_cast<size_t>(parent_edge[v]);
            const Edge& e = g.edges[eidx];
            bool fwd = vidx[e.tail] == v;  // walking v -> parent
            steps.push_back({eidx, fwd});
            v = static_cast<size_t>(parent[v]);
        }
        return steps;
    };

    std::vector<Cycle> cycles;
    for (size_t k = 0; k < g.edges.size(); ++k) {
        const Edge& e = g.edges[k];
        size_t a = vidx[e.tail], b = vidx[e.head];
        if (a == b) {
            Cycle c;
            c.start = e.tail;
            c.steps.push_back({e.id, true});
            cycles.push_back(c);
            continue;
        }
        if (in_tree_edge[k]) continue;
        // cycle: tail --e--> head, then tree path head -> tail
        std::vector<std::pair<size_t, bool>> pa = path_to_root(a);
        std::vector<std::pair<size_t, bool>> pb = path_to_root(b);
        // strip common suffix (path above the meeting point)
        while (!pa.empty() && !pb.empty() && pa.back().first == pb.back().first) {
            pa.pop_back();
            pb.pop_back();
        }
        Cycle c;
        c.start = e.tail;
        c.steps.push_back({e.id, true});
        for (const auto& [eidx, fwd] : pb) c.steps.push_back({g.edges[eidx].id, fwd});
        for (size_t i = pa.size(); i-- > 0;) c.steps.push_back({g.edges[pa[i].first].id, !pa[i].second});
        cycles.push_back(c);
    }
    return cycles;
}

std::string graph_to_json(const DualGraph& g) {
    nlohmann::ordered_json j;
    if (g.p) j["p"] = *g.p;
    j["vertices"] = nlohmann::ordered_json::array();
    for (const Vertex& v : g.vertices) {
        nlohmann::ordered_json jv;
        jv["id"] = v.id;
        jv["genus"] = v.genus;
        jv["name"] = v.name;
        j["vertices"].push_back(jv);
    }
    j["edges"] = nlohmann::ordered_json::array();
    for (const Edge& e : g.edges) {
        nlohmann::ordered_json je;
        je["id"] = e.id;
        je["tail"] = e.tail;
        je["head"] = e.head;
        je["e"] = e.e;
        if (e.branch) {
            je["branch"]["tail_coord"] = e.branch->tail_coord;
            je["branch"]["head_coord"] = e.branch->head_coord;
        }
        if (e.c) je["c"] = *e.c;
        j["edges"].push_back(je);
    }
    return j.dump(2) + "\n";
}

DualGraph graph_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    DualGraph g;
    if (j.contains("p")) g.p = j["p"].get<uint64_t>();
    for (const auto& jv : j.at("vertices")) {
        Vertex v;
        v.id = jv.at("id").get<std::string>();
        v.genus = jv.value("genus", 0LL);
        v.name = jv.value("name", v.id);
        g.vertices.push_back(v);
    }
    for (const auto& je : j.at("edges")) {
        Edge e;
        e.id = je.at("id").get<std::string>();
        e.tail = je.at("tail").get<std::string>();
        e.head = je.at("head").get<std::string>();
        e.e = je.value("e", 1LL);
        if (je.contains("branch")) {
            BranchData bd;
            bd.tail_coord = je["branch"].at("tail_coord").get<std::string>();
            bd.head_coord = je["branch"].at("head_coord").get<std::string>();
            e.branch = bd;
        }
        if (je.contains("c")) e.c = je["c"].get<std::string>();
        g.edges.push_back(e);
    }
    validate(g);
    return g;
}

DualGraph graph_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return graph_from_json(ss.str());
}

}  // namespace neron
