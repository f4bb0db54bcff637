#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace neron {

// Labeled multigraph of a special fibre: vertices are components (with
// genus), edges are double points with thickness e and optional branch
// coordinates on the two normalizations. Coordinates are in the textual
// F_{p^2} form, or "inf" for the point at infinity of a coordinate line.
struct Vertex {
    std::string id;
    long long genus = 0;
    std::string name;
};

struct BranchData {
    std::string tail_coord;
    std::string head_coord;
};

struct Edge {
    std::string id;
    std::string tail;  // orientation s
    std::string head;  // orientation t
    long long e = 1;
    std::optional<BranchData> branch;
    std::optional<std::string> c;  // glueing coefficient, textual Fq
};

struct DualGraph {
    std::optional<uint64_t> p;
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;

    const Vertex& vertex(const std::string& id) const;
    const Edge& edge(const std::string& id) const;
    size_t vertex_index(const std::string& id) const;
};

// Checks id uniqueness, endpoint validity, e >= 1, connectivity; sorts
// vertices and edges by id so downstream iteration order is deterministic.
void validate(DualGraph& g);
DualGraph validated(DualGraph g);

struct ResolveResult {
    DualGraph graph;  // every edge has e = 1
    // original edge id -> new edge ids in positions 1..e (tail-to-head)
    std::map<std::string, std::vector<std::string>> chains;
    // new edge id -> (original edge id, position)
    std::map<std::string, std::pair<std::string, int>> provenance;
};

// Replace each selected edge of thickness e by a chain of e unit edges
// through e-1 fresh genus-0 vertices. Chain vertices of edge x are named
// x@1 .. x@e-1; chain edges x#1 .. x#e. The glueing coefficient of the
// original edge is carried by the first chain edge, interior ones get "1".
ResolveResult resolve(const DualGraph& g);
ResolveResult resolve_edges(const DualGraph& g, const std::set<std::string>& which);

std::set<std::string> bridges(const DualGraph& g);

struct CycleStep {
    std::string edge;
    bool forward;  // traversed tail->head?
};
struct Cycle {
    std::string start;             // starting vertex id
    std::vector<CycleStep> steps;  // closed walk
};

// |E| - |V| + 1 fundamental cycles from a deterministic spanning tree.
// tree_seed selects among equivalent trees (used by basis-independence tests).
std::vector<Cycle> cycle_basis(const DualGraph& g, unsigned tree_seed = 0);

std::string graph_to_json(const DualGraph& g);
DualGraph graph_from_json(const std::string& text);
DualGraph graph_from_file(const std::string& path);

}  // namespace neron
