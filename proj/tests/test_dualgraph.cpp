#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "neron/dualgraph.hpp"
#include "neron/smith.hpp"

using namespace neron;

TEST_SUITE_BEGIN("dualgraph");

namespace {

DualGraph two_vertex_edges(const std::vector<long long>& thicknesses) {
    DualGraph g;
    g.vertices = {{"A", 0, "A"}, {"B", 0, "B"}};
    int k = 0;
    for (long long e : thicknesses)
        g.edges.push_back({"e" + std::to_string(k++), "A", "B", e, std::nullopt, std::nullopt});
    validate(g);
    return g;
}

// removal oracle: edge is a bridge iff deleting it disconnects its endpoints
bool bridge_by_removal(const DualGraph& g, const std::string& eid) {
    const Edge& target = g.edge(eid);
    if (target.tail == target.head) return false;
    std::map<std::string, std::vector<std::string>> adj;
    for (const Edge& e : g.edges) {
        if (e.id == eid) continue;
        adj[e.tail].push_back(e.head);
        adj[e.head].push_back(e.tail);
    }
    std::set<std::string> seen = {target.tail};
    std::vector<std::string> stack = {target.tail};
    while (!stack.empty()) {
        std::string v = stack.back();
        stack.pop_back();
        for (const std::string& w : adj[v])
            if (seen.insert(w).second) stack.push_back(w);
    }
    return !seen.count(target.head);
}

}  // namespace

TEST_CASE("validate accepts and rejects") {
    DualGraph ok = two_vertex_edges({1});
    CHECK(ok.vertices.size() == 2);

    DualGraph disconnected;
    disconnected.vertices = {{"A", 0, "A"}, {"B", 0, "B"}};
    CHECK_THROWS(validate(disconnected));

    DualGraph dangling;
    dangling.vertices = {{"A", 0, "A"}};
    dangling.edges = {{"e0", "A", "Z", 1, std::nullopt, std::nullopt}};
    CHECK_THROWS(validate(dangling));

    DualGraph thin;
    thin.vertices = {{"A", 0, "A"}, {"B", 0, "B"}};
    thin.edges = {{"e0", "A", "B", 0, std::nullopt, std::nullopt}};
    CHECK_THROWS(validate(thin));

    // the two-component crossing pattern with e = 1, 2, 3 validates
    DualGraph theta = two_vertex_edges({1, 2, 3});
    CHECK(theta.edges.size() == 3);
}

TEST_CASE("resolve expands thick edges into unit chains") {
    DualGraph g = two_vertex_edges({3});
    ResolveResult r = resolve(g);
    CHECK(r.graph.vertices.size() == 4);  // A, B + 2 fresh
    CHECK(r.graph.edges.size() == 3);
    for (const Edge& e : r.graph.edges) CHECK(e.e == 1);
    CHECK(r.chains.at("e0").size() == 3);
    CHECK(r.provenance.at("e0#2") == std::pair<std::string, int>("e0", 2));

    DualGraph unit = two_vertex_edges({1});
    ResolveResult ru = resolve(unit);
    CHECK(ru.graph.edges.size() == 1);
    CHECK(ru.graph.vertices.size() == 2);

    // e = 1,2,3 gives the five-component configuration with six crossings
    ResolveResult rt = resolve(two_vertex_edges({1, 2, 3}));
    CHECK(rt.graph.vertices.size() == 5);
    CHECK(rt.graph.edges.size() == 6);
}

TEST_CASE("resolve carries branch coordinates and coefficients along chains") {
    DualGraph g;
    g.p = 23;
    g.vertices = {{"A", 0, "A"}, {"B", 0, "B"}};
    Edge e{"x", "A", "B", 3, BranchData{"5", "7"}, std::string("6")};
    g.edges = {e};
    validate(g);
    ResolveResult r = resolve(g);
    const Edge& first = r.graph.edge("x#1");
    const Edge& mid = r.graph.edge("x#2");
    const Edge& last = r.graph.edge("x#3");
    CHECK(first.branch->tail_coord == "5");
    CHECK(first.branch->head_coord == "0");
    CHECK(mid.branch->tail_coord == "inf");
    CHECK(mid.branch->head_coord == "0");
    CHECK(last.branch->tail_coord == "inf");
    CHECK(last.branch->head_coord == "7");
    CHECK(*first.c == "6");
    CHECK(*mid.c == "1");
    CHECK(*last.c == "1");
}

TEST_CASE("bridges: paths, cycles, crossings") {
    DualGraph path;
    path.vertices = {{"A", 0, "A"}, {"B", 0, "B"}, {"C", 0, "C"}};
    path.edges = {{"e0", "A", "B", 1, {}, {}}, {"e1", "B", "C", 1, {}, {}}};
    validate(path);
    CHECK(bridges(path) == std::set<std::string>{"e0", "e1"});

    DualGraph tri;
    tri.vertices = {{"A", 0, "A"}, {"B", 0, "B"}, {"C", 0, "C"}};
    tri.edges = {{"e0", "A", "B", 1, {}, {}}, {"e1", "B", "C", 1, {}, {}}, {"e2", "A", "C", 1, {}, {}}};
    validate(tri);
    CHECK(bridges(tri).empty());

    // resolved e=1,2,3 crossing pattern: every edge lies on a cycle
    ResolveResult rt = resolve(two_vertex_edges({1, 2, 3}));
    CHECK(bridges(rt.graph).empty());

    // self-loops are never bridges
    DualGraph loop;
    loop.vertices = {{"A", 0, "A"}};
    loop.edges = {{"e0", "A", "A", 1, {}, {}}};
    validate(loop);
    CHECK(bridges(loop).empty());
}

TEST_CASE("bridges match the removal oracle on random graphs") {
    std::mt19937 rng(31337);
    for (int iter = 0; iter < 150; ++iter) {
        DualGraph g = testutil::random_multigraph(rng);
        std::set<std::string> fast = bridges(g);
        for (const Edge& e : g.edges) CHECK(fast.count(e.id) == (bridge_by_removal(g, e.id) ? 1 : 0));
    }
}

TEST_CASE("cycle basis size, closedness, and resolution invariance") {
    CHECK(cycle_basis(two_vertex_edges({1})).empty());

    ResolveResult rt = resolve(two_vertex_edges({1, 2, 3}));
    CHECK(cycle_basis(rt.graph).size() == 2);  // 6 - 5 + 1

    ResolveResult r31 = resolve(two_vertex_edges({1, 1, 2}));
    CHECK(cycle_basis(r31.graph).size() == 2);  // 4 - 3 + 1

    std::mt19937 rng(4242);
    for (int iter = 0; iter < 80; ++iter) {
        DualGraph g = testutil::random_multigraph(rng);
        long long betti = static_cast<long long>(g.edges.size()) - static_cast<long long>(g.vertices.size()) + 1;
        for (unsigned seed : {0u, 1u, 2u}) {
            std::vector<Cycle> basis = cycle_basis(g, seed);
            CHECK(static_cast<long long>(basis.size()) == betti);
            for (const Cycle& c : basis) {
                std::string at = c.start;
                for (const CycleStep& s : c.steps) {
                    const Edge& e = g.edge(s.edge);
                    CHECK((s.forward ? e.tail : e.head) == at);
                    at = s.forward ? e.head : e.tail;
                }
                CHECK(at == c.start);
            }
        }
        // resolution preserves connectivity and the first Betti number
        ResolveResult r = resolve(g);
        long long rbetti =
            static_cast<long long>(r.graph.edges.size()) - static_cast<long long>(r.graph.vertices.size()) + 1;
        CHECK(rbetti == betti);
        // an edge's chain consists of bridges iff the edge is a bridge
        std::set<std::string> orig_bridges = bridges(g);
        std::set<std::string> res_bridges = bridges(r.graph);
        for (const Edge& e : g.edges) {
            bool expect = orig_bridges.count(e.id) > 0;
            for (const std::string& part : r.chains.at(e.id))
                CHECK((res_bridges.count(part) > 0) == expect);
        }
    }
}

TEST_CASE("cycle basis size equals the boundary-map kernel rank") {
    // rank of ker(d_*) over Z, via the Smith form of the incidence matrix
    std::mt19937 rng(2718);
    for (int iter = 0; iter < 40; ++iter) {
        DualGraph g = testutil::random_multigraph(rng);
        size_t nv = g.vertices.size(), ne = g.edges.size();
        std::map<std::string, size_t> idx;
        for (size_t i = 0; i < nv; ++i) idx[g.vertices[i].id] = i;
        IMat d(nv, ne);
        for (size_t k = 0; k < ne; ++k) {
            const Edge& e = g.edges[k];
            if (e.tail == e.head) continue;
            d(idx[e.head], k) += Int(1);
            d(idx[e.tail], k) -= Int(1);
        }
        size_t kernel_rank = ne - smith_normal_form(d).rank;
        CHECK(cycle_basis(g).size() == kernel_rank);
    }
}

TEST_CASE("JSON round-trip is stable") {
    DualGraph g;
    g.p = 23;
    g.vertices = {{"X0", 0, "X_0"}, {"Xinf", 0, "X_infinity"}};
    g.edges = {{"x0", "Xinf", "X0", 3, BranchData{"0", "0"}, std::string("6")},
               {"x19", "Xinf", "X0", 1, BranchData{"19", "19"}, std::string("1")}};
    validate(g);
    std::string once = graph_to_json(g);
    DualGraph h = graph_from_json(once);
    CHECK(graph_to_json(h) == once);
    CHECK(h.p == 23);
    CHECK(h.edge("x0").branch->tail_coord == "0");
    CHECK(*h.edge("x0").c == "6");
}

TEST_SUITE_END();
