#pragma once

#include <random>
#include <stdexcept>
#include <string>

#include "neron/bigint.hpp"
#include "neron/dualgraph.hpp"
#include "neron/smith.hpp"

namespace testutil {

// Fraction-free Bareiss determinant; independent of the Smith-form path.
inline neron::Int bareiss_det(neron::IMat m) {
    using neron::Int;
    if (m.rows != m.cols) throw std::invalid_argument("bareiss_det: square matrices only");
    size_t n = m.rows;
    if (n == 0) return Int(1);
    Int prev(1);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k).is_zero()) {
            size_t swap_row = k + 1;
            while (swap_row < n && m(swap_row, k).is_zero()) ++swap_row;
            if (swap_row == n) return Int(0);
            for (size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap_row, j));
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    Int det = m(n - 1, n - 1);
    return sign < 0 ? -det : det;
}

// Matrix-tree count of spanning trees (self-loops ignored).
inline neron::Int spanning_tree_count(const neron::DualGraph& g) {
    using namespace neron;
    size_t n = g.vertices.size();
    if (n == 1) return Int(1);
    std::map<std::string, size_t> idx;
    for (size_t i = 0; i < n; ++i) idx[g.vertices[i].id] = i;
    IMat lap(n, n);
    for (const Edge& e : g.edges) {
        if (e.tail == e.head) continue;
        size_t a = idx[e.tail], b = idx[e.head];
        lap(a, a) += Int(1);
        lap(b, b) += Int(1);
        lap(a, b) -= Int(1);
        lap(b, a) -= Int(1);
    }
    IMat red(n - 1, n - 1);
    for (size_t i = 1; i < n; ++i)
        for (size_t j = 1; j < n; ++j) red(i - 1, j - 1) = lap(i, j);
    return bareiss_det(std::move(red));
}

// Seeded random connected multigraph: <= max_v vertices, <= max_e edges
// (self-loops and parallels allowed), thickness in [1, max_thick].
inline neron::DualGraph random_multigraph(std::mt19937& rng, int max_v = 8, int max_e = 12,
                                          int max_thick = 6, bool random_genus = false) {
    using namespace neron;
    int nv = 2 + static_cast<int>(rng() % static_cast<unsigned>(max_v - 1));
    DualGraph g;
    for (int i = 0; i < nv; ++i) {
        Vertex v;
        v.id = "v" + std::to_string(i);
        v.genus = random_genus ? static_cast<long long>(rng() % 2) : 0;
        v.name = v.id;
        g.vertices.push_back(v);
    }
    int ne = (nv - 1) + static_cast<int>(rng() % static_cast<unsigned>(max_e - nv + 2));
    int eid = 0;
    auto add_edge = [&](int a, int b) {
        Edge e;
        e.id = "e" + std::to_string(eid++);
        e.tail = "v" + std::to_string(a);
        e.head = "v" + std::to_string(b);
        e.e = 1 + static_cast<long long>(rng() % static_cast<unsigned>(max_thick));
        g.edges.push_back(e);
    };
    for (int i = 1; i < nv; ++i) add_edge(static_cast<int>(rng() % static_cast<unsigned>(i)), i);
    for (int k = nv - 1; k < ne; ++k) {
        int a = static_cast<int>(rng() % static_cast<unsigned>(nv));
        int b = static_cast<int>(rng() % static_cast<unsigned>(nv));
        if (a == b && rng() % 4 != 0) b = (a + 1) % nv;  // self-loops kept occasionally
        add_edge(a, b);
    }
    validate(g);
    return g;
}

}  // namespace testutil
