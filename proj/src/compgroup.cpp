#include "neron/compgroup.hpp"

#include <stdexcept>

namespace neron {

namespace {

long long coeff(const VerticalDivisor& a, const std::string& id) {
    auto it = a.find(id);
    return it == a.end() ? 0 : it->second;
}

}  // namespace

bool is_locally_principal(const DualGraph& g, const VerticalDivisor& a) {
    for (const auto& [id, v] : a) {
        (void)v;
        g.vertex(id);  // throws on unknown id
    }
    for (const Edge& e : g.edges) {
        if (e.tail == e.head) continue;
        long long d = coeff(a, e.tail) - coeff(a, e.head);
        if (d % e.e != 0) return false;
    }
    return true;
}

Multidegree multidegree_of(const DualGraph& g, const VerticalDivisor& a) {
    if (!is_locally_principal(g, a))
        throw std::invalid_argument("multidegree_of: divisor is not locally principal");
    Multidegree m;
    for (const Vertex& v : g.vertices) m[v.id] = 0;
    for (const Edge& e : g.edges) {
        if (e.tail == e.head) continue;
        long long d = (coeff(a, e.head) - coeff(a, e.tail)) / e.e;
        m[e.tail] += d;
        m[e.head] -= d;
    }
    return m;
}

ComponentGroup ComponentGroup::of(const DualGraph& g) {
    ComponentGroup cg;
    cg.original_ = validated(g);
    cg.res_ = resolve(cg.original_);
    const DualGraph& rg = cg.res_.graph;
    size_t n = rg.vertices.size();
    for (size_t i = 0; i < n; ++i) cg.vidx_[rg.vertices[i].id] = i;

    // Laplacian of the resolved graph (self-loops contribute nothing)
    IMat lap(n, n);
    for (const Edge& e : rg.edges) {
        if (e.tail == e.head) continue;
        size_t a = cg.vidx_[e.tail], b = cg.vidx_[e.head];
        lap(a, a) += Int(1);
        lap(b, b) += Int(1);
        lap(a, b) -= Int(1);
        lap(b, a) -= Int(1);
    }
    // matrix of the Laplacian into Z^{S0}[+] in the basis e_i - e_0, i >= 1:
    // drop row 0
    IMat m(n - 1, n);
    for (size_t i = 1; i < n; ++i)
        for (size_t j = 0; j < n; ++j) m(i - 1, j) = lap(i, j);
    cg.group_ = AbelianGroup::from_relations(std::move(m));
    return cg;
}

std::vector<Int> ComponentGroup::lift(const Multidegree& m) const {
    std::vector<Int> v(res_.graph.vertices.size());
    Int total;
    for (const auto& [id, c] : m) {
        auto it = vidx_.find(id);
        if (it == vidx_.end()) throw std::invalid_argument("class_of: unknown vertex " + id);
        v[it->second] += Int(c);
        total += Int(c);
    }
    if (!total.is_zero()) throw std::invalid_argument("class_of: multidegree has nonzero total degree");
    return v;
}

std::vector<Int> ComponentGroup::class_of(const Multidegree& m) const {
    std::vector<Int> v = lift(m);
    // coordinates in the e_i - e_0 basis: drop entry 0
    std::vector<Int> w(v.begin() + 1, v.end());
    return group_.project(w);
}

bool ComponentGroup::is_zero(const Multidegree& m) const { return group_.class_is_zero(class_of(m)); }

Int ComponentGroup::order_of(const Multidegree& m) const { return group_.order_of(class_of(m)); }

std::optional<Int> ComponentGroup::solve_multiple(const Multidegree& target,
                                                  const Multidegree& value) const {
    return group_.solve_multiple(class_of(target), class_of(value));
}

Int ComponentGroup::image_subgroup_order() const {
    std::vector<std::vector<Int>> gens;
    const std::string& base = original_.vertices.front().id;
    for (const Vertex& v : original_.vertices) {
        if (v.id == base) continue;
        Multidegree m;
        m[v.id] = 1;
        m[base] = -1;
        gens.push_back(class_of(m));
    }
    return group_.subgroup_order(gens);
}

std::optional<VerticalDivisor> ComponentGroup::solve_vertical_resolved(const Multidegree& m) const {
    std::vector<Int> v = lift(m);
    size_t n = v.size();
    // the multidegree map is minus the Laplacian: solve M h = -y with
    // M the reduced Laplacian, y = v without entry 0
    std::vector<Int> y;
    y.reserve(n - 1);
    for (size_t i = 1; i < n; ++i) y.push_back(-v[i]);
    const SmithResult& s = group_.smith();
    // z = pseudo-solve: D z' = U y
    std::vector<Int> uy(n - 1);
    for (size_t i = 0; i < n - 1; ++i)
        for (size_t j = 0; j < n - 1; ++j)
            if (!s.u(i, j).is_zero() && !y[j].is_zero()) uy[i] += s.u(i, j) * y[j];
    std::vector<Int> z(n);
    for (size_t i = 0; i < n - 1; ++i) {
        if (i < s.rank) {
            if (!(uy[i] % s.d(i, i)).is_zero()) return std::nullopt;
            z[i] = uy[i] / s.d(i, i);
        } else if (!uy[i].is_zero()) {
            return std::nullopt;
        }
    }
    // h = V z
    std::vector<Int> h(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (!s.v(i, j).is_zero() && !z[j].is_zero()) h[i] += s.v(i, j) * z[j];
    // normalize so the first original vertex gets 0
    size_t base_idx = vidx_.at(original_.vertices.front().id);
    Int shift = h[base_idx];
    VerticalDivisor out;
    for (const Vertex& v2 : res_.graph.vertices) out[v2.id] = (h[vidx_.at(v2.id)] - shift).to_int64();
    return out;
}

std::optional<VerticalDivisor> ComponentGroup::solve_vertical(const Multidegree& m) const {
    auto full = solve_vertical_resolved(m);
    if (!full) return std::nullopt;
    VerticalDivisor out;
    for (const Vertex& v : original_.vertices) out[v.id] = full->at(v.id);
    return out;
}

AbelianGroup phi_quotient(const DualGraph& g) {
    DualGraph gg = validated(g);
    size_t ne = gg.edges.size();
    size_t nv = gg.vertices.size();
    std::map<std::string, size_t> vidx;
    for (size_t i = 0; i < nv; ++i) vidx[gg.vertices[i].id] = i;
    // ambient Z^{S1}; relations: e(x) * unit_x for each edge, and q d* (one
    // column per vertex: entries t* - s*)
    IMat rel(ne, ne + nv);
    for (size_t i = 0; i < ne; ++i) rel(i, i) = Int(gg.edges[i].e);
    for (size_t i = 0; i < ne; ++i) {
        const Edge& e = gg.edges[i];
        if (e.tail == e.head) continue;  // d* difference vanishes on loops
        rel(i, ne + vidx[e.head]) += Int(1);
        rel(i, ne + vidx[e.tail]) -= Int(1);
    }
    return AbelianGroup::from_relations(std::move(rel));
}

std::vector<Int> edge_position_class(const AbelianGroup& quotient, const DualGraph& g,
                                     const std::string& edge_id, long long position) {
    const Edge& e = g.edge(edge_id);
    if (position < 1 || position > e.e)
        throw std::out_of_range("edge_position_class: position out of range");
    std::vector<Int> v(g.edges.size());
    for (size_t i = 0; i < g.edges.size(); ++i)
        if (g.edges[i].id == edge_id) v[i] = Int(position);
    return quotient.project(v);
}

bool edge_factor_injective(const AbelianGroup& quotient, const DualGraph& g,
                           const std::string& edge_id) {
    const Edge& e = g.edge(edge_id);
    std::vector<Int> cls = edge_position_class(quotient, g, edge_id, 1);
    return quotient.order_of(cls) == Int(e.e);
}

}  // namespace neron
