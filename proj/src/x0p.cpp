#include "neron/x0p.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace neron {

std::string X0pModel::edge_id(const Fq& j) const { return "x" + j.str(); }

namespace {

void rename_vertex(DualGraph& g, const std::string& from, const std::string& to) {
    for (Vertex& v : g.vertices)
        if (v.id == from) {
            v.id = to;
            v.name = to;
        }
    for (Edge& e : g.edges) {
        if (e.tail == from) e.tail = to;
        if (e.head == from) e.head = to;
    }
}

}  // namespace

X0pModel build_x0p_model(uint64_t p) {
    if (p < 23)
        throw std::invalid_argument("build_x0p_model: requires p >= 23 (genus at least two)");
    X0pModel m{static_cast<uint32_t>(p),
               0,
               supersingular_j_invariants(p),
               {},
               {},
               {},
               {},
               {},
               false,
               false,
               {}};
    m.n = static_cast<long long>(p - 1) / std::gcd<long long>(p - 1, 12);
    m.cx = propagate_cx(m.locus);
    m.has_F = p % 4 == 3;
    m.has_GH = p % 3 == 2;

    PrimeField F(p);
    DualGraph g;
    g.p = p;
    g.vertices.push_back({"Xinf", 0, "X_infinity"});
    g.vertices.push_back({"X0", 0, "X_0"});
    std::string edge1728, edge0;
    for (const SupersingularPoint& pt : m.locus.points) {
        Edge e;
        e.id = m.edge_id(pt.j);
        e.tail = "Xinf";
        e.head = "X0";
        e.e = pt.e;
        e.branch = BranchData{pt.j.str(), pt.j.frobenius().str()};
        e.c = m.cx.at(pt.j).str();
        g.edges.push_back(e);
        if (pt.e == 2) edge1728 = e.id;
        if (pt.e == 3) edge0 = e.id;
    }
    validate(g);
    m.graph = g;

    ResolveResult full = resolve(g);
    m.resolved = full.graph;
    if (m.has_F) {
        m.special_components["F"] = edge1728 + "@1";
        rename_vertex(m.resolved, edge1728 + "@1", "F");
    }
    if (m.has_GH) {
        m.special_components["G"] = edge0 + "@1";
        m.special_components["H"] = edge0 + "@2";
        rename_vertex(m.resolved, edge0 + "@1", "G");
        rename_vertex(m.resolved, edge0 + "@2", "H");
    }
    validate(m.resolved);

    std::set<std::string> only1728;
    if (m.has_F) only1728.insert(edge1728);
    m.blowup1728 = resolve_edges(g, only1728).graph;

    m.phi = ComponentGroup::of(g);
    std::vector<Int> inv = m.phi.invariant_factors();
    bool cyclic_n = (m.n == 1 && inv.empty()) || (inv.size() == 1 && inv[0] == Int(m.n));
    if (!cyclic_n)
        throw std::runtime_error("build_x0p_model: component group is not cyclic of order n");
    return m;
}

std::map<std::string, long long> component_images(const X0pModel& model) {
    Multidegree gen;
    gen["X0"] = 1;
    gen["Xinf"] = -1;
    std::map<std::string, long long> out;
    for (const Vertex& v : model.resolved.vertices) {
        // resolved graph inside the component group uses the raw chain ids
        std::string internal = v.id;
        for (const auto& [disp, raw] : model.special_components)
            if (disp == v.id) internal = raw;
        Multidegree diff;
        diff[internal] += 1;
        diff["Xinf"] -= 1;
        auto k = model.phi.solve_multiple(gen, diff);
        if (!k) throw std::logic_error("component_images: phi does not generate");
        out[v.id] = k->to_int64();
    }
    return out;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Proved: return "Proved";
        case Verdict::ProvedByCycleComputation: return "ProvedByCycleComputation";
        default: return "Inconclusive";
    }
}

namespace {

// the generalized explicit check that no point of F maps into the cuspidal
// group: cycle computation on the blow-up at 1728
ComponentVerdict check_F_by_cycle(const X0pModel& model) {
    ComponentVerdict cv{"F", Verdict::Inconclusive, "", {}, std::nullopt, {}};
    PrimeField F(model.p);
    const DualGraph& g = model.blowup1728;

    // direct crossings usable for the cycle: rational j != 1728, ordered by
    // (e, residue); pairs are scanned until one carries the obstruction
    std::vector<const SupersingularPoint*> cands;
    for (const SupersingularPoint& pt : model.locus.points)
        if (pt.rational && pt.e != 2) cands.push_back(&pt);
    std::sort(cands.begin(), cands.end(), [](const SupersingularPoint* a, const SupersingularPoint* b) {
        if (a->e != b->e) return a->e < b->e;
        return a->j.a < b->j.a;
    });
    if (cands.size() < 2) {
        cv.detail = "fewer than two rational crossings away from 1728";
        return cv;
    }

    long long n = model.n;
    long long m = 0;  // inverse of 2 mod n (n odd since p = 3 mod 4)
    for (long long k = 1; k < 2 * n; ++k)
        if ((2 * k) % n == 1 % n) {
            m = k;
            break;
        }
    // divisor m*0 - (m-1)*inf - P with P on F away from the two nodes
    std::string f_id = "F";
    // blow-up graph keeps the raw chain name for the new component
    for (const Vertex& v : g.vertices)
        if (v.id.find('@') != std::string::npos) f_id = v.id;
    DivisorSpec E = {{"X0", std::nullopt, m},
                     {"Xinf", std::nullopt, -(m - 1)},
                     {f_id, F.one(), -1}};

    ComponentGroup cg = ComponentGroup::of(g);
    auto a = cg.solve_vertical(multidegree_of_divisor(g, E));
    if (!a) {
        cv.detail = "no locally principal divisor matches the multidegree";
        return cv;
    }
    std::map<std::string, RationalFunctionOnLine> funcs;
    for (const Vertex& v : g.vertices)
        funcs[v.id] = function_with_divisor(required_divisor(g, *a, E, v.id, F), F);
    EdgeCoefficients coeffs = edge_coefficients_from_graph(g, F);

    for (size_t i = 0; i < cands.size(); ++i) {
        for (size_t k = i + 1; k < cands.size(); ++k) {
            std::string e1 = model.edge_id(cands[i]->j), e2 = model.edge_id(cands[k]->j);
            Cycle cyc;
            cyc.start = "Xinf";
            cyc.steps = {{e1, true}, {e2, false}};
            std::vector<Fq> factors = cycle_factors(g, coeffs, *a, funcs, cyc, F);
            Fq prod = F.one();
            for (const Fq& factor : factors) prod = prod * factor;
            if (!cv.cycle_product) {  // remember the first cycle tried
                cv.cycle_edges = {e1, e2};
                cv.cycle_factors = factors;
                cv.cycle_product = prod;
            }
            if (prod != F.one()) {
                cv.cycle_edges = {e1, e2};
                cv.cycle_factors = factors;
                cv.cycle_product = prod;
                cv.verdict = Verdict::ProvedByCycleComputation;
                cv.detail = "cycle product " + prod.str() + " != 1";
                return cv;
            }
        }
    }
    cv.detail = "every crossing cycle has product 1; no obstruction found";
    return cv;
}

}  // namespace

CuspidalIntersectionReport verify_cuspidal_intersection(const X0pModel& model) {
    CuspidalIntersectionReport rep{model.p, model.n, {}, false};
    size_t npoints = model.locus.points.size();

    {
        ComponentVerdict cv{"X_infinity", Verdict::Inconclusive, "", {}, std::nullopt, {}};
        if (npoints >= 2) {
            cv.verdict = Verdict::Proved;
            cv.detail = "two distinct supersingular points force constancy";
        }
        rep.components.push_back(cv);
        cv.component = "X_0";
        rep.components.push_back(cv);
    }

    if (model.has_GH) {
        ComponentVerdict cv{"G", Verdict::Inconclusive, "", {}, std::nullopt, {}};
        const Fq* wx = nullptr;
        const Fq* wy = nullptr;
        long long exp = static_cast<long long>(model.p) - 2;
        for (size_t i = 0; i < npoints && !wx; ++i) {
            if (model.locus.points[i].j.is_zero()) continue;
            for (size_t k = i + 1; k < npoints; ++k) {
                if (model.locus.points[k].j.is_zero()) continue;
                if (model.locus.points[i].j.pow(exp) != model.locus.points[k].j.pow(exp)) {
                    wx = &model.locus.points[i].j;
                    wy = &model.locus.points[k].j;
                    break;
                }
            }
        }
        if (wx) {
            cv.verdict = Verdict::Proved;
            cv.detail = "x = " + wx->str() + ", y = " + wy->str() + " have x^(p-2) != y^(p-2)";
        } else {
            cv.detail = "no separating pair for the section of O(-2G-H)";
        }
        rep.components.push_back(cv);
        cv.component = "H";  // same criterion through the Fricke involution
        rep.components.push_back(cv);
    }

    if (model.has_F) {
        bool rational_non1728 = false, irrational = false;
        for (const SupersingularPoint& pt : model.locus.points) {
            if (pt.rational && pt.e != 2) rational_non1728 = true;
            if (!pt.rational) irrational = true;
        }
        if (rational_non1728 && irrational) {
            ComponentVerdict cv{"F", Verdict::Proved,
                                "supersingular invariants exist both in F_p - {1728} and outside F_p",
                                {}, std::nullopt, {}};
            rep.components.push_back(cv);
        } else {
            rep.components.push_back(check_F_by_cycle(model));
        }
    }

    rep.proved = true;
    for (const ComponentVerdict& cv : rep.components)
        if (cv.verdict == Verdict::Inconclusive) rep.proved = false;
    return rep;
}

CuspidalIntersectionReport verify_cuspidal_intersection(uint64_t p) { return verify_cuspidal_intersection(build_x0p_model(p)); }

}  // namespace neron
