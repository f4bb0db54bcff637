#include "neron/divisors.hpp"

#include <algorithm>
#include <stdexcept>

namespace neron {

namespace {

LinePoint parse_coord(const std::string& s, const PrimeField& F) {
    if (s == "inf") return std::nullopt;
    return F.parse(s);
}

std::string point_str(const LinePoint& x) { return x ? x->str() : "inf"; }

long long vcoeff(const VerticalDivisor& a, const std::string& id) {
    auto it = a.find(id);
    return it == a.end() ? 0 : it->second;
}

}  // namespace

EdgeCoefficients edge_coefficients_from_graph(const DualGraph& g, const PrimeField& F) {
    EdgeCoefficients out;
    for (const Edge& e : g.edges)
        if (e.c) out[e.id] = F.parse(*e.c);
    return out;
}

EdgeCoefficients edge_coefficients_from_cx(const DualGraph& g, const CxTable& cx) {
    PrimeField F(cx.p);
    EdgeCoefficients out;
    for (const Edge& e : g.edges) {
        if (!e.branch) continue;
        LinePoint j = parse_coord(e.branch->tail_coord, F);
        if (j && cx.has(*j)) out[e.id] = cx.at(*j);
    }
    return out;
}

Multidegree multidegree_of_divisor(const DualGraph& g, const DivisorSpec& E) {
    Multidegree m;
    for (const Vertex& v : g.vertices) m[v.id] = 0;
    for (const DivisorEntry& en : E) {
        g.vertex(en.vertex);  // throws on unknown id
        m[en.vertex] += en.mult;
    }
    return m;
}

std::vector<std::pair<LinePoint, long long>> required_divisor(const DualGraph& g,
                                                              const VerticalDivisor& a,
                                                              const DivisorSpec& E,
                                                              const std::string& C,
                                                              const PrimeField& F) {
    std::map<std::string, long long> acc;  // keyed by printable coordinate
    std::map<std::string, LinePoint> pts;
    auto add = [&](const LinePoint& x, long long mult) {
        std::string k = point_str(x);
        acc[k] += mult;
        pts[k] = x;
    };
    for (const DivisorEntry& en : E)
        if (en.vertex == C) add(en.point, en.mult);
    for (const Edge& e : g.edges) {
        if (!e.branch && (e.tail == C || e.head == C))
            throw std::invalid_argument("required_divisor: edge " + e.id + " has no branch data");
        if (e.tail == C && e.head != C) {
            long long d = vcoeff(a, e.head) - vcoeff(a, e.tail);
            if (d % e.e != 0) throw std::invalid_argument("required_divisor: a not locally principal");
            add(parse_coord(e.branch->tail_coord, F), -d / e.e);
        } else if (e.head == C && e.tail != C) {
            long long d = vcoeff(a, e.tail) - vcoeff(a, e.head);
            if (d % e.e != 0) throw std::invalid_argument("required_divisor: a not locally principal");
            add(parse_coord(e.branch->head_coord, F), -d / e.e);
        }
        // self-loops at C contribute zero on both branches
    }
    long long total = 0;
    std::vector<std::pair<LinePoint, long long>> out;
    for (const auto& [k, mult] : acc) {
        total += mult;
        if (mult != 0) out.push_back({pts[k], mult});
    }
    if (total != 0) throw std::logic_error("required_divisor: nonzero degree on " + C);
    return out;
}

RationalFunctionOnLine function_with_divisor(
    const std::vector<std::pair<LinePoint, long long>>& divisor, const PrimeField& F) {
    RationalFunctionOnLine f;
    f.scale = F.one();
    long long finite_sum = 0, inf_mult = 0;
    for (const auto& [pt, mult] : divisor) {
        if (pt) {
            f.zeros_poles.push_back({*pt, mult});
            finite_sum += mult;
        } else {
            inf_mult = mult;
        }
    }
    if (finite_sum + inf_mult != 0)
        throw std::invalid_argument("function_with_divisor: divisor has nonzero degree");
    std::sort(f.zeros_poles.begin(), f.zeros_poles.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    return f;
}

LeadingTerm leading_term(const RationalFunctionOnLine& f, const LinePoint& x) {
    if (f.scale.is_zero()) throw std::invalid_argument("leading_term: zero function");
    LeadingTerm lt;
    lt.coeff = f.scale;
    if (x) {
        for (const auto& [r, m] : f.zeros_poles) {
            if (r == *x) lt.order = m;
            else lt.coeff = lt.coeff * (*x - r).pow(m);
        }
    } else {
        // at infinity, in the coordinate 1/j the leading coefficient of a
        // monic product is the scale itself
        long long deg = 0;
        for (const auto& [r, m] : f.zeros_poles) {
            (void)r;
            deg += m;
        }
        lt.order = -deg;
    }
    return lt;
}

std::vector<Fq> cycle_factors(const DualGraph& g, const EdgeCoefficients& c,
                              const VerticalDivisor& a,
                              const std::map<std::string, RationalFunctionOnLine>& f,
                              const Cycle& cycle, const PrimeField& F) {
    std::vector<Fq> out;
    std::string at = cycle.start;
    for (const CycleStep& step : cycle.steps) {
        const Edge& e = g.edge(step.edge);
        const std::string& from = step.forward ? e.tail : e.head;
        const std::string& to = step.forward ? e.head : e.tail;
        if (from != at)
            throw std::invalid_argument("cycle_product: walk is not contiguous at " + at);
        if (!e.branch)
            throw std::invalid_argument("cycle_product: edge " + e.id + " has no branch data");
        auto cit = c.find(e.id);
        if (cit == c.end())
            throw std::invalid_argument("cycle_product: edge " + e.id + " has no c coefficient");
        long long diff = vcoeff(a, to) - vcoeff(a, from);
        if (diff % e.e != 0)
            throw std::invalid_argument("cycle_product: non-integral exponent at edge " + e.id);
        long long exp = diff / e.e;
        LinePoint x_from = parse_coord(step.forward ? e.branch->tail_coord : e.branch->head_coord, F);
        LinePoint x_to = parse_coord(step.forward ? e.branch->head_coord : e.branch->tail_coord, F);
        LeadingTerm lt_from = leading_term(f.at(from), x_from);
        LeadingTerm lt_to = leading_term(f.at(to), x_to);
        if (lt_from.order != -exp || lt_to.order != exp)
            throw std::logic_error("cycle_product: tensor orders do not cancel at edge " + e.id);
        out.push_back(lt_from.coeff / lt_to.coeff * cit->second.pow(exp));
        at = to;
    }
    if (at != cycle.start) throw std::invalid_argument("cycle_product: walk does not close");
    return out;
}

Fq cycle_product(const DualGraph& g, const EdgeCoefficients& c, const VerticalDivisor& a,
                 const std::map<std::string, RationalFunctionOnLine>& f, const Cycle& cycle,
                 const PrimeField& F) {
    Fq prod = F.one();
    for (const Fq& factor : cycle_factors(g, c, a, f, cycle, F)) prod = prod * factor;
    return prod;
}

TrivialityDecision is_trivial(const ComponentGroup& cg, const EdgeCoefficients& c,
                              const DivisorSpec& E, const PrimeField& F) {
    const DualGraph& g = cg.original_graph();
    long long total = 0;
    for (const DivisorEntry& en : E) total += en.mult;
    if (total != 0) throw std::invalid_argument("is_trivial: divisor has nonzero total degree");
    for (const Vertex& v : g.vertices)
        if (v.genus != 0)
            throw std::invalid_argument("is_trivial: component " + v.id + " has positive genus");
    // support must avoid the double points
    for (const DivisorEntry& en : E) {
        for (const Edge& e : g.edges) {
            if (!e.branch) continue;
            if (e.tail == en.vertex && parse_coord(e.branch->tail_coord, F) == en.point)
                throw std::invalid_argument("is_trivial: divisor meets the singular locus");
            if (e.head == en.vertex && parse_coord(e.branch->head_coord, F) == en.point)
                throw std::invalid_argument("is_trivial: divisor meets the singular locus");
        }
    }

    // stage (i): multidegree in the image of the locally principal divisors
    Multidegree m = multidegree_of_divisor(g, E);
    auto a = cg.solve_vertical(m);
    if (!a) return {TrivialityKind::NonzeroComponentClass, std::nullopt, std::nullopt};

    // stage (ii): on genus-zero components a degree-zero divisor is
    // principal; build the functions (degree zero is asserted inside)
    std::map<std::string, RationalFunctionOnLine> f;
    for (const Vertex& v : g.vertices)
        f[v.id] = function_with_divisor(required_divisor(g, *a, E, v.id, F), F);

    // stage (iii): cycle conditions over a fundamental basis
    for (const Cycle& cyc : cycle_basis(g)) {
        Fq prod = cycle_product(g, c, *a, f, cyc, F);
        if (prod != F.one()) return {TrivialityKind::NonzeroCycleObstruction, cyc, prod};
    }
    return {TrivialityKind::Zero, std::nullopt, std::nullopt};
}

TrivialityDecision is_trivial(const DualGraph& g, const EdgeCoefficients& c, const DivisorSpec& E,
                              const PrimeField& F) {
    return is_trivial(ComponentGroup::of(g), c, E, F);
}

}  // namespace neron
