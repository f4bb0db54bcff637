#include "neron/cx.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace neron {

namespace {

std::vector<Fq> correspondence_cubic(const Fq& j) {
    // (T+16)^3 - jT, ascending coefficients
    PrimeField F(j.p);
    return {F.elem(4096), F.elem(768) - j, F.elem(48), F.one()};
}

}  // namespace

const Fq& CxTable::at(const Fq& j) const {
    for (const CxEntry& e : entries)
        if (e.j == j) return e.c;
    throw std::out_of_range("CxTable: no entry at j = " + j.str());
}

bool CxTable::has(const Fq& j) const {
    for (const CxEntry& e : entries)
        if (e.j == j) return true;
    return false;
}

std::vector<T2Neighbor> t2_neighbors(const Fq& j, const SupersingularLocus& locus) {
    if (!locus.contains(j))
        throw std::invalid_argument("t2_neighbors: " + j.str() + " is not supersingular");
    PrimeField F(j.p);
    std::vector<Fq> roots = find_roots(correspondence_cubic(j), WhichField::Fp2);
    std::vector<T2Neighbor> out;
    Fq c4096 = F.elem(4096), c16 = F.elem(16);
    for (size_t i = 0; i < roots.size();) {
        size_t k = i;
        while (k < roots.size() && roots[k] == roots[i]) ++k;
        Fq u = roots[i];
        Fq v = c4096 / u;
        Fq w = v + c16;
        Fq jt = w * w * w / v;
        if (!locus.contains(jt))
            throw std::logic_error("t2_neighbors: target " + jt.str() + " is not supersingular");
        out.push_back({u, v, jt, static_cast<int>(k - i)});
        i = k;
    }
    return out;
}

Fq transport_cx(const Fq& j_source, const Fq& delta, int e_source, const T2Neighbor& nb,
                int e_target, int e_y) {
    if (delta.is_zero()) throw std::invalid_argument("transport_cx: zero coefficient");
    if (e_y < 1 || e_source % e_y != 0 || e_target % e_y != 0)
        throw std::invalid_argument("transport_cx: e_y must divide both thicknesses");
    const long long p1 = static_cast<long long>(j_source.p) + 1;
    const int k = e_source / e_y;
    const int l = e_target / e_y;

    std::vector<Fq> ns = correspondence_cubic(j_source);
    for (int i = 0; i < k; ++i)
        if (!detail::taylor_coeff(ns, nb.u, i).is_zero())
            throw std::logic_error("transport_cx: source order does not match e(x)/e(y)");
    Fq lead_s = detail::taylor_coeff(ns, nb.u, k);
    if (lead_s.is_zero()) throw std::logic_error("transport_cx: vanishing leading coefficient");
    Fq beta = lead_s / nb.u;

    std::vector<Fq> nt = correspondence_cubic(nb.j_target);
    for (int i = 0; i < l; ++i)
        if (!detail::taylor_coeff(nt, nb.v, i).is_zero())
            throw std::logic_error("transport_cx: target order does not match e(x')/e(y)");
    Fq lead_t = detail::taylor_coeff(nt, nb.v, l);
    if (lead_t.is_zero()) throw std::logic_error("transport_cx: vanishing leading coefficient");
    Fq gamma = lead_t / nb.v;

    // alpha^k = delta * beta^(p+1); only the unramified source case can be
    // solved uniquely, and propagation only ever needs that case
    if (k != 1)
        throw std::logic_error("transport_cx: source ramified over the correspondence (k > 1); "
                               "k-th roots are not unique");
    Fq alpha = delta * beta.pow(p1);
    Fq ratio = nb.u / nb.v;
    return alpha.pow(l) * ratio.pow(static_cast<long long>(l) * p1) * gamma.pow(-p1);
}

CxTable propagate_cx(const SupersingularLocus& locus, std::optional<Fq> base) {
    if (locus.p < 23) throw std::invalid_argument("propagate_cx: requires p >= 23");
    PrimeField F(locus.p);
    if (!base) {
        for (const SupersingularPoint& pt : locus.points)
            if (pt.rational && pt.e == 1) {
                base = pt.j;
                break;
            }
        if (!base) throw std::runtime_error("propagate_cx: no rational point with e = 1");
    }
    if (!locus.contains(*base) || locus.at(*base).e != 1)
        throw std::invalid_argument("propagate_cx: base must be supersingular with e = 1");

    std::vector<std::pair<Fq, Fq>> values;  // (j, delta)
    auto lookup = [&](const Fq& j) -> Fq* {
        for (auto& kv : values)
            if (kv.first == j) return &kv.second;
        return nullptr;
    };
    values.push_back({*base, F.one()});
    std::deque<Fq> queue = {*base};
    while (!queue.empty()) {
        Fq j = queue.front();
        queue.pop_front();
        int e_src = locus.at(j).e;
        if (e_src != 1) continue;  // only unramified sources are expanded
        Fq delta = *lookup(j);
        for (const T2Neighbor& nb : t2_neighbors(j, locus)) {
            int e_tgt = locus.at(nb.j_target).e;
            // e_y = e_src / mult = 1 here; the mult/e consistency is
            // checked inside transport_cx
            Fq next = transport_cx(j, delta, e_src, nb, e_tgt, 1);
            if (Fq* known = lookup(nb.j_target)) {
                if (*known != next)
                    throw std::runtime_error("propagate_cx: inconsistent transport at j = " +
                                             nb.j_target.str());
            } else {
                values.push_back({nb.j_target, next});
                queue.push_back(nb.j_target);
            }
        }
    }

    CxTable table{locus.p, *base, {}};
    for (const SupersingularPoint& pt : locus.points) {
        Fq* val = lookup(pt.j);
        if (!val)
            throw std::runtime_error("propagate_cx: unreached point j = " + pt.j.str() +
                                     " (2-isogeny graph disconnected?)");
        if (val->is_zero()) throw std::logic_error("propagate_cx: zero coefficient");
        table.entries.push_back({pt.j, pt.e, *val});
    }
    return table;
}

CxTable propagate_cx(uint64_t p, std::optional<Fq> base) {
    return propagate_cx(supersingular_j_invariants(p), base);
}

Fq product_formula_constant(const CxTable& table) {
    if (table.entries.empty()) throw std::invalid_argument("product_formula_constant: empty table");
    PrimeField F(table.p);
    long long e = 1;
    for (const CxEntry& en : table.entries) e = std::lcm(e, static_cast<long long>(en.e));
    const long long p1 = static_cast<long long>(table.p) + 1;
    std::optional<Fq> alpha;
    for (const CxEntry& x : table.entries) {
        Fq prod = F.one();
        for (const CxEntry& y : table.entries) {
            if (y.j == x.j) continue;
            prod = prod * (y.j - x.j).pow(p1 * (e / y.e));
        }
        Fq ratio = x.c.pow(e / x.e) / prod;
        if (!alpha) alpha = ratio;
        else if (*alpha != ratio)
            throw std::runtime_error("product_formula_constant: ratios are not constant");
    }
    if (!alpha->is_rational() || alpha->is_zero())
        throw std::runtime_error("product_formula_constant: value not in F_p^*");
    return *alpha;
}

std::optional<Fq> tables_gauge_ratio(const CxTable& t1, const CxTable& t2) {
    if (t1.p != t2.p || t1.entries.size() != t2.entries.size()) return std::nullopt;
    // lambda from any e = 1 entry, then check c2(x) = lambda^e(x) c1(x)
    std::optional<Fq> lambda;
    for (const CxEntry& en : t1.entries)
        if (en.e == 1) {
            lambda = t2.at(en.j) / en.c;
            break;
        }
    if (!lambda) return std::nullopt;
    for (const CxEntry& en : t1.entries) {
        if (!t2.has(en.j)) return std::nullopt;
        if (t2.at(en.j) != lambda->pow(en.e) * en.c) return std::nullopt;
    }
    return lambda;
}

}  // namespace neron
