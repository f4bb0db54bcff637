#pragma once

#include <optional>
#include <vector>

#include "neron/ff.hpp"
#include "neron/ssgraph.hpp"

namespace neron {

// One point of the degree-2 correspondence over a supersingular j: the
// coordinate u with uv = 2^12, the partner v, and the other image
// j_target = (v+16)^3 / v. mult is the multiplicity of u as a root of
// (T+16)^3 - jT, which equals e(source)/e(y).
struct T2Neighbor {
    Fq u;
    Fq v;
    Fq j_target;
    int mult;
};

// Roots of (T+16)^3 - jT over F_{p^2}. j must be supersingular; every
// target is checked to be supersingular again.
std::vector<T2Neighbor> t2_neighbors(const Fq& j, const SupersingularLocus& locus);

// Moves a glueing coefficient across one correspondence point. delta is
// the coefficient at the source (relative to the dj x dj basis in the
// coordinates j - j(x), j - j(x)^p), the result is the coefficient at
// nb.j_target. e_y must divide both thicknesses; the source leading
// coefficient beta and target leading coefficient gamma are read off the
// Taylor expansions of (T+16)^3 - jT at u and v. The exponent p+1 is kept
// literal so F_{p^2}-valued intermediates stay correct.
Fq transport_cx(const Fq& j_source, const Fq& delta, int e_source, const T2Neighbor& nb,
                int e_target, int e_y);

struct CxEntry {
    Fq j;
    int e;
    Fq c;  // nonzero coefficient of dj x dj
};

struct CxTable {
    uint32_t p;
    Fq base;  // entry normalized to 1; has e = 1
    std::vector<CxEntry> entries;  // locus order

    const Fq& at(const Fq& j) const;
    bool has(const Fq& j) const;
};

// Breadth-first transport over the 2-isogeny graph from a thickness-one
// rational base point (default: the least such). Every point is reached;
// meeting a point twice with different values is an error.
CxTable propagate_cx(const SupersingularLocus& locus, std::optional<Fq> base = std::nullopt);
CxTable propagate_cx(uint64_t p, std::optional<Fq> base = std::nullopt);

// The constant alpha with c(x)^(e/e(x)) = alpha * prod_{y != x}
// (j(y)-j(x))^((p+1) e / e(y)) for all x, e = lcm of the e(y). Throws if
// the ratios disagree or the value leaves F_p.
Fq product_formula_constant(const CxTable& table);

// Tables from two base points agree up to the uniformizer gauge
// c(x) -> lambda^{e(x)} c(x); returns lambda if so.
std::optional<Fq> tables_gauge_ratio(const CxTable& t1, const CxTable& t2);

}  // namespace neron
