#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "neron/compgroup.hpp"
#include "neron/cx.hpp"
#include "neron/divisors.hpp"
#include "neron/dualgraph.hpp"
#include "neron/ssgraph.hpp"

namespace neron {

// Special fibre of X_0(p): two projective lines Xinf and X0 crossing at the
// supersingular points, thickness 2 at j = 1728 (p = 3 mod 4) and 3 at
// j = 0 (p = 2 mod 3). The resolution inserts the components F (under
// 1728) and G, H (under 0), G meeting Xinf.
struct X0pModel {
    uint32_t p;
    long long n;  // numerator of (p-1)/12
    SupersingularLocus locus;
    CxTable cx;
    DualGraph graph;       // unresolved model, edges carry branch data and c
    DualGraph resolved;    // minimal regular model, F/G/H named
    DualGraph blowup1728;  // only the 1728 point resolved (the model X')
    ComponentGroup phi;    // cyclic of order n
    bool has_F = false;
    bool has_GH = false;
    // display name (F, G, H) -> vertex id in `resolved`
    std::map<std::string, std::string> special_components;

    std::string edge_id(const Fq& j) const;
};

X0pModel build_x0p_model(uint64_t p);

// Image of each component of the regular model in Phi, as the multiple of
// the generator phi = class(X0 - Xinf); re-derived from the graph.
std::map<std::string, long long> component_images(const X0pModel& model);

enum class Verdict { Proved, ProvedByCycleComputation, Inconclusive };
std::string verdict_name(Verdict v);

struct ComponentVerdict {
    std::string component;
    Verdict verdict;
    std::string detail;
    std::vector<Fq> cycle_factors;
    std::optional<Fq> cycle_product;
    std::vector<std::string> cycle_edges;
};

struct CuspidalIntersectionReport {
    uint32_t p;
    long long n;
    std::vector<ComponentVerdict> components;
    bool proved;  // every present component Proved / ProvedByCycleComputation
};

CuspidalIntersectionReport verify_cuspidal_intersection(uint64_t p);
CuspidalIntersectionReport verify_cuspidal_intersection(const X0pModel& model);

}  // namespace neron
