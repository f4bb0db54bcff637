#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "neron/dualgraph.hpp"
#include "neron/smith.hpp"

namespace neron {

// vertex id -> integer coefficient
using Multidegree = std::map<std::string, long long>;
using VerticalDivisor = std::map<std::string, long long>;

// a defines a Cartier divisor iff a(C) = a(C') mod e(x) at every edge x;
// self-loops impose nothing.
bool is_locally_principal(const DualGraph& g, const VerticalDivisor& a);

// deg_C = sum over non-loop edge ends at C of (a(C'_x) - a(C)) / e(x).
// Throws if a is not locally principal. Total degree is zero.
Multidegree multidegree_of(const DualGraph& g, const VerticalDivisor& a);

// Component group of the Neron model, presented as the cokernel of the
// Laplacian of the resolved graph on zero-sum vectors. Classes of
// multidegrees on the original graph are taken by zero-extension.
class ComponentGroup {
  public:
    static ComponentGroup of(const DualGraph& g);

    const DualGraph& original_graph() const { return original_; }
    const ResolveResult& resolution() const { return res_; }
    const AbelianGroup& group() const { return group_; }

    std::vector<Int> invariant_factors() const { return group_.invariant_factors(); }
    Int order() const { return group_.order(); }

    // class of a zero-sum multidegree (keys from the original or resolved
    // graph; missing vertices count as zero). Throws on nonzero total degree.
    std::vector<Int> class_of(const Multidegree& m) const;
    bool is_zero(const Multidegree& m) const;
    Int order_of(const Multidegree& m) const;
    // smallest k >= 0 with k*target = value in the group, if any
    std::optional<Int> solve_multiple(const Multidegree& target, const Multidegree& value) const;

    // order of the subgroup generated by multidegrees supported on the
    // original vertices (the group presented by the unresolved model)
    Int image_subgroup_order() const;

    // Stage-(i) solver: a on the original vertices, locally principal, with
    // multidegree_of(g, a) = m; normalized so the first vertex gets 0.
    std::optional<VerticalDivisor> solve_vertical(const Multidegree& m) const;
    // same solution extended to the chain vertices of the resolved graph
    std::optional<VerticalDivisor> solve_vertical_resolved(const Multidegree& m) const;

  private:
    DualGraph original_;
    ResolveResult res_;
    AbelianGroup group_;
    std::map<std::string, size_t> vidx_;  // resolved vertex -> index

    std::vector<Int> lift(const Multidegree& m) const;
};

// Phi~/Phi = (⊕_x Z/e(x)Z) / q d* Z^{S0}, ambient coordinates indexed by the
// edges of g in storage order.
AbelianGroup phi_quotient(const DualGraph& g);

// Image of position i on edge y: class of i in the
// y-coordinate of the quotient above.
std::vector<Int> edge_position_class(const AbelianGroup& quotient, const DualGraph& g,
                                     const std::string& edge_id, long long position);

// Whether Z/e(y) -> Phi~/Phi, 1 -> (unit at y), is injective.
bool edge_factor_injective(const AbelianGroup& quotient, const DualGraph& g,
                           const std::string& edge_id);

}  // namespace neron
