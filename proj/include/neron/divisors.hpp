#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "neron/compgroup.hpp"
#include "neron/cx.hpp"
#include "neron/dualgraph.hpp"
#include "neron/ff.hpp"

namespace neron {

// A point on the normalization of a component: a finite coordinate value,
// or the point at infinity of the coordinate line (nullopt). The cusps of
// X_0(p) are the infinity points of their components.
using LinePoint = std::optional<Fq>;

struct DivisorEntry {
    std::string vertex;
    LinePoint point;
    long long mult = 0;
};
// formal sum of non-singular points with integer multiplicities
using DivisorSpec = std::vector<DivisorEntry>;

// lambda * prod (j - r_i)^(m_i); the point at infinity carries the
// balancing order -sum(m_i) implicitly
struct RationalFunctionOnLine {
    Fq scale;
    std::vector<std::pair<Fq, long long>> zeros_poles;  // finite, coordinate-sorted
};

struct LeadingTerm {
    Fq coeff;
    long long order = 0;
};

// c coefficients per edge (relative to the branch coordinates of the edge)
using EdgeCoefficients = std::map<std::string, Fq>;

EdgeCoefficients edge_coefficients_from_graph(const DualGraph& g, const PrimeField& F);
// for graphs whose edges carry branch coordinates (j(x), j(x)^p)
EdgeCoefficients edge_coefficients_from_cx(const DualGraph& g, const CxTable& cx);

Multidegree multidegree_of_divisor(const DualGraph& g, const DivisorSpec& E);

// The divisor f_C must have: E|_C - sum over edge ends at C of
// (a(C'_x) - a(C)) / e(x) times the branch point. Degree is zero.
std::vector<std::pair<LinePoint, long long>> required_divisor(const DualGraph& g,
                                                              const VerticalDivisor& a,
                                                              const DivisorSpec& E,
                                                              const std::string& C,
                                                              const PrimeField& F);

// Builds the product function with the given divisor (scale 1); the
// infinity entry must balance the finite ones.
RationalFunctionOnLine function_with_divisor(
    const std::vector<std::pair<LinePoint, long long>>& divisor, const PrimeField& F);

LeadingTerm leading_term(const RationalFunctionOnLine& f, const LinePoint& x);

// Per-step factors over the closed walk:
//   f_{C_i}(x at C_i) * f_{C_{i+1}}(x at C_{i+1})^{-1} * c(x)^((a(C_{i+1})-a(C_i))/e(x)).
// Throws if an exponent is non-integral or the tensor orders fail to cancel.
std::vector<Fq> cycle_factors(const DualGraph& g, const EdgeCoefficients& c,
                              const VerticalDivisor& a,
                              const std::map<std::string, RationalFunctionOnLine>& f,
                              const Cycle& cycle, const PrimeField& F);

// Product of the factors above.
Fq cycle_product(const DualGraph& g, const EdgeCoefficients& c, const VerticalDivisor& a,
                 const std::map<std::string, RationalFunctionOnLine>& f, const Cycle& cycle,
                 const PrimeField& F);

enum class TrivialityKind { Zero, NonzeroComponentClass, NonzeroCycleObstruction };

struct TrivialityDecision {
    TrivialityKind kind;
    std::optional<Cycle> obstructing_cycle;
    std::optional<Fq> cycle_scalar;
};

// Decision procedure for "is the class of E zero in J_k": multidegree in
// the image of the locally principal divisors, then the cycle conditions
// over a fundamental cycle basis. Components must all have genus zero.
TrivialityDecision is_trivial(const ComponentGroup& cg, const EdgeCoefficients& c,
                              const DivisorSpec& E, const PrimeField& F);
TrivialityDecision is_trivial(const DualGraph& g, const EdgeCoefficients& c, const DivisorSpec& E,
                              const PrimeField& F);

}  // namespace neron
