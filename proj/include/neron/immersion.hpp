#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "neron/compgroup.hpp"
#include "neron/dualgraph.hpp"

namespace neron {

// The Abel-Jacobi map extends exactly over the disconnecting double points.
std::set<std::string> extendable_locus(const DualGraph& g);

struct ConditionResult {
    bool ok = true;
    std::string counterexample;  // vertex or edge id when ok is false
    std::optional<long long> failing_prime;
};

// Every component isomorphic to a projective line (genus zero, no
// self-loop) must meet a non-disconnecting double point.
ConditionResult injectivity_condition(const DualGraph& g);

// For every prime q and non-bridge edge x, x must lie on a cycle within the
// subgraph of edges y with v_q(e(y)) >= v_q(e(x)); self-loops pass.
ConditionResult properness_condition(const DualGraph& g);

// Image of position i on edge y in Phi~/Phi, and injectivity of the factor.
std::vector<Int> position_class_in_quotient(const DualGraph& g, const std::string& edge_id, long long position);
bool injectivity_of_factor(const DualGraph& g, const std::string& edge_id);

struct EdgeDiagnostic {
    std::string edge;
    bool bridge = false;
    bool properness_ok = true;
    std::optional<long long> failing_prime;
};

struct ImmersionReport {
    bool injectivity_ok = false;
    bool properness_ok = false;
    bool closed_immersion = false;
    bool regular_case = false;  // all e = 1
    std::string injectivity_counterexample;
    std::vector<EdgeDiagnostic> edges;
};

ImmersionReport closed_immersion(const DualGraph& g);

}  // namespace neron
