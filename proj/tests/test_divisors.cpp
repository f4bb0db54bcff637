#include <random>

#include "doctest.h"
#include "neron/divisors.hpp"
#include "neron/x0p.hpp"

using namespace neron;

TEST_SUITE_BEGIN("divisors");

namespace {

std::map<std::string, long long> as_multiset(const std::vector<std::pair<LinePoint, long long>>& d) {
    std::map<std::string, long long> out;
    for (const auto& [pt, m] : d) out[pt ? pt->str() : "inf"] = m;
    return out;
}

}  // namespace

TEST_CASE("required divisors of the tabulated check at p=31") {
    // divisor 3*0 - 2*inf - P on the blow-up at 1728 forces (j-2)(j-4) on
    // the infinity component
    X0pModel model = build_x0p_model(31);
    PrimeField F(31);
    const DualGraph& g = model.blowup1728;
    std::string f_id;
    for (const Vertex& v : g.vertices)
        if (v.id.find('@') != std::string::npos) f_id = v.id;
    REQUIRE(!f_id.empty());
    DivisorSpec E = {{"X0", std::nullopt, 3}, {"Xinf", std::nullopt, -2}, {f_id, F.one(), -1}};
    ComponentGroup cg = ComponentGroup::of(g);
    auto a = cg.solve_vertical(multidegree_of_divisor(g, E));
    REQUIRE(a.has_value());

    auto div_inf = as_multiset(required_divisor(g, *a, E, "Xinf", F));
    CHECK(div_inf == std::map<std::string, long long>{{"2", 1}, {"4", 1}, {"inf", -2}});
    auto div_zero = as_multiset(required_divisor(g, *a, E, "X0", F));
    CHECK(div_zero == std::map<std::string, long long>{{"2", -1}, {"4", -1}, {"23", -1}, {"inf", 3}});
}

TEST_CASE("required divisors of the tabulated check at p=47") {
    X0pModel model = build_x0p_model(47);
    PrimeField F(47);
    const DualGraph& g = model.blowup1728;
    std::string f_id;
    for (const Vertex& v : g.vertices)
        if (v.id.find('@') != std::string::npos) f_id = v.id;
    DivisorSpec E = {{"X0", std::nullopt, 12}, {"Xinf", std::nullopt, -11}, {f_id, F.one(), -1}};
    ComponentGroup cg = ComponentGroup::of(g);
    auto a = cg.solve_vertical(multidegree_of_divisor(g, E));
    REQUIRE(a.has_value());
    // j (j+11) (j-9)^3 (j-10)^3 (j+3)^3 with an 11-fold pole at the cusp
    auto div_inf = as_multiset(required_divisor(g, *a, E, "Xinf", F));
    CHECK(div_inf == std::map<std::string, long long>{
                         {"0", 1}, {"36", 1}, {"9", 3}, {"10", 3}, {"44", 3}, {"inf", -11}});
    auto div_zero = as_multiset(required_divisor(g, *a, E, "X0", F));
    CHECK(div_zero == std::map<std::string, long long>{
                          {"0", -1}, {"36", -2}, {"9", -3}, {"10", -3}, {"44", -3}, {"inf", 12}});
}

TEST_CASE("zero divisor requires nothing") {
    X0pModel model = build_x0p_model(31);
    PrimeField F(31);
    VerticalDivisor zero;
    for (const Vertex& v : model.graph.vertices) zero[v.id] = 0;
    for (const Vertex& v : model.graph.vertices)
        CHECK(required_divisor(model.graph, zero, {}, v.id, F).empty());
}

TEST_CASE("leading terms") {
    PrimeField F(31);
    RationalFunctionOnLine f{F.one(), {{F.elem(2), 1}, {F.elem(4), 1}}};  // (j-2)(j-4)
    LeadingTerm at2 = leading_term(f, F.elem(2));
    CHECK(at2.order == 1);
    CHECK(at2.coeff == F.elem(-2));
    LeadingTerm at_inf = leading_term(f, std::nullopt);
    CHECK(at_inf.order == -2);
    CHECK(at_inf.coeff == F.one());

    RationalFunctionOnLine one{F.one(), {}};
    LeadingTerm anywhere = leading_term(one, F.elem(17));
    CHECK(anywhere.order == 0);
    CHECK(anywhere.coeff == F.one());

    // order-3 coefficient of the degree-11 function at x = 9 over F_47
    PrimeField F47(47);
    RationalFunctionOnLine big{F47.one(),
                               {{F47.elem(0), 1},
                                {F47.elem(-11), 1},
                                {F47.elem(9), 3},
                                {F47.elem(10), 3},
                                {F47.elem(-3), 3}}};
    LeadingTerm at9 = leading_term(big, F47.elem(9));
    CHECK(at9.order == 3);
    CHECK(at9.coeff == F47.elem(9) * F47.elem(20) * F47.elem(-1).pow(3) * F47.elem(12).pow(3));
}

TEST_CASE("cycle products on the tabulated models") {
    // trivial data gives 1
    {
        X0pModel model = build_x0p_model(31);
        PrimeField F(31);
        VerticalDivisor zero;
        std::map<std::string, RationalFunctionOnLine> f;
        for (const Vertex& v : model.graph.vertices) {
            zero[v.id] = 0;
            f[v.id] = RationalFunctionOnLine{F.one(), {}};
        }
        EdgeCoefficients c = edge_coefficients_from_graph(model.graph, F);
        for (const Cycle& cyc : cycle_basis(model.graph))
            CHECK(cycle_product(model.graph, c, zero, f, cyc, F) == F.one());
    }
}

TEST_CASE("triviality of cuspidal multiples at p=31") {
    X0pModel model = build_x0p_model(31);
    PrimeField F(31);
    ComponentGroup cg = ComponentGroup::of(model.graph);
    EdgeCoefficients c = edge_coefficients_from_graph(model.graph, F);
    for (long long m = 1; m <= 10; ++m) {
        DivisorSpec E = {{"X0", std::nullopt, m}, {"Xinf", std::nullopt, -m}};
        TrivialityDecision dec = is_trivial(cg, c, E, F);
        if (m % 5 == 0) CHECK(dec.kind == TrivialityKind::Zero);
        else CHECK(dec.kind == TrivialityKind::NonzeroComponentClass);
    }
    // empty divisor is trivially zero
    CHECK(is_trivial(cg, c, {}, F).kind == TrivialityKind::Zero);
}

TEST_CASE("a divisor failing only the cycle stage") {
    // 2P - 0 - inf with P on F at p=23 has multidegree matching a locally
    // principal divisor, but the glueing obstruction survives
    X0pModel model = build_x0p_model(23);
    PrimeField F(23);
    const DualGraph& g = model.blowup1728;
    std::string f_id;
    for (const Vertex& v : g.vertices)
        if (v.id.find('@') != std::string::npos) f_id = v.id;
    DivisorSpec E = {{"X0", std::nullopt, 6}, {"Xinf", std::nullopt, -5}, {f_id, F.one(), -1}};
    EdgeCoefficients c = edge_coefficients_from_graph(g, F);
    TrivialityDecision dec = is_trivial(g, c, E, F);
    CHECK(dec.kind == TrivialityKind::NonzeroCycleObstruction);
    REQUIRE(dec.cycle_scalar.has_value());
    CHECK(*dec.cycle_scalar != F.one());
}

TEST_CASE("kernel is closed under addition") {
    X0pModel model = build_x0p_model(23);
    PrimeField F(23);
    ComponentGroup cg = ComponentGroup::of(model.graph);
    EdgeCoefficients c = edge_coefficients_from_graph(model.graph, F);
    std::mt19937 rng(606);
    std::vector<DivisorSpec> zeros;
    // cuspidal multiples and small random combinations
    for (long long k = 1; k <= 3; ++k)
        zeros.push_back({{"X0", std::nullopt, 11 * k}, {"Xinf", std::nullopt, -11 * k}});
    for (int iter = 0; iter < 40; ++iter) {
        long long m = 1 + rng() % 25;
        DivisorSpec E = {{"X0", std::nullopt, m}, {"Xinf", std::nullopt, -m}};
        // also mix in a principal pattern supported at non-singular points
        if (rng() % 2) {
            Fq pt = F.elem(static_cast<long long>(rng() % 23));
            bool branch = false;
            for (const Edge& e : model.graph.edges)
                if (e.branch && F.parse(e.branch->tail_coord) == pt) branch = true;
            if (!branch) {
                E.push_back({"Xinf", pt, 1});
                E.push_back({"Xinf", std::nullopt, -1});
            }
        }
        TrivialityDecision dec = is_trivial(cg, c, E, F);
        if (dec.kind == TrivialityKind::Zero) zeros.push_back(E);
    }
    REQUIRE(zeros.size() >= 2);
    for (size_t i = 0; i < zeros.size(); ++i)
        for (size_t k = i; k < zeros.size(); ++k) {
            DivisorSpec sum = zeros[i];
            sum.insert(sum.end(), zeros[k].begin(), zeros[k].end());
            CHECK(is_trivial(cg, c, sum, F).kind == TrivialityKind::Zero);
        }
}

TEST_CASE("decisions agree between a model and its resolution") {
    // the chain carries the original coefficient on its first crossing and 1
    // on the interior ones; cycle products through chains must match the
    // thick-edge products
    for (uint64_t p : {23ULL, 31ULL, 47ULL}) {
        X0pModel model = build_x0p_model(p);
        PrimeField F(p);
        ResolveResult rr = resolve(model.graph);
        ComponentGroup cg = ComponentGroup::of(model.graph);
        ComponentGroup cg_res = ComponentGroup::of(rr.graph);
        EdgeCoefficients c = edge_coefficients_from_graph(model.graph, F);
        EdgeCoefficients c_res = edge_coefficients_from_graph(rr.graph, F);
        for (long long m = 1; m <= 2 * model.n; ++m) {
            DivisorSpec E = {{"X0", std::nullopt, m}, {"Xinf", std::nullopt, -m}};
            bool z1 = is_trivial(cg, c, E, F).kind == TrivialityKind::Zero;
            bool z2 = is_trivial(cg_res, c_res, E, F).kind == TrivialityKind::Zero;
            CHECK(z1 == z2);
        }
    }
}

TEST_CASE("decisions are independent of the spanning tree") {
    X0pModel model = build_x0p_model(23);
    PrimeField F(23);
    ComponentGroup cg = ComponentGroup::of(model.graph);
    EdgeCoefficients c = edge_coefficients_from_graph(model.graph, F);
    for (long long m : {2LL, 11LL, 13LL, 22LL}) {
        DivisorSpec E = {{"X0", std::nullopt, m}, {"Xinf", std::nullopt, -m}};
        auto a = cg.solve_vertical(multidegree_of_divisor(model.graph, E));
        if (!a) continue;
        std::map<std::string, RationalFunctionOnLine> f;
        for (const Vertex& v : model.graph.vertices)
            f[v.id] = function_with_divisor(required_divisor(model.graph, *a, E, v.id, F), F);
        std::optional<bool> all_one;
        for (unsigned seed : {0u, 1u, 2u, 3u}) {
            bool ok = true;
            for (const Cycle& cyc : cycle_basis(model.graph, seed))
                ok = ok && cycle_product(model.graph, c, *a, f, cyc, F) == F.one();
            if (!all_one) all_one = ok;
            CHECK(*all_one == ok);
        }
    }
}

TEST_CASE("input validation") {
    X0pModel model = build_x0p_model(23);
    PrimeField F(23);
    ComponentGroup cg = ComponentGroup::of(model.graph);
    EdgeCoefficients c = edge_coefficients_from_graph(model.graph, F);
    // nonzero total degree
    CHECK_THROWS(is_trivial(cg, c, {{"X0", std::nullopt, 1}}, F));
    // supported at a double point
    CHECK_THROWS(is_trivial(cg, c,
                            {{"Xinf", F.elem(0), 1}, {"Xinf", std::nullopt, -1}}, F));
    // positive genus unsupported
    DualGraph g;
    g.p = 23;
    g.vertices = {{"A", 1, "A"}, {"B", 0, "B"}};
    g.edges = {{"e0", "A", "B", 1, BranchData{"1", "1"}, std::string("1")},
               {"e1", "A", "B", 1, BranchData{"2", "2"}, std::string("1")}};
    validate(g);
    EdgeCoefficients cg2 = edge_coefficients_from_graph(g, F);
    CHECK_THROWS(is_trivial(g, cg2, {}, F));
}

TEST_SUITE_END();
