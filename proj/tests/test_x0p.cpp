#include <numeric>

#include "doctest.h"
#include "neron/x0p.hpp"

using namespace neron;

TEST_SUITE_BEGIN("x0p");

TEST_CASE("model assembly for the tabulated primes") {
    X0pModel m23 = build_x0p_model(23);
    CHECK(m23.n == 11);
    CHECK(m23.has_F);
    CHECK(m23.has_GH);
    CHECK(m23.resolved.vertices.size() == 5);  // Xinf, X0, F, G, H
    CHECK(m23.resolved.edges.size() == 6);
    CHECK(m23.phi.invariant_factors() == std::vector<Int>{Int(11)});
    CHECK(m23.resolved.vertex("F").genus == 0);
    // G meets the infinity component
    bool g_meets_inf = false;
    for (const Edge& e : m23.resolved.edges)
        if ((e.tail == "G" && e.head == "Xinf") || (e.tail == "Xinf" && e.head == "G"))
            g_meets_inf = true;
    CHECK(g_meets_inf);

    X0pModel m31 = build_x0p_model(31);
    CHECK(m31.n == 5);
    CHECK(m31.has_F);
    CHECK(!m31.has_GH);  // 31 = 1 mod 3
    CHECK(m31.resolved.vertices.size() == 3);
    CHECK(m31.phi.invariant_factors() == std::vector<Int>{Int(5)});

    X0pModel m29 = build_x0p_model(29);
    CHECK(!m29.has_F);  // 29 = 1 mod 4
    CHECK(m29.has_GH);  // 29 = 2 mod 3

    CHECK_THROWS(build_x0p_model(19));
    CHECK_THROWS(build_x0p_model(24));
}

TEST_CASE("edge count equals the number of supersingular invariants") {
    for (uint64_t p : {23ULL, 29ULL, 31ULL, 47ULL, 59ULL, 71ULL, 73ULL}) {
        X0pModel m = build_x0p_model(p);
        CHECK(m.graph.edges.size() == m.locus.points.size());
        bool f_expected = p % 4 == 3, gh_expected = p % 3 == 2;
        CHECK(m.has_F == f_expected);
        CHECK(m.has_GH == gh_expected);
    }
}

TEST_CASE("component images are the expected multiples of the generator") {
    X0pModel m23 = build_x0p_model(23);
    auto img = component_images(m23);
    CHECK(img["Xinf"] == 0);
    CHECK(img["X0"] == 1);
    CHECK(img["F"] == 6);  // 2 * 6 = 1 mod 11
    CHECK(img["G"] == 4);  // 3 * 4 = 1 mod 11
    CHECK(img["H"] == 8);  // 2/3 mod 11

    X0pModel m31 = build_x0p_model(31);
    auto img31 = component_images(m31);
    CHECK(img31["Xinf"] == 0);
    CHECK(img31["X0"] == 1);
    CHECK(img31["F"] == 3);  // 1/2 mod 5

    // the half/third relations hold across a sweep
    for (uint64_t p : {43ULL, 47ULL, 59ULL, 71ULL}) {
        X0pModel m = build_x0p_model(p);
        auto im = component_images(m);
        long long n = m.n;
        if (m.has_F) CHECK(2 * im["F"] % n == 1 % n);
        if (m.has_GH) {
            CHECK(3 * im["G"] % n == 1 % n);
            CHECK(3 * im["H"] % n == 2 % n);
        }
    }
}

TEST_CASE("verdicts for the tabulated primes") {
    for (uint64_t p : {23ULL, 31ULL, 47ULL, 59ULL, 71ULL}) {
        CuspidalIntersectionReport rep = verify_cuspidal_intersection(p);
        CHECK(rep.proved);
        for (const ComponentVerdict& cv : rep.components) {
            if (cv.component == "F") {
                CHECK(cv.verdict == Verdict::ProvedByCycleComputation);
                REQUIRE(cv.cycle_product.has_value());
                PrimeField F(p);
                CHECK(*cv.cycle_product != F.one());
            } else {
                CHECK(cv.verdict == Verdict::Proved);
            }
        }
    }
}

TEST_CASE("frozen cycle scalars of the obstruction") {
    auto product_of = [](uint64_t p) {
        CuspidalIntersectionReport rep = verify_cuspidal_intersection(p);
        for (const ComponentVerdict& cv : rep.components)
            if (cv.component == "F") return cv.cycle_product->a;
        return static_cast<uint32_t>(0);
    };
    // the obstruction character has order two: every product is -1
    CHECK(product_of(23) == 22);
    CHECK(product_of(31) == 30);
    CHECK(product_of(47) == 46);
    CHECK(product_of(59) == 58);
    CHECK(product_of(71) == 70);
}

TEST_CASE("the shortcut path fires at 43 and 67") {
    for (uint64_t p : {43ULL, 67ULL}) {
        CuspidalIntersectionReport rep = verify_cuspidal_intersection(p);
        CHECK(rep.proved);
        for (const ComponentVerdict& cv : rep.components)
            if (cv.component == "F") {
                CHECK(cv.verdict == Verdict::Proved);
                CHECK(!cv.cycle_product.has_value());
            }
    }
}

TEST_CASE("group order equals the numerator across a range") {
    for (uint64_t p = 23; p < 120; ++p) {
        if (!is_prime_u64(p)) continue;
        X0pModel m = build_x0p_model(p);
        long long expect = static_cast<long long>(p - 1) / std::gcd<long long>(p - 1, 12);
        CHECK(m.phi.order() == Int(expect));
    }
}

TEST_SUITE_END();
