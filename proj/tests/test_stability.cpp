#include <doctest.h>

#include "rif/polyexpr.hpp"
#include "rif/stability.hpp"

using namespace rif;

TEST_CASE("stable denominators") {
    for (const char* s : {"2 - z1 - z2", "4 - 3z1 - z2 - z1*z2 + z1^2", "3 + z1 - 2z2", "(2 - z1 - z2)(3 - z1)", "5"})
        CHECK_MESSAGE(is_stable(parse_poly(s)).verdict == StabilityVerdict::stable, s);
}

TEST_CASE("unstable denominators carry an interior witness") {
    for (const char* s : {"1 - 2z1", "1 - 2z2", "z1 + z2", "1 - 3 z1 z2"}) {
        const BiPoly p = parse_poly(s);
        const auto c = is_stable(p);
        REQUIRE_MESSAGE(c.verdict == StabilityVerdict::unstable, s);
        REQUIRE(c.witness.has_value());
        const auto [a, b] = *c.witness;
        CHECK(std::abs(a) < 1.0);
        CHECK(std::abs(b) < 1.0);
        CHECK(std::abs(p(a, b)) < 1e-8);
    }
}

TEST_CASE("grid floor") { CHECK_THROWS(is_stable(parse_poly("2 - z1"), 32)); }

TEST_CASE("torus zeros of the worked examples") {
    for (const char* s : {"2 - z1 - z2", "4 - 3z1 - z2 - z1*z2 + z1^2"}) {
        const BiPoly p = parse_poly(s);
        const auto z = find_torus_zeros(p);
        REQUIRE_MESSAGE(z.points.size() == 1, s);
        CHECK(torus_distance(z.points[0], TorusPoint{0.0, 0.0}) < 1e-8);
        CHECK(z.residuals[0] <= 1e-10);
        // The reflection vanishes at the same point.
        CHECK(std::abs(p.reflect()(z.points[0].z1(), z.points[0].z2())) <= 1e-8);
        CHECK(find_torus_zeros(p, 512).points.size() == 1);
    }
    CHECK(find_torus_zeros(parse_poly("4 - z1 - z2")).points.empty());
}

TEST_CASE("rotated singularity is located") {
    // kappa composed with z1 -> i z1 has its singular point at (pi/2, 0).
    const BiPoly p = parse_poly("2 + i z1 - z2");
    const auto z = find_torus_zeros(p);
    REQUIRE(z.points.size() == 1);
    CHECK(torus_distance(z.points[0], TorusPoint{std::numbers::pi / 2, 0.0}) < 1e-8);
}

TEST_CASE("zeros are separated") {
    // Two singular points: (1,1) and (-1,-1).
    const BiPoly p = parse_poly("(2 - z1 - z2)(2 + z1 + z2)");
    const auto z = find_torus_zeros(p);
    REQUIRE(z.points.size() == 2);
    CHECK(torus_distance(z.points[0], z.points[1]) > 1e-4);
}
