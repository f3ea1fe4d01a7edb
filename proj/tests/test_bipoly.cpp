#include <doctest.h>

#include <numbers>
#include <random>

#include "rif/bipoly.hpp"
#include "rif/error.hpp"
#include "rif/polyexpr.hpp"

using namespace rif;

namespace {

BiPoly random_full(std::mt19937_64& rng, int n1, int n2) {
    std::normal_distribution<double> g(0.0, 1.0);
    BiPoly p(Bidegree{n1, n2});
    for (int i = 0; i <= n1; ++i)
        for (int j = 0; j <= n2; ++j) p.set_coeff(i, j, cplx(g(rng), g(rng)));
    return p;
}

}  // namespace

TEST_CASE("evaluation") {
    const BiPoly k = parse_poly("2 - z1 - z2");
    CHECK(k(0.0, 0.0) == cplx(2.0));
    CHECK(std::abs(k(1.0, 1.0)) == 0.0);
    CHECK(std::abs(parse_poly("4 - 3z1 - z2 - z1*z2 + z1^2")(1.0, 1.0)) == 0.0);
}

TEST_CASE("evaluation matches the naive monomial sum") {
    std::mt19937_64 rng(1);
    const BiPoly p = random_full(rng, 16, 16);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int t = 0; t < 20; ++t) {
        const cplx z1(u(rng) / 1.5, u(rng) / 1.5), z2(u(rng) / 1.5, u(rng) / 1.5);
        cplx naive = 0.0;
        double scale = 0.0;
        p.for_each_term([&](int i, int j, cplx c) {
            naive += c * std::pow(z1, i) * std::pow(z2, j);
            scale += std::abs(c) * std::pow(std::abs(z1), i) * std::pow(std::abs(z2), j);
        });
        CHECK(std::abs(p(z1, z2) - naive) <= 1e-12 * scale);
    }
}

TEST_CASE("partial derivatives") {
    CHECK(parse_poly("2 - z1 - z2").partial_derivative(Var::z1).same_coeffs(BiPoly::constant(-1.0)));
    CHECK(parse_poly("z1^2").partial_derivative(Var::z1, 2).same_coeffs(BiPoly::constant(2.0)));
    CHECK(parse_poly("z1 z2").partial_derivative(Var::z2).same_coeffs(parse_poly("z1")));
}

TEST_CASE("partial derivatives agree with finite differences") {
    std::mt19937_64 rng(2);
    const BiPoly p = random_full(rng, 4, 3);
    const BiPoly d1 = p.partial_derivative(Var::z1), d2 = p.partial_derivative(Var::z2);
    std::uniform_real_distribution<double> u(-0.9, 0.9);
    const double h = 1e-6;
    for (int t = 0; t < 20; ++t) {
        const cplx z1(u(rng), u(rng)), z2(u(rng), u(rng));
        const cplx f1 = (p(z1 + h, z2) - p(z1 - h, z2)) / (2 * h);
        const cplx f2 = (p(z1, z2 + h) - p(z1, z2 - h)) / (2 * h);
        CHECK(std::abs(f1 - d1(z1, z2)) <= 1e-5 * std::max(1.0, std::abs(d1(z1, z2))));
        CHECK(std::abs(f2 - d2(z1, z2)) <= 1e-5 * std::max(1.0, std::abs(d2(z1, z2))));
    }
}

TEST_CASE("reflection of the worked denominators") {
    CHECK(parse_poly("2 - z1 - z2").reflect().same_coeffs(parse_poly("2 z1 z2 - z2 - z1")));
    const BiPoly amy = parse_poly("4 - 3z1 - z2 - z1*z2 + z1^2");
    CHECK(amy.reflect(Bidegree{2, 1}).same_coeffs(parse_poly("4z1^2 z2 - z1^2 - 3z1z2 - z1 + z2")));
    CHECK_THROWS_AS(amy.reflect(Bidegree{1, 1}), DomainError);
}

TEST_CASE("reflection uses the declared bidegree") {
    const BiPoly p = parse_poly("2 - z1").with_declared(Bidegree{1, 1});
    CHECK(p.reflect().same_coeffs(parse_poly("2 z1 z2 - z2")));
}

TEST_CASE("reflection is an involution") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        const BiPoly p = random_full(rng, 1 + t % 5, 1 + t % 3);
        CHECK(p.reflect().reflect().same_coeffs(p, 0.0));
    }
}

TEST_CASE("reflection preserves modulus on the torus") {
    std::mt19937_64 rng(4);
    const BiPoly p = random_full(rng, 3, 2);
    const BiPoly q = p.reflect();
    double worst = 0.0;
    for (int a = 0; a < 64; ++a)
        for (int b = 0; b < 64; ++b) {
            const cplx z1 = std::polar(1.0, 2 * std::numbers::pi * a / 64);
            const cplx z2 = std::polar(1.0, 2 * std::numbers::pi * b / 64);
            worst = std::max(worst, std::abs(std::abs(p(z1, z2)) - std::abs(q(z1, z2))));
        }
    CHECK(worst < 1e-10);
}

TEST_CASE("bidegree") {
    CHECK(parse_poly("2 - z1 - z2").bidegree() == Bidegree{1, 1});
    CHECK(parse_poly("4 - 3z1 - z2 - z1*z2 + z1^2").bidegree() == Bidegree{2, 1});
    CHECK(BiPoly::constant(5.0).bidegree() == Bidegree{0, 0});
    CHECK_THROWS_AS(BiPoly(Bidegree{1, 1}).bidegree(), DomainError);
}

TEST_CASE("prune tolerance and degree cap") {
    BiPoly p(Bidegree{1, 1});
    p.set_coeff(1, 1, 1e-15);
    CHECK(p.is_zero());
    CHECK_THROWS(BiPoly::monomial(40, 0).pow(2));
}

TEST_CASE("arithmetic") {
    const BiPoly a = parse_poly("1 + z1"), b = parse_poly("1 - z2");
    CHECK((a * b).same_coeffs(parse_poly("1 + z1 - z2 - z1 z2")));
    CHECK((a - a).is_zero());
    CHECK((a + b).same_coeffs(parse_poly("2 + z1 - z2")));
}

TEST_CASE("slices") {
    const BiPoly p = parse_poly("4 - 3z1 - z2 - z1*z2 + z1^2");
    const UniPoly s = p.slice_z1(1.0);
    REQUIRE(s.size() == 3);
    CHECK(std::abs(s[0] - 3.0) < 1e-15);
    CHECK(std::abs(s[1] + 4.0) < 1e-15);
    CHECK(std::abs(s[2] - 1.0) < 1e-15);
    CHECK(p.swapped().slice_z2(1.0) == s);
}

TEST_CASE("rational inner function construction") {
    const Rif k = Rif::from_denominator(parse_poly("2 - z1 - z2"));
    CHECK(k.numer().same_coeffs(parse_poly("2 z1 z2 - z1 - z2")));
    CHECK(std::abs(k(0.5, 0.0) - cplx(-0.5 / 1.5)) < 1e-15);
    CHECK_THROWS_AS(Rif::from_denominator(parse_poly("z1 + z2")), DomainError);
    CHECK_THROWS_AS(Rif::from_denominator(parse_poly("1 - 2 z1")), DomainError);
    CHECK_THROWS_AS(Rif(parse_poly("2 - z1 - z2"), parse_poly("2 z1 z2 - z1")), DomainError);
    CHECK_THROWS_AS(Rif::from_denominator(parse_poly("2 - z1 - z2"), {0, 0}, cplx(2.0)), DomainError);
}

TEST_CASE("rational inner functions are unimodular on the torus") {
    const Rif f = Rif::from_denominator(parse_poly("4 - 3z1 - z2 - z1*z2 + z1^2"), {1, 2}, std::polar(1.0, 0.3));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.1, 6.2);
    for (int t = 0; t < 100; ++t) CHECK(std::abs(std::abs(f(std::polar(1.0, u(rng)), std::polar(1.0, u(rng)))) - 1.0) < 1e-9);
}
