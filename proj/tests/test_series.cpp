#include <doctest.h>

#include <cmath>
#include <random>

#include "rif/error.hpp"
#include "rif/polyexpr.hpp"
#include "rif/series.hpp"

using namespace rif;

namespace {

Rif kappa() { return Rif::from_denominator(parse_poly("2 - z1 - z2")); }
Rif amy() { return Rif::from_denominator(parse_poly("4 - 3z1 - z2 - z1*z2 + z1^2")); }

double binom(int n, int k) { return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)); }

}  // namespace

TEST_CASE("kappa coefficients by hand") {
    const CoeffGrid g = taylor_coeffs(kappa(), 4, 4);
    CHECK(std::abs(g.at(0, 0)) < 1e-15);
    CHECK(std::abs(g.at(1, 0) + 0.5) < 1e-15);
    CHECK(std::abs(g.at(1, 1) - 0.5) < 1e-15);
    CHECK(std::abs(g.at(2, 1) - 0.125) < 1e-15);
    CHECK(std::abs(g.at(0, 0) - kappa()(0.0, 0.0)) < 1e-12);
}

TEST_CASE("kappa closed form") {
    CHECK(kappa_coeff_closed_form(0, 0) == doctest::Approx(0.5));
    CHECK(kappa_coeff_closed_form(1, 0) == doctest::Approx(0.125));
    // Direct binomial evaluation in the exact range and the log-gamma range.
    for (int k : {0, 3, 17, 30, 60, 300})
        for (int l : {0, 5, 22, 60}) {
            const int n = k + l;
            const double direct = binom(n, k) * std::pow(2.0, -n) - binom(n + 2, k + 1) * std::pow(2.0, -(n + 2));
            CHECK(kappa_coeff_closed_form(k, l) == doctest::Approx(direct).epsilon(1e-9).scale(1e-300));
        }
}

TEST_CASE("recurrence agrees with the closed form") {
    const CoeffGrid g = taylor_coeffs(kappa(), 41, 41);
    for (int k = 0; k <= 40; ++k)
        for (int l = 0; k + l <= 40; ++l) CHECK(std::abs(g.at(k + 1, l + 1) - kappa_coeff_closed_form(k, l)) <= 1e-10);
}

TEST_CASE("polynomial division by a constant") {
    const Rif f = Rif::from_denominator(BiPoly::constant(1.0), {2, 1});
    const CoeffGrid g = taylor_coeffs(f, 3, 3);
    for (int k = 0; k <= 3; ++k)
        for (int l = 0; l <= 3; ++l) CHECK(g.at(k, l) == cplx((k == 2 && l == 1) ? 1.0 : 0.0));
}

TEST_CASE("truncation consistency") {
    const CoeffGrid a = taylor_coeffs(amy(), 10, 8), b = taylor_coeffs(amy(), 25, 30);
    for (int k = 0; k <= 10; ++k)
        for (int l = 0; l <= 8; ++l) CHECK(std::abs(a.at(k, l) - b.at(k, l)) < 1e-13);
}

TEST_CASE("Hardy-space bound") {
    SpaceSpec h2 = SpaceSpec::frak(0.0, 0.0);
    const int cuts[] = {10, 100, 400};
    for (const Rif& f : {kappa(), amy(), Rif::from_denominator(parse_poly("3 + z1 - 2 z2"), {1, 0})}) {
        const auto s = coeff_norm_partial_sums(f, h2, cuts);
        CHECK(s[0] <= s[1]);
        CHECK(s[1] <= s[2]);
        CHECK(s[2] <= 1.0 + 1e-6);
    }
}

TEST_CASE("streamed diagonals match the stored grid") {
    const CoeffGrid g = taylor_coeffs(amy(), 30, 30);
    for_each_diagonal(amy(), 30, [&](int s, const std::vector<cplx>& d) {
        REQUIRE(int(d.size()) == s + 1);
        for (int k = 0; k <= s; ++k) CHECK(std::abs(d[k] - g.at(k, s - k)) < 1e-13);
    });
}

TEST_CASE("space weights") {
    CHECK(SpaceSpec::frak(0.5, 1.0).weight(3, 0) == doctest::Approx(2.0));
    CHECK(SpaceSpec::bcg().weight(2, 3) == 6.0);
    CHECK(SpaceSpec::bcg_weighted(2.0).weight(1, 2) == doctest::Approx(13.0));
    CHECK(SpaceSpec::higher_order(2, 1).weight(2, 3) == doctest::Approx(12.0));
    CHECK(SpaceSpec::bcg_weighted(1.2).name() == "bcgw(1.2)");
    CHECK(SpaceSpec::higher_order(2, 1).kind_tag() == "higher");
}

TEST_CASE("partial sums of monomials") {
    const CoeffGrid one = coeff_grid(BiPoly::constant(1.0));
    const int c0[] = {0};
    for (const SpaceSpec& s : {SpaceSpec::bcg(), SpaceSpec::frak(0.7, 1.3), SpaceSpec::bcg_weighted(1.5),
                               SpaceSpec::higher_order(2, 3)})
        CHECK(coeff_norm_partial_sums(one, s, c0)[0] == doctest::Approx(s.weight(0, 0)));
    const CoeffGrid z = coeff_grid(BiPoly::monomial(5, 0));
    const int c5[] = {5};
    CHECK(coeff_norm_partial_sums(z, SpaceSpec::frak(0.8, 0.0), c5)[0] == doctest::Approx(std::pow(6.0, 0.8)));
}

TEST_CASE("kappa lies in the unweighted mixed-norm space by coefficients") {
    const int cuts[] = {256, 512, 1024, 2048};
    const auto s = coeff_norm_partial_sums(kappa(), SpaceSpec::bcg(), cuts);
    // Increments shrink like N^(-1/2).
    const double r = (s[3] - s[2]) / (s[2] - s[1]);
    CHECK(r == doctest::Approx(std::pow(2.0, -0.5)).epsilon(0.05));
}

TEST_CASE("tail fits") {
    std::vector<double> x, v;
    for (int k = 8; k <= 512; k += 8) {
        x.push_back(2.0 * k);
        v.push_back(std::abs(kappa_coeff_closed_form(k - 1, k - 1)));
    }
    CHECK(tail_exponent_fit(x, v, TailMode::coefficient_diagonal).slope == doctest::Approx(-1.5).epsilon(0.033));

    std::vector<double> geo;
    for (int k = 0; k < 40; ++k) geo.push_back(std::pow(2.0, -k));
    const TailFit g = tail_exponent_fit(geo, TailMode::coefficient_diagonal);
    CHECK(g.super_polynomial);
    CHECK(g.slope < -2.0);

    std::vector<double> pw;
    for (int k = 1; k <= 64; ++k) pw.push_back(std::pow(k, -1.5));
    const TailFit p = tail_exponent_fit(pw, TailMode::coefficient_diagonal);
    CHECK(p.slope == doctest::Approx(-1.5));
    CHECK_FALSE(p.super_polynomial);

    const double bad[] = {1, 2, 3};
    CHECK_THROWS(tail_exponent_fit(bad, TailMode::coefficient_diagonal));
    std::vector<double> neg(10, 1.0);
    neg[9] = -1.0;
    CHECK_THROWS(tail_exponent_fit(neg, TailMode::partial_sum_growth));
}

TEST_CASE("higher-order growth against a brute-force sum") {
    const SpaceSpec sp = SpaceSpec::higher_order(2, 1);
    const CoeffGrid g = taylor_coeffs(kappa(), 200, 200);
    const int cuts[] = {100, 200};
    const auto s = coeff_norm_partial_sums(kappa(), sp, cuts);
    for (int c = 0; c < 2; ++c) {
        double brute = 0.0;
        for (int k = 0; k <= cuts[c]; ++k)
            for (int l = 0; k + l <= cuts[c]; ++l) brute += (std::pow(k, 3.0) + l + 1.0) * std::norm(g.at(k, l));
        CHECK(s[c] == doctest::Approx(brute).epsilon(1e-12));
    }
}

TEST_CASE("coefficient form of the weighted mixed space is equivalent to the one-variable pair") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> deg(0, 6);
    std::normal_distribution<double> gd(0.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        BiPoly p(Bidegree{deg(rng), deg(rng)});
        const Bidegree d = p.declared_bidegree();
        for (int i = 0; i <= d.n1; ++i)
            for (int j = 0; j <= d.n2; ++j) p.set_coeff(i, j, cplx(gd(rng), gd(rng)));
        const CoeffGrid g = coeff_grid(p);
        const int cut[] = {d.n1 + d.n2};
        for (double a : {0.5, 1.0, 1.5}) {
            const double w = coeff_norm_partial_sums(g, SpaceSpec::bcg_weighted(a), cut)[0];
            const double m = std::max(coeff_norm_partial_sums(g, SpaceSpec::frak(a, 0), cut)[0],
                                      coeff_norm_partial_sums(g, SpaceSpec::frak(0, a), cut)[0]);
            CHECK(w / m >= 0.25);
            CHECK(w / m <= 4.0);
        }
    }
}

TEST_CASE("coefficient CSV") {
    const CoeffGrid g = taylor_coeffs(kappa(), 1, 1);
    CHECK(g.to_csv().rfind("k,l,re,im\n", 0) == 0);
}
