#include <doctest.h>

#include <cmath>
#include <random>

#include "rif/contact.hpp"
#include "rif/error.hpp"
#include "rif/polyexpr.hpp"

using namespace rif;

namespace {

Rif from(const char* s) { return Rif::from_denominator(parse_poly(s)); }

}  // namespace

TEST_CASE("disk pseudodistance") {
    CHECK(pseudo_distance_disk(0.3, 0.3) == 0.0);
    CHECK(pseudo_distance_disk(0.0, cplx(0.3, 0.4)) == doctest::Approx(0.5));
    CHECK(pseudo_distance_disk(0.5, -0.5) == doctest::Approx(0.8));
    CHECK(pseudo_distance_disk(cplx(0.1, 0.2), cplx(-0.3, 0.5)) ==
          doctest::Approx(pseudo_distance_disk(cplx(-0.3, 0.5), cplx(0.1, 0.2))));
    CHECK_THROWS_AS(pseudo_distance_disk(1.0, 0.0), DomainError);
}

TEST_CASE("half-plane pseudodistance") {
    CHECK(pseudo_distance_halfplane(cplx(0, 1), cplx(0, 1)) == 0.0);
    CHECK(pseudo_distance_halfplane(cplx(0, 1), cplx(0, 2)) == doctest::Approx(1.0 / 3.0));
    CHECK(pseudo_distance_halfplane(cplx(2.5, 1), cplx(2.5, 2)) == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(pseudo_distance_halfplane(cplx(0, -1), cplx(0, 1)), DomainError);
}

TEST_CASE("Cayley transform") {
    CHECK(std::abs(cayley_to_disk(cplx(0, 1))) < 1e-15);
    CHECK(std::abs(cayley_to_disk(cplx(1, 1)) - cplx(-0.2, 0.4)) < 1e-15);
    CHECK_THROWS_AS(cayley_to_disk(cplx(0, -1)), DomainError);
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> re(-3, 3), im(0.01, 3);
    for (int t = 0; t < 50; ++t) {
        const cplx z(re(rng), im(rng)), w(re(rng), im(rng));
        CHECK(std::abs(cayley_from_disk(cayley_to_disk(z)) - z) < 1e-12 * (1 + std::abs(z)));
        CHECK(std::abs(pseudo_distance_disk(cayley_to_disk(z), cayley_to_disk(w)) - pseudo_distance_halfplane(z, w)) <
              1e-12);
    }
}

TEST_CASE("contact orders of the worked examples") {
    const auto k = estimate_contact_order(from("2 - z1 - z2"), TorusPoint{0, 0});
    CHECK(k.K == 2);
    CHECK(k.fitted_slope == doctest::Approx(2.0).epsilon(0.05));
    CHECK(k.square_free);
    const auto a = estimate_contact_order(from("4 - 3z1 - z2 - z1*z2 + z1^2"), TorusPoint{0, 0});
    CHECK(a.K == 4);
    CHECK(a.fitted_slope == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("fitted slope is stable under halving the sample scale") {
    for (const char* s : {"2 - z1 - z2", "4 - 3z1 - z2 - z1*z2 + z1^2"}) {
        const Rif f = from(s);
        const auto a = estimate_contact_order(f, TorusPoint{0, 0}, 24, 0.3);
        const auto b = estimate_contact_order(f, TorusPoint{0, 0}, 24, 0.15);
        CHECK(std::abs(a.fitted_slope - b.fitted_slope) < 0.05);
    }
}

TEST_CASE("contact order at a rotated singularity") {
    // AMY with z2 -> -z2 moves the singularity to (1, -1).
    const Rif f = from("4 - 3z1 + z2 + z1*z2 + z1^2");
    const auto prof = contact_profile(f);
    REQUIRE(prof.zeros.points.size() == 1);
    CHECK(prof.K == 4);
}

TEST_CASE("contact profile") {
    const auto k = contact_profile(from("2 - z1 - z2"));
    CHECK(k.K == 2);
    CHECK(k.estimates.size() == 2);
    const auto none = contact_profile(from("4 - z1 - z2"));
    CHECK(none.K == 0);
    CHECK(none.estimates.empty());
}

TEST_CASE("local models") {
    LocalModel bad{{{{0.0, 1.0, 0.0, 1.0}, 1}}};
    CHECK_THROWS_AS(bad.validate(), DomainError);
    LocalModel neg{{{{0.0, -1.0}, 1}}};
    CHECK_THROWS_AS(neg.validate(), DomainError);
    LocalModel same{{{{0.0, 1.0}, 1}, {{0.0, 1.0}, 1}}};
    CHECK_FALSE(same.is_square_free());
    const double xs[] = {1e-2, 1e-3, 1e-4};
    for (double v : case_limit_check(same, {0, 1}, xs)) CHECK(v == 0.0);
}

TEST_CASE("case limits approach one") {
    const double xs[] = {1e-2, 1e-3, 1e-4};
    // Identical initial segments, different contact orders: closed form (1 - x^2) / (1 + x^2).
    LocalModel c1{{{{0.0, 1.0}, 1}, {{0.0, 1.0}, 2}}};
    const auto v1 = case_limit_check(c1, {0, 1}, xs);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(v1[i] == doctest::Approx((1 - xs[i] * xs[i]) / (1 + xs[i] * xs[i])).epsilon(1e-12));
    LocalModel c2{{{{0.0, 1.0}, 1}, {{0.0, 2.0}, 1}}};
    LocalModel c3{{{{0.0, 1.0}, 1}, {{0.0, 2.0}, 2}}};
    for (const auto* m : {&c2, &c3}) {
        const auto v = case_limit_check(*m, {0, 1}, xs);
        CHECK(v[0] < v[1]);
        CHECK(v[1] < v[2] + 1e-15);
        CHECK(std::abs(v[1] - 1.0) <= 0.05);
    }
}

TEST_CASE("square-free random local models stay bounded away from zero") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> Ld(1, 4), dq(1, 3);
    std::uniform_real_distribution<double> c(-2.0, 2.0), lead(0.1, 3.0);
    std::vector<double> xs;
    for (int k = 0; k <= 20; ++k) xs.push_back(std::pow(10.0, -2.0 - 2.0 * k / 20.0));
    int draws = 0;
    double worst = 1.0;
    while (draws < 200) {
        LocalModel m;
        for (int b = 0; b < 2; ++b) {
            LocalBranch br;
            br.L = Ld(rng);
            const int d = std::min(dq(rng), 2 * br.L - 1);
            br.q.assign(d + 1, 0.0);
            br.q[1] = lead(rng);
            for (int i = 2; i <= d; ++i) br.q[i] = c(rng);
            // Discretize to make identical initial segments likely enough.
            for (double& x : br.q) x = std::round(x * 2.0) / 2.0;
            if (br.q[1] <= 0.0) br.q[1] = 0.5;
            m.branches.push_back(br);
        }
        if (!m.is_square_free()) continue;
        ++draws;
        for (double v : case_limit_check(m, {0, 1}, xs)) worst = std::min(worst, v);
    }
    CHECK(worst >= 0.5);
}
