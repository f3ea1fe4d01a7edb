#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "rif/agler.hpp"
#include "rif/error.hpp"
#include "rif/polyexpr.hpp"

using namespace rif;

namespace {

constexpr double kPi = std::numbers::pi;

cplx rnd(std::mt19937_64& rng, double r) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return std::polar(r * std::sqrt(u(rng)), 2 * kPi * u(rng));
}

// Truncated integrability integral through the Poisson semigroup: for zeta2 = e^{i theta} the inner
// integral is 2 pi int |2 sin(s/2)|^(1 - alpha) P_r(s) ds with r = 1 / |2 - zeta2|^2.
double poisson_oracle(double alpha, double eps) {
    using namespace boost::math::quadrature;
    const double delta = 2.0 * std::asin(eps / 2.0);
    tanh_sinh<double> ts;
    auto inner = [&](double theta) {
        const double r = 1.0 / std::norm(2.0 - std::polar(1.0, theta));
        auto g = [&](double s) {
            const double P = (1 - r * r) / (1 - 2 * r * std::cos(s) + r * r);
            return std::pow(2 * std::sin(s / 2), 1 - alpha) * P;
        };
        return 2 * kPi * 2 * ts.integrate(g, 0.0, kPi, 1e-12);
    };
    return 2 * gauss_kronrod<double, 31>::integrate(inner, delta, kPi, 15, 1e-11);
}

}  // namespace

TEST_CASE("kernel values") {
    CHECK(std::abs(kappa_L1(0.3, 1.0, -0.4)) == 0.0);
    const cplx z1 = 0.3, z2(0.0, 0.2);
    const cplx expect = -2.0 * (z2 - 1.0) * (z2 - 1.0) / ((2.0 - z1 - z2) * (2.0 - z1 - z2));
    CHECK(std::abs(kappa_L1(z1, z2, z1) - expect) < 1e-15);
    CHECK(std::abs(kappa_d1(z1, z2) - expect) < 1e-15);
    CHECK_THROWS_AS(kappa_L1(1.0, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(kappa(1.0, 1.0), DomainError);
}

TEST_CASE("kappa matches the rational inner function") {
    const Rif f = Rif::from_denominator(parse_poly("2 - z1 - z2"));
    std::mt19937_64 rng(51);
    for (int t = 0; t < 20; ++t) {
        const cplx a = rnd(rng, 0.95), b = rnd(rng, 0.95);
        CHECK(std::abs(kappa(a, b) - f(a, b)) < 1e-14);
    }
}

TEST_CASE("refined identity") {
    const PointPair same[] = {{0.2, 0.3, 0.2, 0.3}};
    CHECK(refined_identity_residual(same) == 0.0);
    const PointPair fixed[] = {{0.0, 0.0, 0.5, 0.5}};
    CHECK(refined_identity_residual(fixed) < 1e-12);
    std::mt19937_64 rng(52);
    std::vector<PointPair> pts;
    for (int i = 0; i < 100; ++i) pts.push_back({rnd(rng, 0.9), rnd(rng, 0.9), rnd(rng, 0.9), rnd(rng, 0.9)});
    CHECK(refined_identity_residual(pts) < 1e-10);
    CHECK(agler_decomposition_residual(pts) < 1e-12);
}

TEST_CASE("diagonal property") {
    std::mt19937_64 rng(53);
    std::vector<std::pair<cplx, cplx>> pts;
    for (int i = 0; i < 100; ++i) pts.emplace_back(rnd(rng, 0.95), rnd(rng, 0.95));
    CHECK(diagonal_residual(pts) < 1e-12);
}

TEST_CASE("Agler kernels are positive semi-definite") {
    std::mt19937_64 rng(54);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::pair<cplx, cplx>> pts;
        for (int i = 0; i < 5; ++i) pts.emplace_back(rnd(rng, 0.95), rnd(rng, 0.95));
        CHECK(agler_gram_min_eigenvalue(1, pts) >= -1e-8);
        CHECK(agler_gram_min_eigenvalue(2, pts) >= -1e-8);
    }
    // The two kernels add up to (1 - kappa(z) conj kappa(w)) after weighting by (1 - z_j conj w_j).
    const cplx z1(0.2, 0.1), z2(-0.4, 0.3), w1(0.5, -0.2), w2(0.1, 0.6);
    const cplx lhs = 1.0 - kappa(z1, z2) * std::conj(kappa(w1, w2));
    const cplx rhs = (1.0 - z1 * std::conj(w1)) * kappa_agler_kernel(1, z1, z2, w1, w2) +
                     (1.0 - z2 * std::conj(w2)) * kappa_agler_kernel(2, z1, z2, w1, w2);
    CHECK(std::abs(lhs - rhs) < 1e-14);
    CHECK_THROWS_AS(kappa_agler_kernel(3, z1, z2, w1, w2), DomainError);
}

TEST_CASE("inner reduction") {
    const AglerInnerCheck c = agler_inner_reduction();
    CHECK(c.value == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(c.discrepancy);
    CHECK(c.printed_value == 0.25);
}

TEST_CASE("integrability at alpha = 1 is 8 pi^3") {
    const NormEstimate e = agler_integrability(1.0);
    CHECK(e.verdict == NormVerdict::finite);
    CHECK(e.value == doctest::Approx(8 * kPi * kPi * kPi).epsilon(1e-6));
}

TEST_CASE("integrability matches the Poisson semigroup oracle") {
    for (double alpha : {0.4, 1.3}) {
        const double eps[] = {0.3, 0.15, 0.075, 0.0375};
        const NormEstimate e = agler_integrability(alpha, 128, eps);
        for (int l : {0, 3}) CHECK(e.truncated_values[l] == doctest::Approx(poisson_oracle(alpha, eps[l])).epsilon(1e-6));
    }
}

TEST_CASE("integrability verdicts agree with the slice norm") {
    const Rif f = Rif::from_denominator(parse_poly("2 - z1 - z2"));
    for (double alpha : {0.4, 0.8}) {
        const NormEstimate a = agler_integrability(alpha);
        const NormEstimate s = slice_norm(f, Var::z1, 1, alpha, QuadGrid{64, 256, 0.0});
        CHECK(a.verdict == NormVerdict::finite);
        CHECK(a.verdict == s.verdict);
    }
    CHECK(agler_integrability(1.8).verdict == NormVerdict::divergent);
    CHECK_THROWS_AS(agler_integrability(2.0), DomainError);
}
