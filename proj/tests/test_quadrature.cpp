#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include "rif/error.hpp"
#include "rif/quadrature.hpp"

using namespace rif;

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
    const QuadRule r = gauss_legendre(12);
    for (int k = 0; k <= 23; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * std::pow(r.x[i], k);
        const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
        CHECK(std::abs(s - exact) < 1e-14);
    }
}

TEST_CASE("Gauss-Jacobi moments") {
    for (double b : {-0.5, 0.3, 1.7}) {
        const QuadRule r = gauss_jacobi(10, 0.0, b);
        for (int k = 0; k <= 19; ++k) {
            // int_{-1}^{1} (1+x)^b (1+x)^k dx = 2^{b+k+1} / (b+k+1).
            double s = 0.0;
            for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * std::pow(1.0 + r.x[i], k);
            CHECK(s == doctest::Approx(std::pow(2.0, b + k + 1) / (b + k + 1)).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(gauss_jacobi(4, -1.0, 0.0), DomainError);
    CHECK_THROWS_AS(gauss_legendre(0), DomainError);
}

TEST_CASE("tensor nodes reproduce the normalized area") {
    const QuadGrid g{64, 256, 0.0};
    const auto nodes = g.tensor_nodes();
    double s = 0.0;
    for (const auto& n : nodes) {
        CHECK(n.w > 0.0);
        s += n.w;
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS((QuadGrid{4, 256, 0.0}.validate()), DomainError);
    CHECK_THROWS_AS((QuadGrid{64, 256, 0.6}.validate()), DomainError);
}

TEST_CASE("disk weight moments") {
    for (double beta : {-0.5, 0.0, 0.5, 1.0}) {
        const DiskIntegrator di(QuadGrid{64, 256, 0.0}, beta);
        const double v = di.integrate([](double, double) { return 1.0; }, {});
        // int (1 - |z|^2)^beta dA = 1 / (beta + 1).
        CHECK(v == doctest::Approx(1.0 / (beta + 1.0)).epsilon(1e-10));
    }
}

TEST_CASE("disk integral against a pole close to the circle") {
    // int dA / |1 - w z|^4 = 1 / (1 - |w|^2)^2.
    const DiskIntegrator di(QuadGrid{64, 256, 0.0}, 0.0);
    for (double w : {0.5, 0.99, 0.99999}) {
        const DiskPeak peak{0.0, 1.0 / w - 1.0};
        const double v = di.integrate(
            [&](double u, double phi) { return std::pow(std::norm(1.0 - w * std::polar(1.0 - u, phi)), -2.0); },
            std::span<const DiskPeak>(&peak, 1));
        CHECK(v == doctest::Approx(std::pow(1.0 - w * w, -2.0)).epsilon(1e-7));
    }
}

TEST_CASE("graded breakpoints cover the circle in order") {
    const double peaks[] = {0.1, -0.2};
    const auto bp = graded_breakpoints(0.0, 8, peaks, 1e-6);
    CHECK(bp.front() == 0.0);
    CHECK(bp.back() == doctest::Approx(2 * std::numbers::pi));
    CHECK(std::is_sorted(bp.begin(), bp.end()));
    CHECK(std::adjacent_find(bp.begin(), bp.end()) == bp.end());
    CHECK(bp.size() > 40);
}
