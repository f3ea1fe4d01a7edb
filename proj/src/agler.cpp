#include "rif/agler.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "rif/error.hpp"
#include "rif/quadrature.hpp"

namespace rif {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

cplx checked_inv(cplx d) {
    if (std::abs(d) < 1e-300) throw DomainError("kernel evaluated at a pole");
    return 1.0 / d;
}

}  // namespace

cplx kappa(cplx z1, cplx z2) { return (2.0 * z1 * z2 - z1 - z2) * checked_inv(2.0 - z1 - z2); }

cplx kappa_d1(cplx z1, cplx z2) {
    const cplx d = checked_inv(2.0 - z1 - z2);
    return -2.0 * (z2 - 1.0) * (z2 - 1.0) * d * d;
}

cplx kappa_d2(cplx z1, cplx z2) { return kappa_d1(z2, z1); }

cplx kappa_L1(cplx z1, cplx z2, cplx w1) {
    return -2.0 * (1.0 - z2) * (1.0 - z2) * checked_inv(2.0 - z1 - z2) * checked_inv(2.0 - w1 - z2);
}

cplx kappa_L2(cplx w1, cplx z2, cplx w2) {
    return -2.0 * (1.0 - w1) * (1.0 - w1) * checked_inv(2.0 - w1 - z2) * checked_inv(2.0 - w1 - w2);
}

double refined_identity_residual(std::span<const PointPair> points) {
    double r = 0.0;
    for (const auto& p : points) {
        const cplx v = kappa(p.z1, p.z2) - kappa(p.w1, p.w2) - (p.z1 - p.w1) * kappa_L1(p.z1, p.z2, p.w1) -
                       (p.z2 - p.w2) * kappa_L2(p.w1, p.z2, p.w2);
        r = std::max(r, std::abs(v));
    }
    return r;
}

double diagonal_residual(std::span<const std::pair<cplx, cplx>> points) {
    double r = 0.0;
    for (const auto& [z1, z2] : points) {
        r = std::max(r, std::abs(kappa_L1(z1, z2, z1) - kappa_d1(z1, z2)));
        r = std::max(r, std::abs(kappa_L2(z1, z2, z2) - kappa_d2(z1, z2)));
    }
    return r;
}

cplx kappa_agler_kernel(int j, cplx z1, cplx z2, cplx w1, cplx w2) {
    const cplx den = checked_inv((2.0 - z1 - z2) * std::conj(2.0 - w1 - w2));
    if (j == 1) return 2.0 * (1.0 - z2) * std::conj(1.0 - w2) * den;
    if (j == 2) return 2.0 * (1.0 - z1) * std::conj(1.0 - w1) * den;
    throw DomainError("kernel index must be 1 or 2");
}

double agler_decomposition_residual(std::span<const PointPair> points) {
    auto p = [](cplx a, cplx b) { return 2.0 - a - b; };
    auto pt = [](cplx a, cplx b) { return 2.0 * a * b - a - b; };
    double r = 0.0;
    for (const auto& q : points) {
        const cplx lhs = p(q.z1, q.z2) * std::conj(p(q.w1, q.w2)) - pt(q.z1, q.z2) * std::conj(pt(q.w1, q.w2));
        const cplx rhs = (1.0 - q.z1 * std::conj(q.w1)) * 2.0 * (1.0 - q.z2) * std::conj(1.0 - q.w2) +
                         (1.0 - q.z2 * std::conj(q.w2)) * 2.0 * (1.0 - q.z1) * std::conj(1.0 - q.w1);
        r = std::max(r, std::abs(lhs - rhs));
    }
    return r;
}

double agler_gram_min_eigenvalue(int j, std::span<const std::pair<cplx, cplx>> points) {
    const int n = int(points.size());
    if (n == 0) throw DomainError("empty point set");
    Eigen::MatrixXcd G(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            G(a, b) = kappa_agler_kernel(j, points[a].first, points[a].second, points[b].first, points[b].second);
    const Eigen::MatrixXcd H = 0.5 * (G + G.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

AglerInnerCheck agler_inner_reduction(int nodes) {
    if (nodes < 8) throw DomainError("need at least 8 nodes");
    const QuadRule gl = gauss_legendre(nodes);
    AglerInnerCheck c;
    // Two panels (0, pi) and (pi, 2 pi); the integrand is removable at theta = 0.
    for (int panel = 0; panel < 2; ++panel)
        for (std::size_t i = 0; i < gl.x.size(); ++i) {
            const double th = kPi * (panel + 0.5 * (gl.x[i] + 1.0));
            const cplx z = std::polar(1.0, th);
            const double num = std::pow(std::abs(1.0 - z), 4), den = std::norm(2.0 - z) - 1.0;
            c.value += 0.5 * kPi * gl.w[i] * num / (den * den);
        }
    c.discrepancy = std::abs(c.value - c.printed_value) > 1e-6;
    return c;
}

NormEstimate agler_integrability(double alpha, int grid_angles, std::span<const double> eps_levels) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("alpha must lie in (0, 2)");
    if (grid_angles < 16) throw DomainError("need at least 16 angles");
    std::vector<double> eps(eps_levels.begin(), eps_levels.end());
    if (eps.empty()) eps = default_eps_levels();
    for (std::size_t i = 0; i < eps.size(); ++i)
        if (!(eps[i] > 0.0 && eps[i] < 0.5) || (i && !(eps[i] < eps[i - 1])))
            throw DomainError("truncation levels must decrease within (0, 0.5)");
    const std::size_t L = eps.size();
    const int q = std::clamp(grid_angles / 16, 8, 24);
    const QuadRule gl = gauss_legendre(q), gj = gauss_jacobi(q, 0.0, 1.0 - alpha);

    // Inner integral over (phi1, s) with eta1 = zeta1 e^{is}, at zeta2 = e^{i theta}.
    auto inner = [&](double theta) {
        const cplx z2 = std::polar(1.0, theta), c = 2.0 - z2;
        const double depth = std::abs(c) - 1.0, psi = std::arg(c);
        const double num = 4.0 * std::pow(std::abs(1.0 - z2), 4);
        // Width of the s-peak formed where the two Poisson-like factors overlap.
        const double w = std::min(1.0, 2.0 * depth);
        std::vector<double> sb{0.0};
        for (double h = 0.25 * w; h < kPi / 8; h *= 2.0) sb.push_back(h);
        for (double s = kPi / 8; s < kPi - 1e-12; s += kPi / 8)
            if (s > sb.back()) sb.push_back(s);
        sb.push_back(kPi);
        double total = 0.0;
        for (std::size_t k = 0; k + 1 < sb.size(); ++k) {
            const double a = sb[k], b = sb[k + 1], h = 0.5 * (b - a);
            for (int i = 0; i < q; ++i) {
                double s, ws;
                if (k == 0) {
                    s = h * (gj.x[i] + 1.0);
                    ws = std::pow(h, 2.0 - alpha) * gj.w[i];
                } else {
                    s = a + h * (gl.x[i] + 1.0);
                    ws = h * gl.w[i] * std::pow(2.0 * std::sin(0.5 * s), 1.0 - alpha);
                }
                if (k == 0) ws *= std::pow(2.0 * std::sin(0.5 * s) / s, 1.0 - alpha);
                double phi_int = 0.0;
                for (double sg : {1.0, -1.0}) {
                    const double peaks[2] = {psi, psi - sg * s};
                    const auto bp = graded_breakpoints(0.0, 8, peaks, 0.5 * depth);
                    for (std::size_t m = 0; m + 1 < bp.size(); ++m) {
                        const double pa = bp[m], pb = bp[m + 1], ph = 0.5 * (pb - pa);
                        for (int r = 0; r < q; ++r) {
                            const double phi = pa + ph * (gl.x[r] + 1.0);
                            const cplx z1 = std::polar(1.0, phi), e1 = std::polar(1.0, phi + sg * s);
                            phi_int += ph * gl.w[r] / (std::norm(c - z1) * std::norm(c - e1));
                        }
                    }
                }
                total += ws * phi_int;
            }
        }
        return num * total;
    };

    // Outer angle on (delta, pi], doubled by the conjugation symmetry theta -> -theta.
    std::vector<double> delta(L);
    for (std::size_t l = 0; l < L; ++l) delta[l] = 2.0 * std::asin(eps[l] / 2.0);
    std::vector<double> bp(delta.rbegin(), delta.rend());
    for (double h = 2.0 * delta[0]; h < kPi / 8; h *= 2.0) bp.push_back(h);
    for (double t = kPi / 8; t < kPi - 1e-12; t += kPi / 8)
        if (t > bp.back()) bp.push_back(t);
    bp.push_back(kPi);
    std::vector<double> vals(L, 0.0);
    for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
        const double a = bp[k], b = bp[k + 1], h = 0.5 * (b - a);
        double panel = 0.0;
        for (int i = 0; i < q; ++i) panel += h * gl.w[i] * inner(a + h * (gl.x[i] + 1.0));
        for (std::size_t l = 0; l < L; ++l)
            if (a >= delta[l] * (1.0 - 1e-12)) vals[l] += 2.0 * panel;
    }
    NormEstimate ne;
    char name[64];
    std::snprintf(name, sizeof name, "agler(alpha=%g)", alpha);
    ne.space = name;
    ne.truncation_levels = eps;
    ne.truncated_values = vals;
    const DivergenceDiagnostic d = divergence_diagnostic(vals, eps);
    ne.growth_slope = d.growth_slope;
    ne.verdict = d.verdict;
    ne.infinite = d.verdict == NormVerdict::divergent;
    ne.value = d.verdict == NormVerdict::finite ? d.extrapolated : vals.back();
    return ne;
}

}  // namespace rif
