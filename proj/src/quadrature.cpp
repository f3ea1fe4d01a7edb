#include "rif/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "rif/error.hpp"

namespace rif {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix, weights from the first eigenvector components.
QuadRule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& off, double mu0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw NumericError("Golub-Welsch eigensolver failed");
    QuadRule q;
    const int n = int(diag.size());
    for (int i = 0; i < n; ++i) {
        q.x.push_back(es.eigenvalues()[i]);
        const double v = es.eigenvectors()(0, i);
        q.w.push_back(mu0 * v * v);
    }
    return q;
}

}  // namespace

QuadRule gauss_jacobi(int n, double a, double b) {
    if (n < 1) throw DomainError("quadrature needs at least one node");
    if (!(a > -1.0 && b > -1.0)) throw DomainError("Jacobi exponents must exceed -1");
    static std::mutex mu;
    static std::map<std::tuple<int, double, double>, QuadRule> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({n, a, b});
        if (it != cache.end()) return it->second;
    }
    Eigen::VectorXd diag(n), off(std::max(n - 1, 0));
    for (int k = 0; k < n; ++k) {
        const double s = 2.0 * k + a + b;
        diag[k] = (k == 0 && std::abs(a + b + 2.0) > 0) ? (b - a) / (a + b + 2.0)
                                                        : (b * b - a * a) / (s * (s + 2.0));
        if (k + 1 < n) {
            const double k1 = k + 1.0, s1 = 2.0 * k1 + a + b;
            off[k] = std::sqrt(4.0 * k1 * (k1 + a) * (k1 + b) * (k1 + a + b) / (s1 * s1 * (s1 + 1.0) * (s1 - 1.0)));
        }
    }
    if (n > 1 && std::abs(a + b + 1.0) < 1e-14) {
        // s1 - 1 = 0 for k = 0 when a + b = -1: use the limiting form.
        const double k1 = 1.0, s1 = 2.0 + a + b;
        off[0] = std::sqrt(4.0 * k1 * (k1 + a) * (k1 + b) / (s1 * s1 * (s1 + 1.0)));
    }
    const double mu0 = std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                                std::lgamma(a + b + 2.0));
    QuadRule q = golub_welsch(diag, off, mu0);
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(std::tuple{n, a, b}, q);
    return q;
}

QuadRule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

void QuadGrid::validate() const {
    if (radial < 8 || angular < 16) throw DomainError("quadrature grid too coarse (need R >= 8, A >= 16)");
    if (!(boundary_margin >= 0.0 && boundary_margin < 0.5)) throw DomainError("boundary margin must lie in [0, 0.5)");
}

std::vector<DiskNode> QuadGrid::tensor_nodes() const {
    validate();
    const QuadRule g = gauss_legendre(radial);
    const double top = 1.0 - boundary_margin;
    std::vector<DiskNode> out;
    out.reserve(std::size_t(radial) * angular);
    for (int i = 0; i < radial; ++i) {
        const double r = 0.5 * top * (g.x[i] + 1.0), wr = 0.5 * top * g.w[i] * r / std::numbers::pi;
        for (int k = 0; k < angular; ++k) out.push_back({r, kTwoPi * k / angular, wr * kTwoPi / angular});
    }
    return out;
}

std::vector<double> graded_breakpoints(double start, int base_panels, std::span<const double> peak_angles,
                                       double scale) {
    std::vector<double> bp;
    const double base = kTwoPi / base_panels;
    for (int k = 0; k < base_panels; ++k) bp.push_back(start + base * k);
    auto put = [&](double a) {
        a = std::fmod(a - start, kTwoPi);
        if (a < 0) a += kTwoPi;
        bp.push_back(start + a);
    };
    for (double phi : peak_angles) {
        put(phi);
        for (double h = scale; h < 0.5 * base; h *= 2.0) {
            put(phi + h);
            put(phi - h);
        }
    }
    std::sort(bp.begin(), bp.end());
    std::vector<double> out;
    for (double a : bp)
        if (out.empty() || a - out.back() > 1e-15) out.push_back(a);
    if (kTwoPi - (out.back() - start) <= 1e-15) out.pop_back();
    out.push_back(start + kTwoPi);
    return out;
}

DiskIntegrator::DiskIntegrator(const QuadGrid& grid, double beta)
    : nr_(grid.radial_order()),
      na_(grid.angular_order()),
      panels_(grid.angular_panels()),
      beta_(beta),
      gl_r_(gauss_legendre(grid.radial_order())),
      gl_a_(gauss_legendre(grid.angular_order())),
      gj_(gauss_jacobi(grid.radial_order(), 0.0, beta)) {
    grid.validate();
    if (!(beta > -1.0)) throw DomainError("disk weight exponent must exceed -1");
}

std::vector<DiskIntegrator::RadialNode> DiskIntegrator::radial_nodes(double min_depth, double cutoff,
                                                                    std::span<const double> breaks) const {
    if (!(cutoff >= 0.0 && cutoff < 1.0)) throw DomainError("radial cutoff must lie in [0, 1)");
    int kmax = int(std::ceil(std::log2(16.0 / std::max(min_depth, 1e-300))));
    kmax = std::clamp(kmax, 4, 60);
    std::vector<double> bp{1.0};
    for (int k = 1; k <= kmax; ++k) bp.push_back(std::ldexp(1.0, -k));
    for (double b : breaks) bp.push_back(b);
    bp.push_back(cutoff);
    std::sort(bp.begin(), bp.end(), std::greater<>());
    std::vector<double> pts;
    for (double b : bp) {
        if (b < cutoff) break;
        if (pts.empty() || pts.back() - b > 1e-300) pts.push_back(b);
    }
    if (cutoff == 0.0 && pts.back() != 0.0) pts.push_back(0.0);
    std::vector<RadialNode> out;
    auto weight = [&](double u) { return std::pow(2.0 - u, beta_) * (1.0 - u) / std::numbers::pi; };
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const double hi = pts[k], lo = pts[k + 1], h = 0.5 * (hi - lo);
        if (lo == 0.0) {
            const double sc = std::pow(h, beta_ + 1.0);
            for (int i = 0; i < nr_; ++i) {
                const double u = h * (gj_.x[i] + 1.0);
                out.push_back({u, sc * gj_.w[i] * weight(u)});
            }
        } else {
            for (int i = 0; i < nr_; ++i) {
                const double u = lo + h * (gl_r_.x[i] + 1.0);
                out.push_back({u, h * gl_r_.w[i] * std::pow(u, beta_) * weight(u)});
            }
        }
    }
    return out;
}

}  // namespace rif
