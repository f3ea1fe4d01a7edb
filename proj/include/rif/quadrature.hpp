#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace rif {

struct QuadRule {
    std::vector<double> x;
    std::vector<double> w;
};

// Gauss-Legendre on [-1, 1].
QuadRule gauss_legendre(int n);
// Gauss-Jacobi on [-1, 1] for the weight (1 - x)^a (1 + x)^b, a, b > -1.
QuadRule gauss_jacobi(int n, double a, double b);

struct DiskNode {
    double r, phi, w;
};

// Resolution knob shared by the disk and torus quadratures.
struct QuadGrid {
    int radial = 64;
    int angular = 256;
    // Integration restricted to |z| <= 1 - boundary_margin where an operation says so.
    double boundary_margin = 0.0;

    // Nodes per Gauss-Legendre panel.
    int radial_order() const { return std::clamp(radial / 8, 6, 24); }
    int angular_order() const { return std::clamp(angular / 32, 6, 24); }
    // Uniform angular panels before peak refinement.
    int angular_panels() const { return std::clamp(angular / angular_order() / 2, 4, 32); }

    void validate() const;
    // Plain tensor rule: `radial` Gauss-Legendre radii on (0, 1) times `angular` uniform angles,
    // weights for the normalized area dx dy / pi.
    std::vector<DiskNode> tensor_nodes() const;
};

// Point where an integrand concentrates: a pole at angle `angle` and distance `depth` outside the circle.
struct DiskPeak {
    double angle;
    double depth;
};

// Panels [a, b] in an angular window, refined geometrically toward the given peak angles.
// `scale` is the width of the innermost panels around each peak.
std::vector<double> graded_breakpoints(double start, int base_panels, std::span<const double> peak_angles,
                                       double scale);

// Composite rule for the disk with weight (1 - |z|^2)^beta dA, dA = dx dy / pi, graded toward
// poles close to the circle. Radial variable u = 1 - r.
class DiskIntegrator {
public:
    DiskIntegrator(const QuadGrid& grid, double beta);

    double beta() const { return beta_; }

    // Calls visit(u, phi, weight) over the region u >= cutoff. Every value in `breaks` becomes a
    // radial panel boundary, so that indicator sums over u >= break are exact partitions.
    template <class Visit>
    void visit(std::span<const DiskPeak> peaks, double cutoff, std::span<const double> breaks, Visit&& v) const;

    template <class F>
    double integrate(F&& f, std::span<const DiskPeak> peaks, double cutoff = 0.0) const {
        double acc = 0.0;
        visit(peaks, cutoff, {}, [&](double u, double phi, double w) { acc += w * f(u, phi); });
        return acc;
    }

    struct RadialNode {
        double u, w;
    };
    // Radial nodes with weights (1 - r^2)^beta r dr * (1 / pi) folded in.
    std::vector<RadialNode> radial_nodes(double min_depth, double cutoff, std::span<const double> breaks) const;

private:
    int nr_, na_, panels_;
    double beta_;
    QuadRule gl_r_, gl_a_, gj_;
};

template <class Visit>
void DiskIntegrator::visit(std::span<const DiskPeak> peaks, double cutoff, std::span<const double> breaks,
                           Visit&& v) const {
    double dmin = 1.0;
    std::vector<double> angles;
    for (const auto& p : peaks) {
        dmin = std::min(dmin, std::max(p.depth, 1e-300));
        if (p.depth < 0.5) angles.push_back(p.angle);
    }
    const auto rad = radial_nodes(dmin, cutoff, breaks);
    std::vector<double> bp;
    for (const auto& rn : rad) {
        double scale = 1.0;
        for (const auto& p : peaks)
            if (p.depth < 0.5) scale = std::min(scale, std::max(rn.u, p.depth));
        bp = graded_breakpoints(0.0, panels_, angles, 0.5 * scale);
        for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
            const double a = bp[k], b = bp[k + 1], h = 0.5 * (b - a), m = 0.5 * (a + b);
            for (int i = 0; i < na_; ++i) v(rn.u, m + h * gl_a_.x[i], rn.w * h * gl_a_.w[i]);
        }
    }
}

}  // namespace rif
