#pragma once

#include <span>
#include <utility>
#include <vector>

#include "rif/bipoly.hpp"
#include "rif/quadnorms.hpp"

namespace rif {

// kappa(z1, z2) = (2 z1 z2 - z1 - z2) / (2 - z1 - z2) and its partial derivatives.
cplx kappa(cplx z1, cplx z2);
cplx kappa_d1(cplx z1, cplx z2);
cplx kappa_d2(cplx z1, cplx z2);

// Refined Agler kernels of kappa. Throw DomainError at a pole.
cplx kappa_L1(cplx z1, cplx z2, cplx w1);
cplx kappa_L2(cplx w1, cplx z2, cplx w2);

struct PointPair {
    cplx z1, z2, w1, w2;
};

// max |kappa(z) - kappa(w) - (z1 - w1) L1(z1, z2, w1) - (z2 - w2) L2(w1, z2, w2)|.
double refined_identity_residual(std::span<const PointPair> points);
// max over points of |L1(z1, z2, z1) - d1 kappa| and |L2(z1, z2, z2) - d2 kappa|.
double diagonal_residual(std::span<const std::pair<cplx, cplx>> points);

// Sesqui-analytic kernels of the Agler decomposition
//   p(z) conj p(w) - pt(z) conj pt(w) = (1 - z1 conj w1) G1(z, w) + (1 - z2 conj w2) G2(z, w),
// G1 = 2 (1 - z2) conj(1 - w2), G2 = 2 (1 - z1) conj(1 - w1); divided by p(z) conj p(w) they give the
// kernels of 1 - kappa(z) conj kappa(w).
cplx kappa_agler_kernel(int j, cplx z1, cplx z2, cplx w1, cplx w2);
// max |p(z) conj p(w) - pt(z) conj pt(w) - sum_j (1 - z_j conj w_j) G_j(z, w)|.
double agler_decomposition_residual(std::span<const PointPair> points);
// Smallest eigenvalue of the Hermitian Gram matrix [kernel_j(x_a, x_b)].
double agler_gram_min_eigenvalue(int j, std::span<const std::pair<cplx, cplx>> points);

struct AglerInnerCheck {
    // Integral over the circle of |1 - zeta|^4 / (|2 - zeta|^2 - 1)^2 |d zeta|.
    double value = 0.0;
    // Value printed for this integral in the literature this check follows.
    double printed_value = 0.25;
    bool discrepancy = false;
};

AglerInnerCheck agler_inner_reduction(int nodes = 64);

// Integral over the three-torus of |zeta1 - eta1|^(1 - alpha) |L1(zeta1, zeta2, eta1)|^2, with arcs
// |zeta2 - 1| < eps removed per level.
NormEstimate agler_integrability(double alpha, int grid_angles = 128, std::span<const double> eps_levels = {});

}  // namespace rif
