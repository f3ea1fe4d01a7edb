#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rif/bipoly.hpp"

namespace rif {

struct SliceRootSet {
    cplx zeta2;
    // Sorted by argument, then modulus.
    std::vector<cplx> roots;
    // 1 - |a_j| evaluated in extended precision.
    std::vector<double> one_minus_abs;
    // |full numerator(a_j, zeta2)|.
    std::vector<double> residuals;
    // Number of roots lost to a vanishing leading coefficient.
    int at_infinity = 0;
};

// Zeros of the slice z1 -> phi(z1, zeta2), |zeta2| = 1.
SliceRootSet slice_roots(const Rif& f, cplx zeta2);
// Same with zeta2 = e^{i(t0 + dt)}; the angle sum is formed in extended precision so that
// tiny offsets dt from a singular angle t0 are resolved.
SliceRootSet slice_roots_at_angle(const Rif& f, double t0, double dt);

struct BranchSample {
    double theta = 0.0;
    cplx zeta2;
    // roots[j] belongs to branch j.
    std::vector<cplx> roots;
    std::vector<double> distances;
};

struct BranchTrace {
    cplx tau2;
    double arc_halfwidth = 0.0;
    std::vector<BranchSample> samples;
    // Sample indices where two matched roots are closer than 1e-8.
    std::vector<std::size_t> collisions;
    // Set when the root count changed along the arc; samples stop before the change.
    bool truncated = false;

    std::size_t n_branches() const { return samples.empty() ? 0 : samples.front().roots.size(); }
    // Columns theta, branch_id, re, im, one_minus_abs.
    std::string to_csv() const;
};

// Samples zeta2 = tau2 e^{i theta_k}, theta_k = arc_halfwidth * 2^-k, k = 0..n_samples-1,
// and matches roots between consecutive samples.
BranchTrace trace_branches(const Rif& f, cplx tau2, double arc_halfwidth, int n_samples);

}  // namespace rif
