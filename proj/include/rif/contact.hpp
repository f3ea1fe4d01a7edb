#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rif/bipoly.hpp"
#include "rif/slices.hpp"
#include "rif/stability.hpp"

namespace rif {

double pseudo_distance_disk(cplx z, cplx w);
double pseudo_distance_halfplane(cplx z, cplx w);
// beta(w) = (1 + i w) / (1 - i w) and its inverse.
cplx cayley_to_disk(cplx w);
cplx cayley_from_disk(cplx z);

struct ContactOrderEstimate {
    TorusPoint tau;
    // Slice variable whose zeros were traced (z1: zeros in z1 as zeta2 -> tau2).
    Var variable = Var::z1;
    double fitted_slope = 0.0;
    int K = 0;
    double fit_residual = 0.0;
    // Per-branch log-log slopes over the same window.
    std::vector<double> branch_orders;
    bool square_free = true;
};

inline constexpr int kContactSamples = 24;
inline constexpr double kContactHalfwidth = 0.3;

// Traces slice zeros in z1 toward tau2 and fits min_j(1 - |a_j|) against |tau2 - zeta2|.
ContactOrderEstimate estimate_contact_order(const Rif& f, const TorusPoint& tau,
                                            int n_samples = kContactSamples,
                                            double arc_halfwidth = kContactHalfwidth);

struct ContactProfile {
    TorusZeroSet zeros;
    // Estimates for every singularity in both slice orientations.
    std::vector<ContactOrderEstimate> estimates;
    std::vector<std::string> warnings;
    // Max over estimates; 0 when there are no singularities.
    int K = 0;
    bool square_free = true;
};

ContactProfile contact_profile(const Rif& f, int torus_grid = 256);

struct LocalBranch {
    // q(x) = q[0] + q[1] x + ...; q[0] = 0, q[1] > 0.
    std::vector<double> q;
    int L = 1;
};

// Local model prod_j (z1 + q_j(z2) + i z2^{2 L_j}).
struct LocalModel {
    std::vector<LocalBranch> branches;

    // Throws DomainError when a branch violates q(0) = 0, q'(0) > 0, deg q < 2L.
    void validate() const;
    bool is_square_free() const;
};

// rho_H(y_j(x), y_k(x)) with y_m(x) = q_m(x) + i x^{2 L_m}.
std::vector<double> case_limit_check(const LocalModel& model, std::pair<std::size_t, std::size_t> pair,
                                     std::span<const double> x_values);

}  // namespace rif
