#pragma once

#include <vector>

#include "rif/bipoly.hpp"

namespace rif {

struct RootResult {
    std::vector<cplx> roots;
    // Degree drop: number of leading coefficients treated as zero.
    int at_infinity = 0;
};

// All roots of a univariate polynomial via companion-matrix eigenvalues followed by
// `polish_steps` Newton steps. Leading coefficients with |a_k| <= lead_tol * max|a| are dropped.
RootResult poly_roots(const UniPoly& a, double lead_tol = 1e-12, int polish_steps = 3);

}  // namespace rif
