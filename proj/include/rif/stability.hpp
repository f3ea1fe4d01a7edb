#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rif/bipoly.hpp"

namespace rif {

enum class StabilityVerdict { stable, unstable, inconclusive };

const char* to_string(StabilityVerdict v);

struct StabilityCertificate {
    StabilityVerdict verdict = StabilityVerdict::stable;
    std::optional<std::pair<cplx, cplx>> witness;
    int grid_resolution = 0;
    // min over the scan of |root| - 1, clipped at zero.
    double min_slice_root_margin = 0.0;
};

// Slice-root scan on circles |z_k| = r, r = 0.1, ..., 1.0, in both variables, at `grid` and 2*grid points.
StabilityCertificate is_stable(const BiPoly& p, int grid = 128);

// Point of the torus given by its angles.
struct TorusPoint {
    double s = 0.0;
    double t = 0.0;
    cplx z1() const { return std::polar(1.0, s); }
    cplx z2() const { return std::polar(1.0, t); }
};

// Angular distance on the torus (max of the two circle distances).
double torus_distance(const TorusPoint& a, const TorusPoint& b);

struct TorusZeroSet {
    std::vector<TorusPoint> points;
    std::vector<double> residuals;
    // Candidates whose refinement failed.
    int dropped = 0;
};

TorusZeroSet find_torus_zeros(const BiPoly& p, int grid = 256);

}  // namespace rif
