#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rif/bipoly.hpp"
#include "rif/quadrature.hpp"
#include "rif/series.hpp"
#include "rif/stability.hpp"

namespace rif {

enum class NormVerdict { finite, divergent, inconclusive };
const char* to_string(NormVerdict v);

struct DivergenceDiagnostic {
    // Log-log slope of the increments V_k - V_{k-1} against 1/eps over the last levels
    // (the value slope itself when the increments vanish).
    double growth_slope = 0.0;
    // Log-log slope of the values themselves over the last four levels.
    double value_slope = 0.0;
    NormVerdict verdict = NormVerdict::inconclusive;
    // Limit estimate for a finite verdict (tail of the increments summed geometrically).
    double extrapolated = 0.0;
};

// Needs at least four levels with eps decreasing geometrically.
DivergenceDiagnostic divergence_diagnostic(std::span<const double> truncated_values, std::span<const double> eps_levels);

struct NormEstimate {
    std::string space;
    // Limit estimate when finite; last truncated value otherwise.
    double value = 0.0;
    bool infinite = false;
    std::vector<double> truncation_levels;
    std::vector<double> truncated_values;
    double growth_slope = 0.0;
    NormVerdict verdict = NormVerdict::inconclusive;
    // An evaluation node was moved off a denominator zero.
    bool perturbed = false;

    // Columns eps, value.
    std::string to_csv() const;
};

// 0.3 * 2^-k, k = 0..6.
std::vector<double> default_eps_levels();

// Integral over theta of the weighted Bergman-type norm of the n-th derivative of the slice
// z -> phi(z, e^{i theta}) (variable z1; z2 handled by exchanging variables). Truncation removes the
// arcs |e^{i theta} - tau| < eps around singular slice values tau.
NormEstimate slice_norm(const Rif& f, Var variable, int order, double alpha, const QuadGrid& grid,
                        std::span<const double> eps_levels = {});
// Same, with the torus zeros supplied by the caller.
NormEstimate slice_norm(const Rif& f, Var variable, int order, double alpha, const QuadGrid& grid,
                        const TorusZeroSet& zeros, std::span<const double> eps_levels);

// Integral of |d^2(z1 z2 f)/dz1 dz2|^2 against dA_{alpha1}(z1) dA_{alpha2}(z2), truncated radially at
// |z_j| <= 1 - eps.
NormEstimate mixed_dirichlet_norm(const Rif& f, double alpha1, double alpha2, const QuadGrid& grid,
                                  std::span<const double> eps_levels = {});
NormEstimate mixed_dirichlet_norm(const BiPoly& f, double alpha1, double alpha2, const QuadGrid& grid,
                                  std::span<const double> eps_levels = {});

struct RudinForelliResult {
    double beta = 0.0;
    double gamma = 0.0;
    std::vector<double> moduli;
    std::vector<double> values;
    // Slope of log value against -log(1 - |w|^2).
    double exponent = 0.0;
    // Slope and max residual of value against -log(1 - |w|^2) (the gamma = 0 reading).
    double log_slope = 0.0;
    double log_fit_residual = 0.0;
    int dropped = 0;
};

// I(w) = integral of (1-|z|^2)^beta / |1 - conj(w) z|^(2+beta+gamma) dA for real w = |w|.
RudinForelliResult rudin_forelli_check(double beta, double gamma, std::span<const double> w_moduli,
                                       const QuadGrid& grid);

struct LowerBoundCheck {
    // (2 - alpha) * integral of |B'|^2 (1-|z|^2)^(1-alpha) dA.
    double lhs = 0.0;
    // Same integral without the (2 - alpha) normalization.
    double lhs_unnormalized = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

LowerBoundCheck blaschke_lower_bound_check(std::span<const cplx> zeros, double alpha, const QuadGrid& grid);

// Weighted Douglas integral (1/4pi^2) int int |f(zeta)-f(eta)|^2 / |zeta-eta|^(1+alpha) |dzeta||deta|.
double douglas_1d(const std::function<cplx(cplx)>& boundary, double alpha, int grid_angles);
double douglas_1d(const UniPoly& f, double alpha, int grid_angles);

// Four-term bidisc formula: |f(0,0)|^2 + two axis Douglas integrals + the rectangle-difference term.
double douglas_bidisc_weighted(const BiPoly& f, double alpha, int grid_angles);

}  // namespace rif
