#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rif/bipoly.hpp"

namespace rif {

struct CoeffGrid {
    int kmax = 0;
    int lmax = 0;
    // Row-major, a[k * (lmax + 1) + l].
    std::vector<cplx> a;

    cplx at(int k, int l) const { return a[std::size_t(k) * (lmax + 1) + l]; }
    // Columns k, l, re, im.
    std::string to_csv() const;
};

// Taylor coefficients of f up to (kmax, lmax) by power-series division.
CoeffGrid taylor_coeffs(const Rif& f, int kmax, int lmax);
// Coefficients of a polynomial as a grid of its declared bidegree.
CoeffGrid coeff_grid(const BiPoly& p);

// Streams the Taylor coefficients diagonal by diagonal without storing the full grid:
// visit(s, d) with d[k] = a[k, s - k], k = 0..s, for s = 0..smax.
void for_each_diagonal(const Rif& f, int smax,
                       const std::function<void(int, const std::vector<cplx>&)>& visit);

struct SpaceSpec {
    enum class Kind { frak, bcg, bcg_weighted, higher_order };
    Kind kind = Kind::bcg;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    int m = 1;
    int n = 1;

    static SpaceSpec frak(double a1, double a2);
    static SpaceSpec bcg();
    static SpaceSpec bcg_weighted(double alpha);
    static SpaceSpec higher_order(int m, int n);

    double weight(int k, int l) const;
    // e.g. "frak(0.5,0.5)", "bcg", "bcgw(1.2)", "higher(2,1)".
    std::string name() const;
    // Short kind tag used on the command line: frak, bcg, bcgw, higher.
    std::string kind_tag() const;
};

// S(N) = sum over k + l <= N of weight(k, l) |a_kl|^2, one value per cut.
std::vector<double> coeff_norm_partial_sums(const CoeffGrid& g, const SpaceSpec& space, std::span<const int> cuts);
// Same, streaming the coefficients of f.
std::vector<double> coeff_norm_partial_sums(const Rif& f, const SpaceSpec& space, std::span<const int> cuts);

// Coefficient of z1^(k+1) z2^(l+1) in the Taylor series of (2 z1 z2 - z1 - z2) / (2 - z1 - z2).
double kappa_coeff_closed_form(int k, int l);

enum class TailMode { coefficient_diagonal, partial_sum_growth };

struct TailFit {
    double slope = 0.0;
    // The decay steepens markedly from the first to the second half of the data.
    bool super_polynomial = false;
};

// Log-log slope over the last half of (x, values).
TailFit tail_exponent_fit(std::span<const double> x, std::span<const double> values, TailMode mode);
// x = 1, 2, ..., n.
TailFit tail_exponent_fit(std::span<const double> values, TailMode mode);

}  // namespace rif
