#include "rif/quadnorms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "rif/error.hpp"
#include "rif/fit.hpp"
#include "rif/roots.hpp"

namespace rif {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

double circ_dist(double a, double b) {
    double d = std::fmod(std::abs(a - b), kTwoPi);
    return std::min(d, kTwoPi - d);
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("alpha must lie in (0, 2)");
}

std::vector<double> checked_levels(std::span<const double> eps) {
    std::vector<double> e(eps.begin(), eps.end());
    if (e.empty()) e = default_eps_levels();
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (!(e[i] > 0.0 && e[i] < 0.5)) throw DomainError("truncation levels must lie in (0, 0.5)");
        if (i && !(e[i] < e[i - 1])) throw DomainError("truncation levels must decrease");
    }
    return e;
}

// Values and derivatives up to `n` of U/P at z, given derivatives of U and P.
cplx quotient_derivative(const cplx* U, const cplx* P, int n) {
    cplx q[9];
    for (int j = 0; j <= n; ++j) {
        cplx v = U[j];
        double binom = 1.0;
        for (int k = 1; k <= j; ++k) {
            binom = binom * (j - k + 1) / k;
            v -= binom * P[k] * q[j - k];
        }
        q[j] = v / P[0];
    }
    return q[n];
}

NormEstimate finish(std::string space, std::vector<double> eps, std::vector<double> vals, bool perturbed) {
    NormEstimate ne;
    ne.space = std::move(space);
    ne.truncation_levels = std::move(eps);
    ne.truncated_values = std::move(vals);
    ne.perturbed = perturbed;
    const DivergenceDiagnostic d = divergence_diagnostic(ne.truncated_values, ne.truncation_levels);
    ne.growth_slope = d.growth_slope;
    ne.verdict = d.verdict;
    ne.infinite = d.verdict == NormVerdict::divergent;
    ne.value = d.verdict == NormVerdict::finite ? d.extrapolated : ne.truncated_values.back();
    return ne;
}

}  // namespace

const char* to_string(NormVerdict v) {
    switch (v) {
        case NormVerdict::finite: return "finite";
        case NormVerdict::divergent: return "divergent";
        case NormVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

std::vector<double> default_eps_levels() {
    std::vector<double> e;
    for (int k = 0; k <= 6; ++k) e.push_back(std::ldexp(0.3, -k));
    return e;
}

std::string NormEstimate::to_csv() const {
    std::string out = "eps,value\n";
    char buf[96];
    for (std::size_t i = 0; i < truncation_levels.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", truncation_levels[i], truncated_values[i]);
        out += buf;
    }
    return out;
}

DivergenceDiagnostic divergence_diagnostic(std::span<const double> v, std::span<const double> eps) {
    const std::size_t n = v.size();
    if (n < 4 || eps.size() != n) throw DomainError("divergence diagnostic needs at least four levels");
    for (std::size_t i = 0; i < n; ++i)
        if (!(eps[i] > 0.0)) throw DomainError("truncation levels must be positive");
    const double rho = eps[1] / eps[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double r = eps[i] / eps[i - 1];
        if (!(r < 1.0) || std::abs(r - rho) > 1e-6 * rho) throw DomainError("truncation levels must form a decreasing geometric sequence");
    }
    DivergenceDiagnostic d;
    double scale = 0.0;
    for (double x : v) scale = std::max(scale, std::abs(x));
    bool monotone = true;
    for (std::size_t i = 1; i < n; ++i)
        if (v[i] < v[i - 1] - 1e-9 * std::max(1.0, std::abs(v[i - 1]))) monotone = false;

    std::vector<double> lx, ly;
    for (std::size_t i = n - 4; i < n; ++i) {
        lx.push_back(-std::log(eps[i]));
        ly.push_back(std::log(std::max(v[i], 1e-300)));
    }
    const bool positive = std::all_of(v.begin() + (n - 4), v.end(), [](double x) { return x > 0.0; });
    d.value_slope = positive ? fit_line(lx, ly).slope : 0.0;
    d.extrapolated = v[n - 1];

    double dmax = 0.0;
    std::vector<double> ix, iy;
    for (std::size_t i = n - 3; i < n; ++i) dmax = std::max(dmax, v[i] - v[i - 1]);
    if (dmax <= 1e-12 * scale || scale == 0.0) {
        d.growth_slope = d.value_slope;
        d.verdict = monotone ? NormVerdict::finite : NormVerdict::inconclusive;
        return d;
    }
    for (std::size_t i = n - 3; i < n; ++i) {
        ix.push_back(-std::log(eps[i]));
        iy.push_back(std::log(std::max(v[i] - v[i - 1], 1e-12 * scale)));
    }
    d.growth_slope = fit_line(ix, iy).slope;
    if (!monotone) {
        d.verdict = NormVerdict::inconclusive;
        return d;
    }
    if (d.growth_slope > 0.1) {
        d.verdict = NormVerdict::divergent;
    } else if (d.growth_slope < -0.1) {
        const double q = std::pow(1.0 / rho, d.growth_slope);
        d.verdict = NormVerdict::finite;
        d.extrapolated = v[n - 1] + (v[n - 1] - v[n - 2]) * q / (1.0 - q);
    } else {
        const double rel = std::abs(v[n - 1] - v[n - 2]) / std::max(std::abs(v[n - 1]), 1e-300);
        d.verdict = rel < 0.01 ? NormVerdict::finite : NormVerdict::inconclusive;
    }
    return d;
}

NormEstimate slice_norm(const Rif& f, Var variable, int order, double alpha, const QuadGrid& grid,
                        std::span<const double> eps_levels) {
    return slice_norm(f, variable, order, alpha, grid, find_torus_zeros(f.denom(), 256), eps_levels);
}

NormEstimate slice_norm(const Rif& f, Var variable, int order, double alpha, const QuadGrid& grid,
                        const TorusZeroSet& zeros, std::span<const double> eps_levels) {
    check_alpha(alpha);
    grid.validate();
    if (order < 1 || order > 8) throw DomainError("derivative order must lie in 1..8");
    const std::vector<double> eps = checked_levels(eps_levels);
    const std::size_t L = eps.size();
    const Rif g = variable == Var::z1 ? f : f.swapped();
    const BiPoly& W = g.full_numerator();
    const BiPoly& P = g.denom();

    std::vector<double> sing;
    for (const auto& tp : zeros.points) {
        const double t = variable == Var::z1 ? tp.t : tp.s;
        if (std::none_of(sing.begin(), sing.end(), [&](double x) { return circ_dist(x, t) < 1e-9; })) sing.push_back(t);
    }
    std::vector<double> delta(L);
    for (std::size_t l = 0; l < L; ++l) delta[l] = 2.0 * std::asin(eps[l] / 2.0);

    const DiskIntegrator disk(grid, 1.0 - alpha);
    std::vector<cplx> dU(order + 1), dP(order + 1);
    // Inner integral at zeta2 = e^{i theta}; nullopt when a pole sits on the circle.
    auto inner = [&](double theta) -> std::optional<double> {
        const cplx z2 = std::polar(1.0, theta);
        const UniPoly U = W.slice_z1(z2), Pp = P.slice_z1(z2);
        std::vector<DiskPeak> peaks;
        for (cplx b : poly_roots(Pp).roots) {
            const double depth = std::abs(b) - 1.0;
            if (depth < 1e-14) return std::nullopt;
            peaks.push_back({std::arg(b), depth});
        }
        return disk.integrate(
            [&](double u, double phi) {
                const cplx z = std::polar(1.0 - u, phi);
                horner_derivs(U, z, order, dU.data());
                horner_derivs(Pp, z, order, dP.data());
                return std::norm(quotient_derivative(dU.data(), dP.data(), order));
            },
            peaks);
    };

    // Outer breakpoints: uniform panels plus, around each singular angle, the band edges of every
    // level and a geometric continuation outward.
    const int base = grid.angular_panels();
    std::vector<double> bp;
    for (int k = 0; k < base; ++k) bp.push_back(kTwoPi * k / base);
    auto put = [&](double a) {
        a = std::fmod(a, kTwoPi);
        if (a < 0) a += kTwoPi;
        bp.push_back(a);
    };
    for (double t : sing) {
        for (double d : delta) put(t + d), put(t - d);
        for (double h = 2.0 * delta[0]; h < 0.5 * kTwoPi / base; h *= 2.0) put(t + h), put(t - h);
    }
    std::sort(bp.begin(), bp.end());
    std::vector<double> pts;
    for (double a : bp)
        if (pts.empty() || a - pts.back() > 1e-15) pts.push_back(a);
    pts.push_back(pts.front() + kTwoPi);

    const QuadRule gl = gauss_legendre(grid.angular_order());
    std::vector<double> vals(L, 0.0);
    bool perturbed = false;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const double a = pts[k], b = pts[k + 1];
        double dist = 1e300;
        for (double t : sing) {
            const double m = std::fmod(t - a + 2 * kTwoPi, kTwoPi);
            dist = std::min(dist, m < b - a ? 0.0 : std::min(circ_dist(t, a), circ_dist(t, b)));
        }
        if (dist < delta[L - 1] * (1.0 - 1e-9)) continue;
        const double h = 0.5 * (b - a), mid = 0.5 * (a + b);
        double panel = 0.0;
        for (std::size_t i = 0; i < gl.x.size(); ++i) {
            double theta = mid + h * gl.x[i];
            std::optional<double> v = inner(theta);
            for (int shift = 1; !v && shift <= 4; ++shift) {
                perturbed = true;
                theta += 0.5 * h / double(gl.x.size());
                v = inner(theta);
            }
            if (!v) throw NumericError("slice denominator vanishes on the circle at every shifted node");
            panel += h * gl.w[i] * *v;
        }
        for (std::size_t l = 0; l < L; ++l)
            if (dist >= delta[l] * (1.0 - 1e-9)) vals[l] += panel;
    }
    char name[96];
    std::snprintf(name, sizeof name, "slice(%s,n=%d,alpha=%g)", variable == Var::z1 ? "z1" : "z2", order, alpha);
    return finish(name, eps, vals, perturbed);
}

namespace {

NormEstimate mixed_impl(const BiPoly& W, const BiPoly& p, double a1, double a2, const QuadGrid& grid,
                        std::span<const double> eps_levels) {
    check_alpha(a1);
    check_alpha(a2);
    grid.validate();
    const std::vector<double> eps = checked_levels(eps_levels);
    const BiPoly G = BiPoly::monomial(1, 1) * W;
    const BiPoly G2 = G.partial_derivative(Var::z2), p2 = p.partial_derivative(Var::z2);
    const bool constant_denominator = p.bidegree() == Bidegree{0, 0};
    const TorusZeroSet zeros = constant_denominator ? TorusZeroSet{} : find_torus_zeros(p, 256);
    std::vector<DiskPeak> outer_peaks;
    for (const auto& tp : zeros.points) outer_peaks.push_back({tp.t, 0.0});

    const DiskIntegrator d1(grid, 1.0 - a1), d2(grid, 1.0 - a2);
    cplx g[2], g2[2], q[2], q2[2];

    auto run = [&](double cutoff, std::span<const double> breaks, std::vector<double>& out) {
        out.assign(breaks.empty() ? 1 : breaks.size(), 0.0);
        std::vector<double> inner(out.size());
        d2.visit(outer_peaks, cutoff, breaks, [&](double u2, double phi2, double w2) {
            const cplx z2 = std::polar(1.0 - u2, phi2);
            const UniPoly sG = G.slice_z1(z2), sG2 = G2.slice_z1(z2), sp = p.slice_z1(z2), sp2 = p2.slice_z1(z2);
            std::vector<DiskPeak> peaks;
            if (!constant_denominator)
                for (cplx b : poly_roots(sp).roots) peaks.push_back({std::arg(b), std::max(std::abs(b) - 1.0, 0.0)});
            std::fill(inner.begin(), inner.end(), 0.0);
            d1.visit(peaks, cutoff, breaks, [&](double u1, double phi1, double w1) {
                const cplx z1 = std::polar(1.0 - u1, phi1);
                horner_derivs(sG, z1, 1, g);
                horner_derivs(sG2, z1, 1, g2);
                horner_derivs(sp, z1, 1, q);
                horner_derivs(sp2, z1, 1, q2);
                const cplx P = q[0];
                const cplx val = g2[1] / P - (g[1] * q2[0] + g2[0] * q[1] + g[0] * q2[1]) / (P * P) +
                                 2.0 * g[0] * q[1] * q2[0] / (P * P * P);
                const double v = w1 * std::norm(val);
                for (std::size_t l = 0; l < inner.size(); ++l)
                    if (breaks.empty() || u1 >= breaks[l]) inner[l] += v;
            });
            for (std::size_t l = 0; l < out.size(); ++l)
                if (breaks.empty() || u2 >= breaks[l]) out[l] += w2 * inner[l];
        });
    };

    std::vector<double> vals;
    run(eps.back(), eps, vals);
    char name[96];
    std::snprintf(name, sizeof name, "mixed(alpha1=%g,alpha2=%g)", a1, a2);
    NormEstimate ne = finish(name, eps, vals, false);
    if (zeros.points.empty()) {
        // No boundary singularity: the untruncated integral is computed directly.
        std::vector<double> full;
        run(0.0, {}, full);
        ne.value = full[0];
        ne.verdict = NormVerdict::finite;
        ne.infinite = false;
    }
    return ne;
}

}  // namespace

NormEstimate mixed_dirichlet_norm(const Rif& f, double alpha1, double alpha2, const QuadGrid& grid,
                                  std::span<const double> eps_levels) {
    return mixed_impl(f.full_numerator(), f.denom(), alpha1, alpha2, grid, eps_levels);
}

NormEstimate mixed_dirichlet_norm(const BiPoly& f, double alpha1, double alpha2, const QuadGrid& grid,
                                  std::span<const double> eps_levels) {
    return mixed_impl(f, BiPoly::constant(1.0), alpha1, alpha2, grid, eps_levels);
}

RudinForelliResult rudin_forelli_check(double beta, double gamma, std::span<const double> w_moduli,
                                       const QuadGrid& grid) {
    if (!(beta > -1.0)) throw DomainError("beta must exceed -1");
    if (w_moduli.size() < 3) throw DomainError("need at least three moduli");
    const double s = 2.0 + beta + gamma;
    QuadGrid fine = grid;
    fine.radial *= 2;
    fine.angular *= 2;
    const DiskIntegrator di(grid, beta), df(fine, beta);
    RudinForelliResult res;
    res.beta = beta;
    res.gamma = gamma;
    const double wmax = *std::max_element(w_moduli.begin(), w_moduli.end());
    for (double w : w_moduli) {
        if (!(w > 0.0 && w < 1.0)) throw DomainError("moduli must lie in (0, 1)");
        const DiskPeak pk{0.0, 1.0 / w - 1.0};
        auto fn = [&](double u, double phi) { return std::pow(std::abs(1.0 - w * std::polar(1.0 - u, phi)), -s); };
        const double v = di.integrate(fn, std::span(&pk, 1));
        if (w == wmax) {
            const double vf = df.integrate(fn, std::span(&pk, 1));
            if (!(std::abs(v - vf) <= 1e-6 * std::abs(vf))) {
                ++res.dropped;
                continue;
            }
        }
        res.moduli.push_back(w);
        res.values.push_back(v);
    }
    if (res.values.size() < 2) throw NumericError("too few converged Rudin-Forelli points");
    std::vector<double> x, ly;
    for (std::size_t i = 0; i < res.values.size(); ++i) {
        x.push_back(-std::log1p(-res.moduli[i] * res.moduli[i]));
        ly.push_back(std::log(res.values[i]));
    }
    res.exponent = fit_line(x, ly).slope;
    const LineFit lf = fit_line(x, res.values);
    res.log_slope = lf.slope;
    res.log_fit_residual = lf.max_residual;
    return res;
}

LowerBoundCheck blaschke_lower_bound_check(std::span<const cplx> zeros, double alpha, const QuadGrid& grid) {
    check_alpha(alpha);
    if (zeros.empty()) throw DomainError("need at least one zero");
    for (std::size_t j = 0; j < zeros.size(); ++j) {
        if (!(std::abs(zeros[j]) < 1.0)) throw DomainError("zeros must lie in the open disk");
        for (std::size_t k = j + 1; k < zeros.size(); ++k)
            if (std::abs(zeros[j] - zeros[k]) < 1e-6) throw DomainError("repeated zeros");
    }
    const std::size_t N = zeros.size();
    std::vector<DiskPeak> peaks;
    for (cplx a : zeros)
        if (std::abs(a) > 0.0) peaks.push_back({std::arg(a), 1.0 / std::abs(a) - 1.0});
    const DiskIntegrator di(grid, 1.0 - alpha);
    std::vector<cplx> b(N);
    const double I = di.integrate(
        [&](double u, double phi) {
            const cplx z = std::polar(1.0 - u, phi);
            for (std::size_t j = 0; j < N; ++j) b[j] = (z - zeros[j]) / (1.0 - std::conj(zeros[j]) * z);
            cplx d = 0.0;
            for (std::size_t j = 0; j < N; ++j) {
                const cplx den = 1.0 - std::conj(zeros[j]) * z;
                cplx t = (1.0 - std::norm(zeros[j])) / (den * den);
                for (std::size_t k = 0; k < N; ++k)
                    if (k != j) t *= b[k];
                d += t;
            }
            return std::norm(d);
        },
        peaks);
    LowerBoundCheck c;
    c.lhs_unnormalized = I;
    c.lhs = (2.0 - alpha) * I;
    c.rhs = 1e300;
    for (std::size_t j = 0; j < N; ++j) {
        double r = std::pow(1.0 - std::norm(zeros[j]), 1.0 - alpha);
        for (std::size_t k = 0; k < N; ++k)
            if (k != j) {
                const double rho = std::abs((zeros[k] - zeros[j]) / (1.0 - std::conj(zeros[j]) * zeros[k]));
                r *= rho * rho;
            }
        c.rhs = std::min(c.rhs, r);
    }
    c.holds = c.lhs >= c.rhs * (1.0 - 1e-6);
    return c;
}

namespace {

struct SNode {
    double s, w;
};

// Nodes on (0, pi] with int_0^pi F(s) ds ~ sum w F(s), for F(s) ~ s^(1-alpha) near 0.
std::vector<SNode> offset_nodes(double alpha, int grid_angles) {
    const int q = std::clamp(grid_angles / 4, 8, 32);
    const int panels = std::max(4, grid_angles / 16);
    const double h = kPi / panels;
    std::vector<SNode> out;
    const QuadRule gj = gauss_jacobi(q, 0.0, 1.0 - alpha), gl = gauss_legendre(q);
    const double sc = std::pow(h / 2.0, 2.0 - alpha);
    for (int i = 0; i < q; ++i) {
        const double s = 0.5 * h * (gj.x[i] + 1.0);
        out.push_back({s, sc * gj.w[i] / std::pow(s, 1.0 - alpha)});
    }
    for (int k = 1; k < panels; ++k)
        for (int i = 0; i < q; ++i) out.push_back({h * k + 0.5 * h * (gl.x[i] + 1.0), 0.5 * h * gl.w[i]});
    return out;
}

double kernel(double s, double alpha) { return std::pow(2.0 * std::sin(0.5 * s), -(1.0 + alpha)); }

}  // namespace

double douglas_1d(const std::function<cplx(cplx)>& boundary, double alpha, int grid_angles) {
    check_alpha(alpha);
    if (grid_angles < 8) throw DomainError("need at least 8 angles");
    const int M = grid_angles;
    std::vector<cplx> base(M);
    for (int j = 0; j < M; ++j) {
        base[j] = boundary(std::polar(1.0, kTwoPi * j / M));
        if (!std::isfinite(std::abs(base[j])))
            throw DomainError("boundary trace is singular; use a truncated norm instead");
    }
    double total = 0.0;
    for (const auto& sn : offset_nodes(alpha, M)) {
        double acc = 0.0;
        for (int j = 0; j < M; ++j) {
            const double t = kTwoPi * j / M;
            const cplx fp = boundary(std::polar(1.0, t + sn.s)), fm = boundary(std::polar(1.0, t - sn.s));
            if (!std::isfinite(std::abs(fp)) || !std::isfinite(std::abs(fm)))
                throw DomainError("boundary trace is singular; use a truncated norm instead");
            acc += std::norm(base[j] - fp) + std::norm(base[j] - fm);
        }
        total += sn.w * acc * (kTwoPi / M) * kernel(sn.s, alpha);
    }
    return total / (4.0 * kPi * kPi);
}

double douglas_1d(const UniPoly& f, double alpha, int grid_angles) {
    return douglas_1d([&](cplx z) { return horner(f, z); }, alpha, grid_angles);
}

double douglas_bidisc_weighted(const BiPoly& f, double alpha, int grid_angles) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in (0, 1]");
    if (grid_angles < 8) throw DomainError("need at least 8 angles");
    const int M = grid_angles;
    const double t0 = std::norm(f.coeff(0, 0));
    const double t1 = douglas_1d(f.slice_z1(0.0), alpha, M);
    const double t2 = douglas_1d(f.slice_z2(0.0), alpha, M);

    const auto sn = offset_nodes(alpha, M);
    const int L = f.declared_bidegree().n2;
    std::vector<cplx> z2(M);
    for (int j = 0; j < M; ++j) z2[j] = std::polar(1.0, kTwoPi * j / M);
    std::vector<std::vector<cplx>> c(M);
    std::vector<cplx> d(L + 1), rot(L + 1);
    double t3 = 0.0;
    for (const auto& a : sn)
        for (double sg1 : {1.0, -1.0}) {
            // c[t1] = coefficients in z2 of f(zeta1, .) - f(zeta1 e^{i s1}, .).
            for (int j = 0; j < M; ++j) {
                const double t = kTwoPi * j / M;
                const UniPoly u0 = f.slice_z2(std::polar(1.0, t)), u1 = f.slice_z2(std::polar(1.0, t + sg1 * a.s));
                c[j].resize(L + 1);
                for (int l = 0; l <= L; ++l) c[j][l] = u0[l] - u1[l];
            }
            double inner_s = 0.0;
            for (const auto& b : sn)
                for (double sg2 : {1.0, -1.0}) {
                    for (int l = 0; l <= L; ++l) rot[l] = 1.0 - std::polar(1.0, sg2 * l * b.s);
                    double acc = 0.0;
                    for (int j = 0; j < M; ++j) {
                        for (int l = 0; l <= L; ++l) d[l] = c[j][l] * rot[l];
                        if (L < M) {
                            // Discrete orthogonality: the M-point sum over zeta2 of |d(zeta2)|^2 is M sum |d_l|^2.
                            double e = 0.0;
                            for (int l = 0; l <= L; ++l) e += std::norm(d[l]);
                            acc += M * e;
                        } else {
                            for (int k = 0; k < M; ++k) acc += std::norm(horner(d, z2[k]));
                        }
                    }
                    inner_s += b.w * kernel(b.s, alpha) * acc;
                }
            t3 += a.w * kernel(a.s, alpha) * inner_s;
        }
    t3 *= (kTwoPi / M) * (kTwoPi / M) / std::pow(4.0 * kPi * kPi, 2);
    return t0 + t1 + t2 + t3;
}

}  // namespace rif
