#include "rif/stability.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "rif/error.hpp"
#include "rif/hp.hpp"
#include "rif/roots.hpp"

namespace rif {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0) a += kTwoPi;
    return a;
}

struct Scan {
    bool violation = false;
    bool boundary_only = false;
    std::pair<cplx, cplx> witness;
    double margin = 1e300;
};

// Roots in z1 of p(., z2) for z2 on circles; `swap` exchanges the roles of the variables in the witness.
void scan_slices(const BiPoly& p, int grid, bool swap, Scan& sc) {
    const double scale = p.max_abs_coeff();
    for (int ri = 1; ri <= 10; ++ri) {
        const double r = ri / 10.0;
        for (int k = 0; k < grid; ++k) {
            const cplx z2 = std::polar(r, kTwoPi * k / grid);
            const UniPoly a = p.slice_z1(z2);
            double amax = 0.0;
            for (auto c : a) amax = std::max(amax, std::abs(c));
            if (amax <= 1e-13 * scale) {
                // p vanishes identically on this slice.
                if (r < 1.0 && !sc.violation) {
                    sc.violation = true;
                    sc.witness = swap ? std::pair{z2, cplx(0.0)} : std::pair{cplx(0.0), z2};
                }
                sc.margin = 0.0;
                continue;
            }
            for (cplx z1 : poly_roots(a).roots) {
                const double m = std::abs(z1) - 1.0;
                sc.margin = std::min(sc.margin, std::max(0.0, m));
                if (m < -1e-9) {
                    if (r < 1.0) {
                        if (!sc.violation || sc.boundary_only) {
                            sc.violation = true;
                            sc.boundary_only = false;
                            sc.witness = swap ? std::pair{z2, z1} : std::pair{z1, z2};
                        }
                    } else if (!sc.violation) {
                        sc.violation = true;
                        sc.boundary_only = true;
                        sc.witness = swap ? std::pair{z2, z1} : std::pair{z1, z2};
                    }
                }
            }
        }
    }
}

Scan full_scan(const BiPoly& p, int grid) {
    Scan sc;
    scan_slices(p, grid, false, sc);
    scan_slices(p.swapped(), grid, true, sc);
    return sc;
}

}  // namespace

const char* to_string(StabilityVerdict v) {
    switch (v) {
        case StabilityVerdict::stable: return "stable";
        case StabilityVerdict::unstable: return "unstable";
        case StabilityVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

StabilityCertificate is_stable(const BiPoly& p, int grid) {
    if (p.is_zero()) throw DomainError("stability of the zero polynomial");
    if (grid < 64) throw DomainError("stability grid must be at least 64");
    StabilityCertificate cert;
    cert.grid_resolution = grid;
    const Bidegree d = p.bidegree();
    if (d.n1 == 0 && d.n2 == 0) {
        cert.min_slice_root_margin = 0.0;
        return cert;
    }
    Scan sc = full_scan(p, grid);
    if (!sc.violation) {
        const Scan fine = full_scan(p, 2 * grid);
        if (fine.violation) sc = fine;
        else sc.margin = std::min(sc.margin, fine.margin);
    }
    cert.min_slice_root_margin = sc.margin > 1e299 ? 0.0 : sc.margin;
    if (!sc.violation) return cert;
    if (!sc.boundary_only) {
        cert.verdict = StabilityVerdict::unstable;
        cert.witness = sc.witness;
        return cert;
    }
    // Root inside the disk only for z on the unit circle: push the other variable inward.
    auto [w1, w2] = sc.witness;
    const double shrink = 1.0 - 1e-6;
    const bool z2_on_circle = std::abs(std::abs(w2) - 1.0) < 1e-12;
    const cplx fixed = (z2_on_circle ? w2 : w1) * shrink;
    const BiPoly q = z2_on_circle ? p : p.swapped();
    for (cplx z : poly_roots(q.slice_z1(fixed)).roots) {
        if (std::abs(z) < 1.0 - 1e-9) {
            cert.verdict = StabilityVerdict::unstable;
            cert.witness = z2_on_circle ? std::pair{z, fixed} : std::pair{fixed, z};
            return cert;
        }
    }
    cert.verdict = StabilityVerdict::inconclusive;
    return cert;
}

double torus_distance(const TorusPoint& a, const TorusPoint& b) {
    auto circ = [](double x, double y) {
        const double d = wrap_angle(x - y);
        return std::min(d, kTwoPi - d);
    };
    return std::max(circ(a.s, b.s), circ(a.t, b.t));
}

namespace {

struct TorusDerivs {
    cplx p, ps, pt, pss, pst, ptt;
};

struct DerivPolys {
    BiPoly p, p1, p2, p11, p12, p22;
    explicit DerivPolys(const BiPoly& q)
        : p(q),
          p1(q.partial_derivative(Var::z1)),
          p2(q.partial_derivative(Var::z2)),
          p11(q.partial_derivative(Var::z1, 2)),
          p12(p1.partial_derivative(Var::z2)),
          p22(q.partial_derivative(Var::z2, 2)) {}

    TorusDerivs at(double s, double t) const {
        const cplx z1 = std::polar(1.0, s), z2 = std::polar(1.0, t), I(0.0, 1.0);
        const cplx a1 = p1(z1, z2), a2 = p2(z1, z2);
        TorusDerivs d;
        d.p = p(z1, z2);
        d.ps = I * z1 * a1;
        d.pt = I * z2 * a2;
        d.pss = -z1 * a1 - z1 * z1 * p11(z1, z2);
        d.ptt = -z2 * a2 - z2 * z2 * p22(z1, z2);
        d.pst = -z1 * z2 * p12(z1, z2);
        return d;
    }
};

// Levenberg-Marquardt on (Re p, Im p, det J) with step clamp 0.1.
bool refine(const DerivPolys& dp, TorusPoint& x, double& res) {
    double lambda = 1e-3;
    auto residual = [&](const TorusDerivs& d) {
        const double det = std::imag(std::conj(d.ps) * d.pt);
        return Eigen::Vector3d(d.p.real(), d.p.imag(), det);
    };
    TorusDerivs d = dp.at(x.s, x.t);
    Eigen::Vector3d F = residual(d);
    for (int it = 0; it < 200 && std::abs(d.p) > 1e-15; ++it) {
        Eigen::Matrix<double, 3, 2> J;
        J << d.ps.real(), d.pt.real(), d.ps.imag(), d.pt.imag(),
            std::imag(std::conj(d.pss) * d.pt + std::conj(d.ps) * d.pst),
            std::imag(std::conj(d.pst) * d.pt + std::conj(d.ps) * d.ptt);
        const Eigen::Matrix2d JtJ = J.transpose() * J;
        const Eigen::Vector2d g = J.transpose() * F;
        bool accepted = false;
        for (int tries = 0; tries < 30; ++tries) {
            Eigen::Matrix2d A = JtJ;
            A.diagonal().array() += lambda * (1.0 + JtJ.diagonal().array());
            Eigen::Vector2d step = -A.ldlt().solve(g);
            const double n = step.norm();
            if (!std::isfinite(n)) break;
            if (n > 0.1) step *= 0.1 / n;
            const TorusDerivs dn = dp.at(x.s + step(0), x.t + step(1));
            const Eigen::Vector3d Fn = residual(dn);
            if (Fn.squaredNorm() < F.squaredNorm()) {
                x.s += step(0);
                x.t += step(1);
                d = dn;
                F = Fn;
                lambda = std::max(lambda * 0.3, 1e-12);
                accepted = true;
                break;
            }
            lambda *= 10.0;
        }
        if (!accepted) break;
    }
    // Plain damped Newton on (Re p, Im p) as a fallback for transversal zeros.
    for (int it = 0; it < 50 && std::abs(d.p) > 1e-13; ++it) {
        Eigen::Matrix2d J;
        J << d.ps.real(), d.pt.real(), d.ps.imag(), d.pt.imag();
        if (std::abs(J.determinant()) < 1e-14) break;
        Eigen::Vector2d step = -J.inverse() * Eigen::Vector2d(d.p.real(), d.p.imag());
        if (step.norm() > 0.1) step *= 0.1 / step.norm();
        const TorusDerivs dn = dp.at(x.s + step(0), x.t + step(1));
        if (std::abs(dn.p) >= std::abs(d.p)) break;
        x.s += step(0);
        x.t += step(1);
        d = dn;
    }
    x.s = wrap_angle(x.s);
    x.t = wrap_angle(x.t);
    res = std::abs(d.p);
    return res <= 1e-10;
}

// Extended-precision Gauss-Newton on the same system. Zeros of stable polynomials are degenerate
// (|p| grows like a high power of the distance along the zero curve's tangent), so double
// precision cannot locate them to better than about 1e-4.
void polish_hp(const DerivPolys& dp, TorusPoint& x) {
    using hp::real;
    using hp::complex;
    const complex I(real(0), real(1));
    auto ev = [](const BiPoly& q, const complex& z1, const complex& z2) {
        const Bidegree d = q.declared_bidegree();
        complex acc(0);
        for (int i = d.n1; i >= 0; --i) {
            complex row(0);
            for (int j = d.n2; j >= 0; --j) row = row * z2 + hp::to_hp(q.coeff(i, j));
            acc = acc * z1 + row;
        }
        return acc;
    };
    auto im_conj_mul = [](const complex& a, const complex& b) {
        return a.real() * b.imag() - a.imag() * b.real();
    };
    real s(x.s), t(x.t);
    auto system = [&](const real& s_, const real& t_, real F[3], real J[3][2]) {
        const complex z1 = hp::unit(s_), z2 = hp::unit(t_);
        const complex a1 = ev(dp.p1, z1, z2), a2 = ev(dp.p2, z1, z2);
        const complex p = ev(dp.p, z1, z2);
        const complex ps = I * z1 * a1, pt = I * z2 * a2;
        const complex pss = -z1 * a1 - z1 * z1 * ev(dp.p11, z1, z2);
        const complex ptt = -z2 * a2 - z2 * z2 * ev(dp.p22, z1, z2);
        const complex pst = -z1 * z2 * ev(dp.p12, z1, z2);
        F[0] = p.real();
        F[1] = p.imag();
        F[2] = im_conj_mul(ps, pt);
        J[0][0] = ps.real(), J[0][1] = pt.real();
        J[1][0] = ps.imag(), J[1][1] = pt.imag();
        J[2][0] = im_conj_mul(pss, pt) + im_conj_mul(ps, pst);
        J[2][1] = im_conj_mul(pst, pt) + im_conj_mul(ps, ptt);
    };
    real F[3], J[3][2];
    system(s, t, F, J);
    auto norm2 = [](const real* v) { return v[0] * v[0] + v[1] * v[1] + v[2] * v[2]; };
    real f2 = norm2(F);
    real lambda("1e-30");
    for (int it = 0; it < 400 && f2 > real("1e-96"); ++it) {
        real a = 0, b = 0, c = 0, g0 = 0, g1 = 0;
        for (int r = 0; r < 3; ++r) {
            a += J[r][0] * J[r][0];
            b += J[r][0] * J[r][1];
            c += J[r][1] * J[r][1];
            g0 += J[r][0] * F[r];
            g1 += J[r][1] * F[r];
        }
        bool accepted = false;
        for (int tries = 0; tries < 40; ++tries) {
            const real aa = a * (1 + lambda), cc = c * (1 + lambda);
            const real det = aa * cc - b * b;
            if (det == 0) {
                lambda *= 10;
                continue;
            }
            real d0 = -(cc * g0 - b * g1) / det, d1 = -(aa * g1 - b * g0) / det;
            const real n = sqrt(d0 * d0 + d1 * d1);
            if (n > real("1e-3")) d0 *= real("1e-3") / n, d1 *= real("1e-3") / n;
            real Fn[3], Jn[3][2];
            system(s + d0, t + d1, Fn, Jn);
            const real fn2 = norm2(Fn);
            if (fn2 < f2) {
                s += d0, t += d1;
                for (int r = 0; r < 3; ++r) F[r] = Fn[r], J[r][0] = Jn[r][0], J[r][1] = Jn[r][1];
                f2 = fn2;
                lambda = std::max(real(lambda / 10), real("1e-40"));
                accepted = true;
                break;
            }
            lambda *= 10;
        }
        if (!accepted) break;
    }
    x.s = static_cast<double>(s);
    x.t = static_cast<double>(t);
}

}  // namespace

TorusZeroSet find_torus_zeros(const BiPoly& p, int grid) {
    if (p.is_zero()) throw DomainError("torus zeros of the zero polynomial");
    if (grid < 16) throw DomainError("torus grid must be at least 16");
    TorusZeroSet out;
    const Bidegree deg = p.bidegree();
    if (deg.n1 == 0 && deg.n2 == 0) return out;
    const DerivPolys dp(p);
    const int G = grid;
    const double h = kTwoPi / G;
    std::vector<double> mag(std::size_t(G) * G), grad(std::size_t(G) * G);
    for (int a = 0; a < G; ++a) {
        const cplx z1 = std::polar(1.0, a * h);
        const UniPoly s0 = p.slice_z2(z1), s1 = dp.p1.slice_z2(z1), s2 = dp.p2.slice_z2(z1);
        for (int b = 0; b < G; ++b) {
            const cplx z2 = std::polar(1.0, b * h);
            mag[a * G + b] = std::abs(horner(s0, z2));
            grad[a * G + b] = std::abs(horner(s1, z2)) + std::abs(horner(s2, z2));
        }
    }
    std::vector<TorusPoint> cands;
    for (int a = 0; a < G; ++a)
        for (int b = 0; b < G; ++b) {
            const double v = mag[a * G + b];
            if (!(v < 1e-3 || v <= h * grad[a * G + b])) continue;
            bool is_min = true;
            for (int da = -1; da <= 1 && is_min; ++da)
                for (int db = -1; db <= 1; ++db) {
                    if (!da && !db) continue;
                    const int aa = (a + da + G) % G, bb = (b + db + G) % G;
                    const double w = mag[aa * G + bb];
                    // Ties broken by index so plateaus yield a single candidate.
                    if (w < v || (w == v && aa * G + bb < a * G + b)) {
                        is_min = false;
                        break;
                    }
                }
            if (is_min) cands.push_back({a * h, b * h});
        }
    for (TorusPoint x : cands) {
        double res = 0.0;
        if (!refine(dp, x, res)) {
            ++out.dropped;
            continue;
        }
        polish_hp(dp, x);
        x.s = wrap_angle(x.s);
        x.t = wrap_angle(x.t);
        res = std::abs(p(x.z1(), x.z2()));
        bool dup = false;
        for (std::size_t k = 0; k < out.points.size(); ++k)
            if (torus_distance(out.points[k], x) < 1e-4) {
                dup = true;
                if (res < out.residuals[k]) {
                    out.points[k] = x;
                    out.residuals[k] = res;
                }
                break;
            }
        if (!dup) {
            out.points.push_back(x);
            out.residuals.push_back(res);
        }
    }
    return out;
}

}  // namespace rif
