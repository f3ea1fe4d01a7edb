#include "rif/roots.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "rif/error.hpp"
#include "rif/hp.hpp"

namespace rif {

namespace hp {

complex horner(const std::vector<complex>& a, const complex& z) {
    complex acc(0);
    for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * z + *it;
    return acc;
}

complex newton_polish(const std::vector<complex>& a, complex root, int steps) {
    for (int s = 0; s < steps; ++s) {
        complex v(0), d(0);
        for (auto it = a.rbegin(); it != a.rend(); ++it) {
            d = d * root + v;
            v = v * root + *it;
        }
        if (d == complex(0)) break;
        root -= v / d;
    }
    return root;
}

complex unit(const real& t) { return complex(cos(t), sin(t)); }

real abs(const complex& z) { return sqrt(z.real() * z.real() + z.imag() * z.imag()); }

std::vector<complex> slice_z1(const BiPoly& p, const complex& z2) {
    const Bidegree d = p.declared_bidegree();
    std::vector<complex> out(d.n1 + 1, complex(0));
    for (int i = 0; i <= d.n1; ++i) {
        complex row(0);
        for (int j = d.n2; j >= 0; --j) row = row * z2 + to_hp(p.coeff(i, j));
        out[i] = row;
    }
    return out;
}

}  // namespace hp

RootResult poly_roots(const UniPoly& a, double lead_tol, int polish_steps) {
    double scale = 0.0;
    for (auto c : a) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) throw DomainError("roots of the zero polynomial");
    int n = int(a.size()) - 1;
    RootResult out;
    while (n > 0 && std::abs(a[n]) <= lead_tol * scale) {
        --n;
        ++out.at_infinity;
    }
    if (n == 0) return out;
    if (n == 1) {
        out.roots.push_back(-a[0] / a[1]);
        return out;
    }
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -a[i] / a[n];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    if (es.info() != Eigen::Success) throw NumericError("companion eigenvalue solver failed");
    UniPoly trimmed(a.begin(), a.begin() + n + 1);
    for (int i = 0; i < n; ++i) {
        cplx z = es.eigenvalues()[i];
        for (int s = 0; s < polish_steps; ++s) {
            cplx d[2];
            horner_derivs(trimmed, z, 1, d);
            if (d[1] == cplx(0.0)) break;
            const cplx step = d[0] / d[1];
            if (!std::isfinite(std::abs(step)) || std::abs(step) > 1e-2 * (1.0 + std::abs(z))) break;
            z -= step;
        }
        out.roots.push_back(z);
    }
    return out;
}

}  // namespace rif
