#include "rif/bipoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rif/error.hpp"

namespace rif {

namespace {

void check_degree(Bidegree d) {
    if (d.n1 < 0 || d.n2 < 0) throw DomainError("negative bidegree");
    if (d.n1 > kMaxDegree || d.n2 > kMaxDegree)
        throw DomainError("degree exceeds cap of " + std::to_string(kMaxDegree));
}

}  // namespace

BiPoly::BiPoly(Bidegree declared) : decl_(declared) {
    check_degree(decl_);
    c_.assign(std::size_t(decl_.n1 + 1) * (decl_.n2 + 1), cplx(0.0));
}

BiPoly BiPoly::constant(cplx c) {
    BiPoly p;
    p.set_coeff(0, 0, c);
    return p;
}

BiPoly BiPoly::monomial(int i, int j, cplx c) {
    BiPoly p(Bidegree{i, j});
    p.set_coeff(i, j, c);
    return p;
}

BiPoly BiPoly::from_terms(const std::vector<std::pair<std::pair<int, int>, cplx>>& terms) {
    Bidegree d;
    for (const auto& [ij, c] : terms) {
        d.n1 = std::max(d.n1, ij.first);
        d.n2 = std::max(d.n2, ij.second);
    }
    BiPoly p(d);
    for (const auto& [ij, c] : terms) p.c_[p.idx(ij.first, ij.second)] += c;
    p.prune();
    return p.with_declared(p.is_zero() ? Bidegree{} : p.bidegree());
}

cplx BiPoly::coeff(int i, int j) const {
    if (i < 0 || j < 0 || i > decl_.n1 || j > decl_.n2) return 0.0;
    return c_[idx(i, j)];
}

void BiPoly::set_coeff(int i, int j, cplx c) {
    if (i < 0 || j < 0) throw DomainError("negative exponent");
    if (i > decl_.n1 || j > decl_.n2) {
        if (std::abs(c) <= kPruneTol) return;
        *this = with_declared({std::max(i, decl_.n1), std::max(j, decl_.n2)});
    }
    c_[idx(i, j)] = std::abs(c) <= kPruneTol ? cplx(0.0) : c;
}

void BiPoly::prune() {
    for (auto& c : c_)
        if (std::abs(c) <= kPruneTol) c = 0.0;
}

bool BiPoly::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](cplx c) { return c == cplx(0.0); });
}

Bidegree BiPoly::bidegree() const {
    if (is_zero()) throw DomainError("bidegree of the zero polynomial");
    Bidegree d{0, 0};
    for_each_term([&](int i, int j, cplx) {
        d.n1 = std::max(d.n1, i);
        d.n2 = std::max(d.n2, j);
    });
    return d;
}

double BiPoly::max_abs_coeff() const {
    double m = 0.0;
    for (auto c : c_) m = std::max(m, std::abs(c));
    return m;
}

BiPoly BiPoly::with_declared(Bidegree d) const {
    if (!is_zero()) {
        const Bidegree s = bidegree();
        if (d.n1 < s.n1 || d.n2 < s.n2)
            throw DomainError("declared bidegree smaller than support");
    }
    BiPoly r(d);
    for_each_term([&](int i, int j, cplx c) { r.c_[r.idx(i, j)] = c; });
    return r;
}

cplx BiPoly::eval(cplx z1, cplx z2) const {
    cplx acc = 0.0;
    for (int i = decl_.n1; i >= 0; --i) {
        cplx row = 0.0;
        for (int j = decl_.n2; j >= 0; --j) row = row * z2 + c_[idx(i, j)];
        acc = acc * z1 + row;
    }
    return acc;
}

BiPoly BiPoly::partial_derivative(Var v, int order) const {
    if (order < 0) throw DomainError("negative derivative order");
    const bool first = v == Var::z1;
    Bidegree d = decl_;
    int& dv = first ? d.n1 : d.n2;
    dv = std::max(0, dv - order);
    BiPoly r(d);
    for_each_term([&](int i, int j, cplx c) {
        const int e = first ? i : j;
        if (e < order) return;
        double f = 1.0;
        for (int k = 0; k < order; ++k) f *= double(e - k);
        if (first)
            r.c_[r.idx(i - order, j)] = c * f;
        else
            r.c_[r.idx(i, j - order)] = c * f;
    });
    return r;
}

BiPoly BiPoly::reflect(Bidegree d) const {
    check_degree(d);
    if (!is_zero()) {
        const Bidegree s = bidegree();
        if (d.n1 < s.n1 || d.n2 < s.n2)
            throw DomainError("reflection bidegree smaller than support");
    }
    BiPoly r(d);
    for_each_term([&](int i, int j, cplx c) { r.c_[r.idx(d.n1 - i, d.n2 - j)] = std::conj(c); });
    return r;
}

BiPoly BiPoly::swapped() const {
    BiPoly r(Bidegree{decl_.n2, decl_.n1});
    for_each_term([&](int i, int j, cplx c) { r.c_[r.idx(j, i)] = c; });
    return r;
}

UniPoly BiPoly::slice_z1(cplx z2) const {
    UniPoly out(decl_.n1 + 1, 0.0);
    for (int i = 0; i <= decl_.n1; ++i) {
        cplx row = 0.0;
        for (int j = decl_.n2; j >= 0; --j) row = row * z2 + c_[idx(i, j)];
        out[i] = row;
    }
    return out;
}

UniPoly BiPoly::slice_z2(cplx z1) const { return swapped().slice_z1(z1); }

BiPoly BiPoly::operator+(const BiPoly& o) const {
    BiPoly r(Bidegree{std::max(decl_.n1, o.decl_.n1), std::max(decl_.n2, o.decl_.n2)});
    for_each_term([&](int i, int j, cplx c) { r.c_[r.idx(i, j)] += c; });
    o.for_each_term([&](int i, int j, cplx c) { r.c_[r.idx(i, j)] += c; });
    r.prune();
    return r;
}

BiPoly BiPoly::operator-(const BiPoly& o) const { return *this + (-o); }

BiPoly BiPoly::operator*(const BiPoly& o) const {
    BiPoly r(Bidegree{decl_.n1 + o.decl_.n1, decl_.n2 + o.decl_.n2});
    for_each_term([&](int i, int j, cplx a) {
        o.for_each_term([&](int k, int l, cplx b) { r.c_[r.idx(i + k, j + l)] += a * b; });
    });
    r.prune();
    return r;
}

BiPoly BiPoly::operator*(cplx s) const {
    BiPoly r = *this;
    for (auto& c : r.c_) c *= s;
    r.prune();
    return r;
}

BiPoly BiPoly::pow(int e) const {
    if (e < 0) throw DomainError("negative power");
    if (long(decl_.n1) * e > kMaxDegree || long(decl_.n2) * e > kMaxDegree)
        throw DomainError("degree exceeds cap of " + std::to_string(kMaxDegree));
    BiPoly r = constant(1.0), b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

bool BiPoly::same_coeffs(const BiPoly& o, double tol) const {
    const int n1 = std::max(decl_.n1, o.decl_.n1), n2 = std::max(decl_.n2, o.decl_.n2);
    for (int i = 0; i <= n1; ++i)
        for (int j = 0; j <= n2; ++j)
            if (std::abs(coeff(i, j) - o.coeff(i, j)) > tol) return false;
    return true;
}

cplx horner(const UniPoly& a, cplx z) {
    cplx acc = 0.0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * z + *it;
    return acc;
}

void horner_derivs(const UniPoly& a, cplx z, int n, cplx* out) {
    // out[k] accumulates the k-th Taylor coefficient at z, scaled to the k-th derivative at the end.
    for (int k = 0; k <= n; ++k) out[k] = 0.0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) {
        for (int k = n; k >= 1; --k) out[k] = out[k] * z + out[k - 1];
        out[0] = out[0] * z + *it;
    }
    double f = 1.0;
    for (int k = 2; k <= n; ++k) {
        f *= k;
        out[k] *= f;
    }
}

Rif::Rif(BiPoly denom, BiPoly numer, std::pair<int, int> prefactor, cplx unimodular)
    : p_(std::move(denom)), pt_(std::move(numer)), pref_(prefactor), c_(unimodular) {
    if (p_.is_zero()) throw DomainError("zero denominator");
    if (pref_.first < 0 || pref_.second < 0) throw DomainError("negative prefactor exponent");
    if (std::abs(std::abs(c_) - 1.0) > 1e-12) throw DomainError("constant is not unimodular");
    const double scale = 1.0 + p_.max_abs_coeff();
    if (!pt_.same_coeffs(p_.reflect(), 1e-12 * scale))
        throw DomainError("numerator is not the reflection of the denominator");
    if (std::abs(p_.coeff(0, 0)) <= kPruneTol) throw DomainError("denominator vanishes at the origin");
    full_ = BiPoly::monomial(pref_.first, pref_.second, c_) * pt_;
    // Interior samples: a few fixed radii and angles.
    for (double r : {0.0, 0.3, 0.6, 0.9})
        for (int k = 0; k < 8; ++k) {
            const double a = 2.0 * std::numbers::pi * k / 8.0;
            const cplx z1 = std::polar(r, a), z2 = std::polar(r, 0.7 * a + 0.4);
            if (std::abs(eval(z1, z2)) > 1.0 + 1e-9)
                throw DomainError("function exceeds modulus one inside the bidisk (denominator not stable)");
        }
}

Rif Rif::from_denominator(const BiPoly& denom, std::pair<int, int> prefactor, cplx unimodular) {
    return Rif(denom, denom.reflect(), prefactor, unimodular);
}

cplx Rif::eval(cplx z1, cplx z2) const { return full_.eval(z1, z2) / p_.eval(z1, z2); }

Rif Rif::swapped() const {
    return Rif(p_.swapped(), pt_.swapped(), {pref_.second, pref_.first}, c_);
}

}  // namespace rif
