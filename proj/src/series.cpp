#include "rif/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "rif/error.hpp"
#include "rif/fit.hpp"

namespace rif {

std::string CoeffGrid::to_csv() const {
    std::string out = "k,l,re,im\n";
    char buf[128];
    for (int k = 0; k <= kmax; ++k)
        for (int l = 0; l <= lmax; ++l) {
            const cplx c = at(k, l);
            std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g\n", k, l, c.real(), c.imag());
            out += buf;
        }
    return out;
}

namespace {

struct Term {
    int i, j;
    cplx c;
};

std::vector<Term> nonconstant_terms(const BiPoly& p) {
    std::vector<Term> t;
    p.for_each_term([&](int i, int j, cplx c) {
        if (i || j) t.push_back({i, j, c});
    });
    return t;
}

cplx checked_constant(const Rif& f) {
    const cplx p00 = f.denom().coeff(0, 0);
    if (p00 == cplx(0.0)) throw DomainError("denominator constant term is zero");
    return p00;
}

}  // namespace

CoeffGrid taylor_coeffs(const Rif& f, int kmax, int lmax) {
    if (kmax < 0 || lmax < 0) throw DomainError("negative truncation order");
    const cplx p00 = checked_constant(f);
    const auto terms = nonconstant_terms(f.denom());
    const BiPoly& num = f.full_numerator();
    CoeffGrid g;
    g.kmax = kmax;
    g.lmax = lmax;
    g.a.assign(std::size_t(kmax + 1) * (lmax + 1), 0.0);
    auto A = [&](int k, int l) -> cplx& { return g.a[std::size_t(k) * (lmax + 1) + l]; };
    for (int s = 0; s <= kmax + lmax; ++s)
        for (int k = std::max(0, s - lmax); k <= std::min(s, kmax); ++k) {
            const int l = s - k;
            cplx v = num.coeff(k, l);
            for (const auto& t : terms)
                if (t.i <= k && t.j <= l) v -= t.c * A(k - t.i, l - t.j);
            A(k, l) = v / p00;
        }
    return g;
}

CoeffGrid coeff_grid(const BiPoly& p) {
    const Bidegree d = p.declared_bidegree();
    CoeffGrid g;
    g.kmax = d.n1;
    g.lmax = d.n2;
    g.a.assign(std::size_t(d.n1 + 1) * (d.n2 + 1), 0.0);
    p.for_each_term([&](int i, int j, cplx c) { g.a[std::size_t(i) * (d.n2 + 1) + j] = c; });
    return g;
}

void for_each_diagonal(const Rif& f, int smax, const std::function<void(int, const std::vector<cplx>&)>& visit) {
    if (smax < 0) throw DomainError("negative diagonal index");
    const cplx p00 = checked_constant(f);
    const auto terms = nonconstant_terms(f.denom());
    const BiPoly& num = f.full_numerator();
    const Bidegree d = f.denom().declared_bidegree();
    const int depth = d.n1 + d.n2 + 1;
    // ring[s % depth] holds diagonal s.
    std::vector<std::vector<cplx>> ring(depth);
    for (int s = 0; s <= smax; ++s) {
        std::vector<cplx>& cur = ring[s % depth];
        cur.assign(s + 1, 0.0);
        for (int k = 0; k <= s; ++k) {
            const int l = s - k;
            cplx v = num.coeff(k, l);
            for (const auto& t : terms)
                if (t.i <= k && t.j <= l) v -= t.c * ring[(s - t.i - t.j) % depth][k - t.i];
            cur[k] = v / p00;
        }
        visit(s, cur);
    }
}

SpaceSpec SpaceSpec::frak(double a1, double a2) {
    SpaceSpec s;
    s.kind = Kind::frak;
    s.alpha1 = a1;
    s.alpha2 = a2;
    return s;
}

SpaceSpec SpaceSpec::bcg() { return SpaceSpec{}; }

SpaceSpec SpaceSpec::bcg_weighted(double alpha) {
    SpaceSpec s;
    s.kind = Kind::bcg_weighted;
    s.alpha1 = s.alpha2 = alpha;
    return s;
}

SpaceSpec SpaceSpec::higher_order(int m, int n) {
    if (m < 1 || n < 1) throw DomainError("higher-order space needs m, n >= 1");
    SpaceSpec s;
    s.kind = Kind::higher_order;
    s.m = m;
    s.n = n;
    return s;
}

double SpaceSpec::weight(int k, int l) const {
    switch (kind) {
        case Kind::frak: return std::pow(k + 1.0, alpha1) * std::pow(l + 1.0, alpha2);
        case Kind::bcg: return k + l + 1.0;
        case Kind::bcg_weighted: return std::pow(k + 1.0, alpha1) + std::pow(l + 1.0, alpha1);
        case Kind::higher_order: return std::pow(double(k), 2 * m - 1) + std::pow(double(l), 2 * n - 1) + 1.0;
    }
    return 0.0;
}

std::string SpaceSpec::name() const {
    char buf[96];
    switch (kind) {
        case Kind::frak: std::snprintf(buf, sizeof buf, "frak(%g,%g)", alpha1, alpha2); break;
        case Kind::bcg: return "bcg";
        case Kind::bcg_weighted: std::snprintf(buf, sizeof buf, "bcgw(%g)", alpha1); break;
        case Kind::higher_order: std::snprintf(buf, sizeof buf, "higher(%d,%d)", m, n); break;
    }
    return buf;
}

std::string SpaceSpec::kind_tag() const {
    switch (kind) {
        case Kind::frak: return "frak";
        case Kind::bcg: return "bcg";
        case Kind::bcg_weighted: return "bcgw";
        case Kind::higher_order: return "higher";
    }
    return "?";
}

namespace {

void check_cuts(std::span<const int> cuts, int limit) {
    for (int c : cuts)
        if (c < 0 || c > limit) throw DomainError("diagonal cut out of range");
}

}  // namespace

std::vector<double> coeff_norm_partial_sums(const CoeffGrid& g, const SpaceSpec& space, std::span<const int> cuts) {
    check_cuts(cuts, g.kmax + g.lmax);
    const int top = cuts.empty() ? 0 : *std::max_element(cuts.begin(), cuts.end());
    std::vector<double> per_diag(top + 1, 0.0);
    for (int k = 0; k <= g.kmax; ++k)
        for (int l = 0; l <= g.lmax && k + l <= top; ++l) per_diag[k + l] += space.weight(k, l) * std::norm(g.at(k, l));
    for (int s = 1; s <= top; ++s) per_diag[s] += per_diag[s - 1];
    std::vector<double> out;
    for (int c : cuts) out.push_back(per_diag[c]);
    return out;
}

std::vector<double> coeff_norm_partial_sums(const Rif& f, const SpaceSpec& space, std::span<const int> cuts) {
    check_cuts(cuts, 1 << 20);
    const int top = cuts.empty() ? 0 : *std::max_element(cuts.begin(), cuts.end());
    std::vector<double> cum(top + 1, 0.0);
    double acc = 0.0;
    for_each_diagonal(f, top, [&](int s, const std::vector<cplx>& d) {
        for (int k = 0; k <= s; ++k) acc += space.weight(k, s - k) * std::norm(d[k]);
        cum[s] = acc;
    });
    std::vector<double> out;
    for (int c : cuts) out.push_back(cum[c]);
    return out;
}

double kappa_coeff_closed_form(int k, int l) {
    if (k < 0 || l < 0) throw DomainError("negative index");
    const int s = k + l;
    if (s <= 50) {
        auto binom = [](int n, int r) {
            long double c = 1.0L;
            for (int i = 0; i < r; ++i) c = c * (n - i) / (i + 1);
            return c;
        };
        const long double v = binom(s, k) * std::pow(2.0L, -s) - binom(s + 2, k + 1) * std::pow(2.0L, -(s + 2));
        return double(v);
    }
    // C(s,k) 2^-s (1 - (s+2)(s+1) / (4 (k+1)(l+1))), avoiding the cancellation of two large terms.
    const double logb = std::lgamma(s + 1.0) - std::lgamma(k + 1.0) - std::lgamma(l + 1.0) - s * std::log(2.0);
    const double bracket = 1.0 - (s + 2.0) * (s + 1.0) / (4.0 * (k + 1.0) * (l + 1.0));
    return std::exp(logb) * bracket;
}

TailFit tail_exponent_fit(std::span<const double> x, std::span<const double> values, TailMode) {
    const std::size_t n = values.size();
    if (n < 8) throw DomainError("tail fit needs at least 8 points");
    if (x.size() != n) throw DomainError("tail fit: size mismatch");
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(values[i] > 0.0) || !(x[i] > 0.0)) throw DomainError("tail fit needs positive inputs");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(values[i]);
    }
    const std::size_t h = n / 2;
    const std::span<const double> X(lx), Y(ly);
    const double late = fit_line(X.subspan(n - h), Y.subspan(n - h)).slope;
    const double early = fit_line(X.first(n - h), Y.first(n - h)).slope;
    TailFit f;
    f.slope = late;
    f.super_polynomial = late < -2.0 && early < 0.0 && late / early > 1.25;
    return f;
}

TailFit tail_exponent_fit(std::span<const double> values, TailMode mode) {
    std::vector<double> x(values.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = double(i + 1);
    return tail_exponent_fit(x, values, mode);
}

}  // namespace rif
