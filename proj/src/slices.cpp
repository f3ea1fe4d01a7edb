#include "rif/slices.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>

#include "rif/error.hpp"
#include "rif/hp.hpp"
#include "rif/roots.hpp"

namespace rif {

namespace {

SliceRootSet slice_roots_hp(const Rif& f, const hp::complex& z2) {
    const BiPoly& num = f.full_numerator();
    const std::vector<hp::complex> a_hp = hp::slice_z1(num, z2);
    UniPoly a(a_hp.size());
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = hp::to_double(a_hp[k]);
    double amax = 0.0;
    for (auto c : a) amax = std::max(amax, std::abs(c));
    if (amax <= 1e-13 * (1.0 + num.max_abs_coeff()))
        throw DomainError("degenerate slice: numerator vanishes identically (shared factor?)");

    const RootResult rr = poly_roots(a, 1e-12, 0);
    const std::size_t n = a.size() - 1 - rr.at_infinity;
    const std::vector<hp::complex> trimmed(a_hp.begin(), a_hp.begin() + n + 1);

    SliceRootSet out;
    out.zeta2 = hp::to_double(z2);
    out.at_infinity = rr.at_infinity;
    struct Item {
        cplx r;
        double d;
    };
    std::vector<Item> items;
    for (cplx r0 : rr.roots) {
        const hp::complex r = hp::newton_polish(trimmed, hp::to_hp(r0), 3);
        items.push_back({hp::to_double(r), static_cast<double>(hp::real(1) - hp::abs(r))});
    }
    std::sort(items.begin(), items.end(), [](const Item& x, const Item& y) {
        const double ax = std::arg(x.r), ay = std::arg(y.r);
        if (ax != ay) return ax < ay;
        return std::abs(x.r) < std::abs(y.r);
    });
    for (const auto& it : items) {
        out.roots.push_back(it.r);
        out.one_minus_abs.push_back(it.d);
        out.residuals.push_back(std::abs(num.eval(it.r, out.zeta2)));
    }
    return out;
}

// Permutation perm minimizing sum |prev[j] - cur[perm[j]]|.
std::vector<std::size_t> match(const std::vector<cplx>& prev, const std::vector<cplx>& cur) {
    const std::size_t n = prev.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    if (n <= 8) {
        std::vector<std::size_t> best = perm;
        double best_cost = 1e300;
        do {
            double c = 0.0;
            for (std::size_t j = 0; j < n && c < best_cost; ++j) c += std::abs(prev[j] - cur[perm[j]]);
            if (c < best_cost) {
                best_cost = c;
                best = perm;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    }
    // Greedy: repeatedly take the globally closest unmatched pair.
    std::vector<bool> used_p(n, false), used_c(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        double best = 1e300;
        std::size_t bj = 0, bk = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (used_p[j]) continue;
            for (std::size_t k = 0; k < n; ++k) {
                if (used_c[k]) continue;
                const double d = std::abs(prev[j] - cur[k]);
                if (d < best) best = d, bj = j, bk = k;
            }
        }
        used_p[bj] = used_c[bk] = true;
        perm[bj] = bk;
    }
    return perm;
}

}  // namespace

SliceRootSet slice_roots(const Rif& f, cplx zeta2) {
    if (std::abs(std::abs(zeta2) - 1.0) > 1e-12) throw DomainError("zeta2 must lie on the unit circle");
    return slice_roots_hp(f, hp::to_hp(zeta2));
}

SliceRootSet slice_roots_at_angle(const Rif& f, double t0, double dt) {
    return slice_roots_hp(f, hp::unit(hp::real(t0) + hp::real(dt)));
}

BranchTrace trace_branches(const Rif& f, cplx tau2, double arc_halfwidth, int n_samples) {
    if (n_samples < 16) throw DomainError("trace needs at least 16 samples");
    if (!(arc_halfwidth > 0.0 && arc_halfwidth < std::numbers::pi)) throw DomainError("arc half-width must lie in (0, pi)");
    if (std::abs(std::abs(tau2) - 1.0) > 1e-9) throw DomainError("tau2 must lie on the unit circle");
    const double t0 = std::arg(tau2);
    BranchTrace tr;
    tr.tau2 = tau2;
    tr.arc_halfwidth = arc_halfwidth;
    for (int k = 0; k < n_samples; ++k) {
        const double theta = std::ldexp(arc_halfwidth, -k);
        const SliceRootSet s = slice_roots_at_angle(f, t0, theta);
        BranchSample b;
        b.theta = theta;
        b.zeta2 = s.zeta2;
        if (!tr.samples.empty()) {
            const auto& prev = tr.samples.back().roots;
            if (prev.size() != s.roots.size()) {
                tr.truncated = true;
                break;
            }
            const auto perm = match(prev, s.roots);
            for (std::size_t j = 0; j < perm.size(); ++j) {
                b.roots.push_back(s.roots[perm[j]]);
                b.distances.push_back(s.one_minus_abs[perm[j]]);
            }
        } else {
            b.roots = s.roots;
            b.distances = s.one_minus_abs;
        }
        for (std::size_t i = 0; i < b.roots.size(); ++i)
            for (std::size_t j = i + 1; j < b.roots.size(); ++j)
                if (std::abs(b.roots[i] - b.roots[j]) < 1e-8) {
                    if (tr.collisions.empty() || tr.collisions.back() != tr.samples.size())
                        tr.collisions.push_back(tr.samples.size());
                }
        tr.samples.push_back(std::move(b));
    }
    return tr;
}

std::string BranchTrace::to_csv() const {
    std::string out = "theta,branch_id,re,im,one_minus_abs\n";
    char buf[160];
    for (const auto& s : samples)
        for (std::size_t j = 0; j < s.roots.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g,%zu,%.17g,%.17g,%.17g\n", s.theta, j, s.roots[j].real(),
                          s.roots[j].imag(), s.distances[j]);
            out += buf;
        }
    return out;
}

}  // namespace rif
