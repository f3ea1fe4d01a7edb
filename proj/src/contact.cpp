#include "rif/contact.hpp"

#include <algorithm>
#include <cmath>

#include "rif/error.hpp"
#include "rif/fit.hpp"

namespace rif {

double pseudo_distance_disk(cplx z, cplx w) {
    if (std::abs(z) >= 1.0 || std::abs(w) >= 1.0) throw DomainError("pseudo-distance needs points in the open disk");
    return std::abs((z - w) / (1.0 - std::conj(w) * z));
}

double pseudo_distance_halfplane(cplx z, cplx w) {
    if (z.imag() <= 0.0 || w.imag() <= 0.0) throw DomainError("pseudo-distance needs points in the upper half-plane");
    return std::abs((z - w) / (z - std::conj(w)));
}

cplx cayley_to_disk(cplx w) {
    if (w.imag() <= 0.0) throw DomainError("Cayley transform expects Im w > 0");
    const cplx I(0.0, 1.0);
    return (1.0 + I * w) / (1.0 - I * w);
}

cplx cayley_from_disk(cplx z) {
    if (std::abs(z) >= 1.0) throw DomainError("inverse Cayley transform expects |z| < 1");
    const cplx I(0.0, 1.0);
    return (z - 1.0) / (I * (z + 1.0));
}

ContactOrderEstimate estimate_contact_order(const Rif& f, const TorusPoint& tau, int n_samples,
                                            double arc_halfwidth) {
    const BranchTrace tr = trace_branches(f, tau.z2(), arc_halfwidth, n_samples);
    if (tr.truncated) throw NumericError("root count changed along the arc toward the singularity");
    const std::size_t n = tr.samples.size(), w = n / 2;
    if (tr.n_branches() == 0) throw DomainError("slice has no zeros; not a singularity");
    std::vector<double> x, y;
    std::vector<std::vector<double>> per(tr.n_branches());
    for (std::size_t k = n - w; k < n; ++k) {
        const auto& s = tr.samples[k];
        x.push_back(std::log(2.0 * std::sin(s.theta / 2.0)));
        const double m = *std::min_element(s.distances.begin(), s.distances.end());
        if (!(m > 0.0)) throw NumericError("slice zero reached the circle before the singularity");
        y.push_back(std::log(m));
        for (std::size_t j = 0; j < s.distances.size(); ++j) per[j].push_back(std::log(std::max(s.distances[j], 1e-300)));
    }
    const LineFit fit = fit_line(x, y);
    ContactOrderEstimate e;
    e.tau = tau;
    e.fitted_slope = fit.slope;
    e.fit_residual = fit.max_residual;
    e.K = 2 * int(std::lround(fit.slope / 2.0));
    for (const auto& b : per) e.branch_orders.push_back(fit_line(x, b).slope);
    e.square_free = tr.collisions.empty();
    if (e.fit_residual > 0.2)
        throw NumericError("contact order fit rejected: residual " + std::to_string(e.fit_residual));
    if (std::abs(e.fitted_slope - e.K) > 0.2)
        throw NumericError("contact order fit rejected: slope " + std::to_string(e.fitted_slope) +
                           " is not near an even integer");
    if (e.K < 2) throw DomainError("no slice zero approaches the circle; not a singularity");
    return e;
}

ContactProfile contact_profile(const Rif& f, int torus_grid) {
    ContactProfile prof;
    prof.zeros = find_torus_zeros(f.denom(), torus_grid);
    if (prof.zeros.dropped > 0)
        prof.warnings.push_back(std::to_string(prof.zeros.dropped) + " torus zero candidate(s) dropped");
    const Rif g = f.swapped();
    for (const TorusPoint& tau : prof.zeros.points) {
        int ok = 0;
        for (int orient = 0; orient < 2; ++orient) {
            try {
                ContactOrderEstimate e =
                    orient == 0 ? estimate_contact_order(f, tau) : estimate_contact_order(g, TorusPoint{tau.t, tau.s});
                if (orient == 1) {
                    e.tau = tau;
                    e.variable = Var::z2;
                }
                prof.K = std::max(prof.K, e.K);
                prof.square_free = prof.square_free && e.square_free;
                prof.estimates.push_back(std::move(e));
                ++ok;
            } catch (const Error& ex) {
                prof.warnings.push_back(std::string(orient == 0 ? "z1" : "z2") + " slices at (" +
                                        std::to_string(tau.s) + ", " + std::to_string(tau.t) + "): " + ex.what());
            }
        }
        if (ok == 0) throw NumericError("contact order could not be estimated at a singularity");
    }
    return prof;
}

namespace {

std::vector<double> trimmed(std::vector<double> q) {
    while (!q.empty() && q.back() == 0.0) q.pop_back();
    return q;
}

double poly_real(const std::vector<double>& q, double x) {
    double acc = 0.0;
    for (auto it = q.rbegin(); it != q.rend(); ++it) acc = acc * x + *it;
    return acc;
}

}  // namespace

void LocalModel::validate() const {
    for (const auto& b : branches) {
        const auto q = trimmed(b.q);
        if (b.L < 1) throw DomainError("branch exponent L must be positive");
        if (q.size() < 2 || q[0] != 0.0 || !(q[1] > 0.0))
            throw DomainError("branch polynomial needs q(0) = 0 and q'(0) > 0");
        if (int(q.size()) - 1 >= 2 * b.L) throw DomainError("branch polynomial degree must be below 2L");
    }
}

bool LocalModel::is_square_free() const {
    for (std::size_t j = 0; j < branches.size(); ++j)
        for (std::size_t k = j + 1; k < branches.size(); ++k)
            if (branches[j].L == branches[k].L && trimmed(branches[j].q) == trimmed(branches[k].q)) return false;
    return true;
}

std::vector<double> case_limit_check(const LocalModel& model, std::pair<std::size_t, std::size_t> pair,
                                     std::span<const double> x_values) {
    model.validate();
    if (pair.first >= model.branches.size() || pair.second >= model.branches.size())
        throw DomainError("branch index out of range");
    const auto& bj = model.branches[pair.first];
    const auto& bk = model.branches[pair.second];
    std::vector<double> out;
    for (double x : x_values) {
        if (x == 0.0) throw DomainError("x values must be nonzero");
        const cplx yj(poly_real(bj.q, x), std::pow(x, 2 * bj.L));
        const cplx yk(poly_real(bk.q, x), std::pow(x, 2 * bk.L));
        if (!(yj.imag() > 0.0) || !(yk.imag() > 0.0)) throw DomainError("local branch left the upper half-plane");
        out.push_back(pseudo_distance_halfplane(yj, yk));
    }
    return out;
}

}  // namespace rif
