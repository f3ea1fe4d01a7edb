#include "rif/report.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>

#include "rif/error.hpp"
#include "rif/polyexpr.hpp"
#include "rif/suite.hpp"

namespace rif {

const char* to_string(TheoreticalVerdict v) {
    switch (v) {
        case TheoreticalVerdict::member: return "member";
        case TheoreticalVerdict::non_member: return "non_member";
        case TheoreticalVerdict::not_covered: return "not_covered";
    }
    return "?";
}

namespace {

using TV = TheoreticalVerdict;
using Kind = SpaceSpec::Kind;

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

// Parameter compared against the cutoff of the rule.
double space_parameter(const SpaceSpec& s) {
    return s.kind == Kind::frak ? std::max(s.alpha1, s.alpha2) : s.alpha1;
}

NormVerdict combine(std::span<const NormVerdict> vs) {
    bool all_finite = true;
    for (NormVerdict v : vs) {
        if (v == NormVerdict::divergent) return NormVerdict::divergent;
        if (v != NormVerdict::finite) all_finite = false;
    }
    return all_finite ? NormVerdict::finite : NormVerdict::inconclusive;
}

}  // namespace

TheoryRule theoretical_verdict(int K, bool square_free, Bidegree bd, const SpaceSpec& space) {
    TheoryRule r;
    if (K < 0 || K % 2 != 0) throw DomainError("contact order must be a nonnegative even integer");
    if (K == 0) {
        r.verdict = TV::member;
        r.rule = "no boundary singularity: the function is analytic across the closed bidisc";
        return r;
    }
    const double k = K;
    switch (space.kind) {
        case Kind::bcg:
            r.verdict = TV::member;
            r.rule = "every rational inner function lies in the unweighted mixed-norm space";
            return r;
        case Kind::bcg_weighted: {
            const double a = space.alpha1, c = 1.0 + 1.0 / k;
            r.cutoff = c;
            if (a < c) {
                r.verdict = TV::member;
                r.rule = fmt("alpha < 1 + 1/K = %g", c);
            } else if (square_free) {
                r.verdict = TV::non_member;
                r.rule = fmt("alpha >= 1 + 1/K = %g with locally square-free singularities", c);
            } else {
                r.verdict = TV::not_covered;
                r.rule = fmt("alpha >= 1 + 1/K = %g but the singularities are not square free", c);
            }
            return r;
        }
        case Kind::frak: {
            const double a1 = std::max(space.alpha1, 0.0), a2 = std::max(space.alpha2, 0.0);
            if (a1 + a2 <= 1.0) {
                r.verdict = TV::member;
                r.rule = "alpha1 + alpha2 <= 1: weight dominated by k + l + 1";
                return r;
            }
            if (a1 == 0.0 || a2 == 0.0) {
                const double a = std::max(a1, a2), c = 1.0 + 1.0 / k;
                r.cutoff = c;
                if (a < c) {
                    r.verdict = TV::member;
                    r.rule = fmt("one-variable weight with alpha < 1 + 1/K = %g", c);
                } else {
                    r.verdict = TV::not_covered;
                    r.rule = fmt("one-variable weight with alpha >= 1 + 1/K = %g: only the intersection is decided", c);
                }
                return r;
            }
            const double a = std::max(a1, a2), c = 0.5 + 0.5 / k;
            r.cutoff = c;
            if (a < c) {
                r.verdict = TV::member;
                r.rule = fmt("max(alpha1, alpha2) < 1/2 + 1/(2K) = %g", c);
            } else {
                r.verdict = TV::not_covered;
                r.rule = fmt("max(alpha1, alpha2) >= 1/2 + 1/(2K) = %g: no sharp cutoff known", c);
            }
            return r;
        }
        case Kind::higher_order: {
            const int top = std::max(space.m, space.n);
            const bool shape = bd.n1 == 1 || bd.n2 == 1;
            if (top < 2) {
                r.verdict = TV::member;
                r.rule = "max(m, n) < 2";
            } else if (shape) {
                r.verdict = TV::non_member;
                r.rule = "bidegree (1, k) or (k, 1) with a singularity and max(m, n) >= 2";
            } else {
                r.verdict = TV::not_covered;
                r.rule = "max(m, n) >= 2 outside bidegrees (1, k) and (k, 1)";
            }
            return r;
        }
    }
    return r;
}

bool contradicts(TheoreticalVerdict t, NormVerdict n) {
    return (t == TV::member && n == NormVerdict::divergent) || (t == TV::non_member && n == NormVerdict::finite);
}

SeriesEvidence series_evidence(const Rif& f, const SpaceSpec& space, int series_max) {
    if (series_max < 128) throw DomainError("series_max must be at least 128");
    SeriesEvidence s;
    for (int N = 16; N <= series_max; N *= 2) s.cuts.push_back(N);
    s.partial_sums = coeff_norm_partial_sums(f, space, s.cuts);
    std::vector<double> eps;
    for (int N : s.cuts) eps.push_back(1.0 / N);
    const DivergenceDiagnostic d = divergence_diagnostic(s.partial_sums, eps);
    s.growth_slope = d.growth_slope;
    s.verdict = d.verdict;
    return s;
}

NumericEvidence numeric_evidence(const Rif& f, const SpaceSpec& space, const TorusZeroSet& zeros,
                                 const ClassifyOptions& options) {
    NumericEvidence ev;
    std::vector<NormVerdict> vs;
    auto slice = [&](Var v, int order, double alpha) {
        ev.quadrature.push_back(slice_norm(f, v, order, alpha, options.grid, zeros, options.eps_levels));
        vs.push_back(ev.quadrature.back().verdict);
    };
    auto series = [&] {
        ev.series = series_evidence(f, space, options.series_max);
        vs.push_back(ev.series->verdict);
    };
    switch (space.kind) {
        case Kind::bcg_weighted:
            slice(Var::z1, 1, space.alpha1);
            slice(Var::z2, 1, space.alpha1);
            break;
        case Kind::bcg:
            slice(Var::z1, 1, 1.0);
            slice(Var::z2, 1, 1.0);
            series();
            break;
        case Kind::higher_order:
            slice(Var::z1, space.m, 1.0);
            slice(Var::z2, space.n, 1.0);
            series();
            break;
        case Kind::frak:
            series();
            break;
    }
    ev.verdict = combine(vs);
    return ev;
}

MembershipReport classify(const Rif& f, const SpaceSpec& space, const ClassifyOptions& options) {
    return classify(f, space, contact_profile(f, options.torus_grid), options);
}

MembershipReport classify(const Rif& f, const SpaceSpec& space, const ContactProfile& profile,
                          const ClassifyOptions& options) {
    MembershipReport r;
    r.space = space;
    r.rif_summary.denominator = format_poly(f.denom());
    r.rif_summary.numerator = format_poly(f.full_numerator());
    r.rif_summary.bidegree = f.full_numerator().bidegree();
    r.rif_summary.stability = is_stable(f.denom()).verdict;
    if (r.rif_summary.stability == StabilityVerdict::unstable) throw DomainError("denominator is not stable");
    if (r.rif_summary.stability == StabilityVerdict::inconclusive)
        r.warnings.push_back("stability scan inconclusive");
    r.rif_summary.singularities = profile.zeros.points;
    r.K = profile.K;
    r.contact = profile.estimates;
    r.square_free_flag = profile.square_free;
    for (const auto& w : profile.warnings) r.warnings.push_back(w);

    const TheoryRule rule = theoretical_verdict(r.K, r.square_free_flag, r.rif_summary.bidegree, space);
    r.theoretical_verdict = rule.verdict;
    r.theoretical_rule = rule.rule;
    r.theoretical_cutoff = rule.cutoff;
    if (rule.cutoff && std::abs(space_parameter(space) - *rule.cutoff) < kCutoffBand - 1e-12) r.near_cutoff = true;

    if (options.numeric && !r.near_cutoff) {
        NumericEvidence ev = numeric_evidence(f, space, profile.zeros, options);
        r.quadrature = std::move(ev.quadrature);
        r.series = std::move(ev.series);
        r.numeric_verdict = ev.verdict;
    }
    r.agreement = !contradicts(r.theoretical_verdict, r.numeric_verdict);
    return r;
}

nlohmann::json to_json(const TorusPoint& p) {
    const cplx a = p.z1(), b = p.z2();
    return {{"s", p.s}, {"t", p.t}, {"z1", {a.real(), a.imag()}}, {"z2", {b.real(), b.imag()}}};
}

nlohmann::json to_json(const ContactOrderEstimate& e) {
    return {{"tau", to_json(e.tau)},
            {"variable", e.variable == Var::z1 ? "z1" : "z2"},
            {"slope", e.fitted_slope},
            {"K", e.K},
            {"residual", e.fit_residual},
            {"square_free", e.square_free},
            {"branch_orders", e.branch_orders}};
}

nlohmann::json to_json(const ContactProfile& p) {
    nlohmann::json j;
    j["K"] = p.K;
    j["square_free"] = p.square_free;
    j["singularities"] = nlohmann::json::array();
    for (std::size_t i = 0; i < p.zeros.points.size(); ++i) {
        auto z = to_json(p.zeros.points[i]);
        z["residual"] = p.zeros.residuals[i];
        j["singularities"].push_back(z);
    }
    j["estimates"] = nlohmann::json::array();
    for (const auto& e : p.estimates) j["estimates"].push_back(to_json(e));
    j["warnings"] = p.warnings;
    return j;
}

nlohmann::json to_json(const NormEstimate& e) {
    nlohmann::json j{{"space", e.space},
                     {"infinite", e.infinite},
                     {"verdict", to_string(e.verdict)},
                     {"growth_slope", e.growth_slope},
                     {"truncation_levels", e.truncation_levels},
                     {"truncated_values", e.truncated_values},
                     {"perturbed", e.perturbed}};
    j["value"] = e.infinite ? nlohmann::json(nullptr) : nlohmann::json(e.value);
    return j;
}

nlohmann::json to_json(const SpaceSpec& s) {
    nlohmann::json j{{"kind", s.kind_tag()}, {"name", s.name()}};
    switch (s.kind) {
        case Kind::frak: j["alpha1"] = s.alpha1, j["alpha2"] = s.alpha2; break;
        case Kind::bcg_weighted: j["alpha"] = s.alpha1; break;
        case Kind::higher_order: j["m"] = s.m, j["n"] = s.n; break;
        case Kind::bcg: break;
    }
    return j;
}

nlohmann::json to_json(const SeriesEvidence& s) {
    return {{"cuts", s.cuts},
            {"partial_sums", s.partial_sums},
            {"growth_slope", s.growth_slope},
            {"verdict", to_string(s.verdict)}};
}

nlohmann::json to_json(const MembershipReport& r) {
    nlohmann::json j;
    nlohmann::json sing = nlohmann::json::array();
    for (const auto& p : r.rif_summary.singularities) sing.push_back(to_json(p));
    j["rif_summary"] = {{"denominator", r.rif_summary.denominator},
                        {"numerator", r.rif_summary.numerator},
                        {"bidegree", {r.rif_summary.bidegree.n1, r.rif_summary.bidegree.n2}},
                        {"stability", to_string(r.rif_summary.stability)},
                        {"singularities", sing}};
    j["space"] = to_json(r.space);
    j["K"] = r.K;
    j["contact"] = nlohmann::json::array();
    for (const auto& e : r.contact) j["contact"].push_back(to_json(e));
    j["theoretical_verdict"] = to_string(r.theoretical_verdict);
    j["theoretical_rule"] = r.theoretical_rule;
    j["theoretical_cutoff"] = r.theoretical_cutoff ? nlohmann::json(*r.theoretical_cutoff) : nlohmann::json(nullptr);
    j["numeric_verdict"] = to_string(r.numeric_verdict);
    j["near_cutoff"] = r.near_cutoff;
    j["quadrature"] = nlohmann::json::array();
    for (const auto& e : r.quadrature) j["quadrature"].push_back(to_json(e));
    j["series"] = r.series ? to_json(*r.series) : nlohmann::json(nullptr);
    j["square_free_flag"] = r.square_free_flag;
    j["agreement"] = r.agreement;
    j["warnings"] = r.warnings;
    return j;
}

SpaceSpec parse_space(const std::string& tag, double alpha, std::optional<double> alpha2, std::pair<int, int> order) {
    if (tag == "frak") return SpaceSpec::frak(alpha, alpha2.value_or(alpha));
    if (tag == "bcg") return SpaceSpec::bcg();
    if (tag == "bcgw") {
        if (!(alpha > 0.0 && alpha < 2.0)) throw InputError("bcgw needs alpha in (0, 2)");
        return SpaceSpec::bcg_weighted(alpha);
    }
    if (tag == "higher") {
        if (order.first < 1 || order.second < 1 || order.first > 8 || order.second > 8)
            throw InputError("higher needs orders in 1..8");
        return SpaceSpec::higher_order(order.first, order.second);
    }
    throw InputError("unknown space '" + tag + "' (expected frak, bcg, bcgw or higher)");
}

namespace {

std::string csv_name(std::string s) {
    for (char& c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-')) c = '_';
    return s;
}

Rif rif_from_text(const std::string& text) {
    if (text.empty()) throw InputError("missing polynomial (--p)");
    return Rif::from_denominator(parse_poly(text));
}

}  // namespace

ReportOutput run_report(const ReportRequest& q) {
    ReportOutput out;
    auto& doc = out.document;
    doc["command"] = q.command;
    ClassifyOptions opt;
    opt.grid = q.grid;
    opt.eps_levels = q.eps_levels;

    if (q.command == "verify") {
        if (q.suite != "acceptance") throw InputError("unknown suite '" + q.suite + "'");
        const auto results = run_suite({}, q.seed);
        bool ok = true;
        doc["suite"] = q.suite;
        doc["criteria"] = nlohmann::json::array();
        for (const auto& r : results) {
            doc["criteria"].push_back(to_json(r));
            ok = ok && r.pass;
        }
        doc["passed"] = ok;
        doc["mixed_norm_evidence"] = mixed_norm_evidence();
        out.exit_code = ok ? 0 : 3;
        return out;
    }

    const Rif f = rif_from_text(q.polynomial);
    doc["polynomial"] = format_poly(f.denom());
    if (q.command == "taylor") {
        const CoeffGrid g = taylor_coeffs(f, q.kmax, q.lmax);
        nlohmann::json rows = nlohmann::json::array();
        for (int k = 0; k <= g.kmax; ++k)
            for (int l = 0; l <= g.lmax; ++l) rows.push_back({k, l, g.at(k, l).real(), g.at(k, l).imag()});
        doc["kmax"] = g.kmax;
        doc["lmax"] = g.lmax;
        doc["coefficients"] = rows;
        out.csv.emplace_back("taylor.csv", g.to_csv());
        return out;
    }

    const StabilityCertificate cert = is_stable(f.denom());
    doc["stability"] = to_string(cert.verdict);
    if (cert.verdict == StabilityVerdict::unstable) throw DomainError("denominator is not stable");
    const ContactProfile prof = contact_profile(f, opt.torus_grid);

    if (q.command == "contact") {
        doc["contact"] = to_json(prof);
        for (std::size_t i = 0; i < prof.estimates.size(); ++i) {
            const auto& e = prof.estimates[i];
            if (e.variable != Var::z1) continue;
            const BranchTrace tr = trace_branches(f, e.tau.z2(), kContactHalfwidth, kContactSamples);
            out.csv.emplace_back("branches_" + std::to_string(i) + ".csv", tr.to_csv());
        }
        return out;
    }

    const SpaceSpec space = parse_space(q.space, q.alpha, q.alpha2, q.order);
    if (q.command == "norm") {
        const NumericEvidence ev = numeric_evidence(f, space, prof.zeros, opt);
        doc["space"] = to_json(space);
        doc["quadrature"] = nlohmann::json::array();
        for (const auto& e : ev.quadrature) {
            doc["quadrature"].push_back(to_json(e));
            out.csv.emplace_back("norm_" + csv_name(e.space) + ".csv", e.to_csv());
        }
        doc["series"] = ev.series ? to_json(*ev.series) : nlohmann::json(nullptr);
        doc["numeric_verdict"] = to_string(ev.verdict);
        return out;
    }
    if (q.command == "analyze") {
        MembershipReport r = classify(f, space, prof, opt);
        doc["report"] = to_json(r);
        for (const auto& e : r.quadrature) out.csv.emplace_back("norm_" + csv_name(e.space) + ".csv", e.to_csv());
        return out;
    }
    throw InputError("unknown command '" + q.command + "'");
}

}  // namespace rif
