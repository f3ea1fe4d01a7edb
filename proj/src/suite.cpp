#include "rif/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>

#include "rif/agler.hpp"
#include "rif/bipoly.hpp"
#include "rif/contact.hpp"
#include "rif/error.hpp"
#include "rif/polyexpr.hpp"
#include "rif/quadnorms.hpp"
#include "rif/report.hpp"
#include "rif/series.hpp"

namespace rif {

namespace {

constexpr double kPi = std::numbers::pi;

const char* const kKappa = "2 - z1 - z2";
const char* const kKappaNumer = "2*z1*z2 - z1 - z2";
const char* const kAmy = "4 - 3*z1 - z2 - z1*z2 + z1^2";
const char* const kAmyNumer = "4*z1^2*z2 - z1^2 - 3*z1*z2 - z1 + z2";

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

Rif kappa_rif() { return Rif::from_denominator(parse_poly(kKappa)); }
Rif amy_rif() { return Rif::from_denominator(parse_poly(kAmy)); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

cplx random_in_disk(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return std::polar(radius * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
}

BiPoly random_poly(std::mt19937_64& rng, int n1, int n2) {
    std::normal_distribution<double> g(0.0, 1.0);
    BiPoly p(Bidegree{n1, n2});
    for (int i = 0; i <= n1; ++i)
        for (int j = 0; j <= n2; ++j) p.set_coeff(i, j, cplx(g(rng), g(rng)));
    return p;
}

Outcome c01_reflection(std::uint64_t) {
    const BiPoly kp = parse_poly(kKappa), ap = parse_poly(kAmy);
    const BiPoly kn = parse_poly(kKappaNumer), an = parse_poly(kAmyNumer);
    const auto t0 = std::chrono::steady_clock::now();
    const BiPoly kr = kp.reflect(), ar = ap.reflect();
    const double dt = seconds_since(t0);
    const bool ok = kr.same_coeffs(kn, 0.0) && ar.same_coeffs(an, 0.0) && ap.declared_bidegree().n1 == 2 &&
                    ap.declared_bidegree().n2 == 1;
    return {ok && dt < 1e-3, fmt("kappa -> %s; AMY -> %s; %.1f us", format_poly(kr).c_str(),
                                 format_poly(ar).c_str(), dt * 1e6)};
}

Outcome c02_contact(std::uint64_t) {
    const TorusPoint tau{0.0, 0.0};
    auto t0 = std::chrono::steady_clock::now();
    const auto ek = estimate_contact_order(kappa_rif(), tau);
    const double tk = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    const auto ea = estimate_contact_order(amy_rif(), tau);
    const double ta = seconds_since(t0);
    const bool ok = ek.fitted_slope >= 1.9 && ek.fitted_slope <= 2.1 && ek.K == 2 && ea.fitted_slope >= 3.8 &&
                    ea.fitted_slope <= 4.2 && ea.K == 4 && tk < 5.0 && ta < 5.0;
    return {ok, fmt("kappa slope %.4f K=%d (%.2fs); AMY slope %.4f K=%d (%.2fs)", ek.fitted_slope, ek.K, tk,
                    ea.fitted_slope, ea.K, ta)};
}

Outcome c03_kappa_slice(std::uint64_t) {
    const auto t0 = std::chrono::steady_clock::now();
    const NormEstimate e = slice_norm(kappa_rif(), Var::z1, 1, 1.0, QuadGrid{128, 512, 0.0});
    const double dt = seconds_since(t0);
    const double target = kPi / 2.0;
    const bool ok = e.verdict == NormVerdict::finite && std::abs(e.value - target) <= 1e-4 && dt < 10.0;
    return {ok, fmt("value %.9f (%s), target %.9f, |diff| %.3g, 2*pi %.9f; %.2fs", e.value, to_string(e.verdict),
                    target, std::abs(e.value - target), 2.0 * kPi, dt)};
}

Outcome c04_kappa_coeffs(std::uint64_t) {
    const CoeffGrid g = taylor_coeffs(kappa_rif(), 41, 41);
    double err = 0.0;
    for (int k = 0; k <= 40; ++k)
        for (int l = 0; k + l <= 40; ++l)
            err = std::max(err, std::abs(g.at(k + 1, l + 1) - kappa_coeff_closed_form(k, l)));
    return {err <= 1e-10, fmt("max |recurrence - closed form| = %.3g over k + l <= 40", err)};
}

Outcome c05_kappa_tail(std::uint64_t) {
    std::vector<double> x, v;
    for (int k = 16; k <= 1024; k += 16) {
        x.push_back(2.0 * k);
        v.push_back(std::abs(kappa_coeff_closed_form(k - 1, k - 1)));
    }
    const TailFit fit = tail_exponent_fit(x, v, TailMode::coefficient_diagonal);
    return {std::abs(fit.slope + 1.5) <= 0.05, fmt("diagonal slope %.4f", fit.slope)};
}

Outcome c06_kappa_bcg(std::uint64_t) {
    const Rif f = kappa_rif();
    const int cuts[] = {1024, 2048};
    const auto s = coeff_norm_partial_sums(f, SpaceSpec::bcg(), cuts);
    const double rel = (s[1] - s[0]) / s[1];
    const QuadGrid grid{64, 256, 0.0};
    const NormEstimate e1 = slice_norm(f, Var::z1, 1, 1.0, grid);
    const NormEstimate e2 = slice_norm(f, Var::z2, 1, 1.0, grid);
    const bool ok = rel < 0.005 && e1.verdict == NormVerdict::finite && e2.verdict == NormVerdict::finite;
    return {ok, fmt("S(1024) %.8f, S(2048) %.8f, rel diff %.3g; slices %s/%s", s[0], s[1], rel,
                    to_string(e1.verdict), to_string(e2.verdict))};
}

Outcome c07_kappa_higher(std::uint64_t) {
    const Rif f = kappa_rif();
    const SpaceSpec sp = SpaceSpec::higher_order(2, 1);
    std::vector<int> cuts;
    std::vector<double> x;
    for (int j = 0; j <= 12; ++j) {
        const int N = int(std::lround(64.0 * std::pow(2.0, 0.5 * j)));
        cuts.push_back(N);
        x.push_back(N);
    }
    const auto s = coeff_norm_partial_sums(f, sp, cuts);
    const TailFit fit = tail_exponent_fit(x, s, TailMode::partial_sum_growth);
    // Brute-force sum from a stored grid at the first cut.
    const CoeffGrid g = taylor_coeffs(f, 64, 64);
    double brute = 0.0;
    for (int k = 0; k <= 64; ++k)
        for (int l = 0; k + l <= 64; ++l)
            brute += (std::pow(double(k), 3) + l + 1.0) * std::norm(g.at(k, l));
    const double brute_err = std::abs(brute - s[0]) / s[0];
    const NormEstimate e = slice_norm(f, Var::z1, 2, 1.0, QuadGrid{64, 256, 0.0});
    const bool ok = std::abs(fit.slope - 1.5) <= 0.2 && brute_err < 1e-10 && e.verdict == NormVerdict::divergent;
    return {ok, fmt("growth slope %.4f, brute-force rel err %.2g, quadrature %s (slope %.3f)", fit.slope, brute_err,
                    to_string(e.verdict), e.growth_slope)};
}

Outcome c08_amy_bracket(std::uint64_t) {
    const Rif f = amy_rif();
    const TorusZeroSet zeros = find_torus_zeros(f.denom(), 256);
    const QuadGrid grid{128, 512, 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    NormVerdict v[2][2];
    double sl[2][2];
    const double alphas[2] = {1.2, 1.3};
    for (int a = 0; a < 2; ++a)
        for (int var = 0; var < 2; ++var) {
            const NormEstimate e = slice_norm(f, var ? Var::z2 : Var::z1, 1, alphas[a], grid, zeros, {});
            v[a][var] = e.verdict;
            sl[a][var] = e.growth_slope;
        }
    const double dt = seconds_since(t0);
    const bool ok = v[0][0] == NormVerdict::finite && v[0][1] == NormVerdict::finite &&
                    v[1][0] == NormVerdict::divergent && v[1][1] == NormVerdict::divergent && dt < 60.0;
    return {ok, fmt("alpha 1.2: %s/%s (slopes %.3f, %.3f); alpha 1.3: %s/%s (slopes %.3f, %.3f); %.1fs",
                    to_string(v[0][0]), to_string(v[0][1]), sl[0][0], sl[0][1], to_string(v[1][0]),
                    to_string(v[1][1]), sl[1][0], sl[1][1], dt)};
}

Outcome c09_agler(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<PointPair> pairs;
    std::vector<std::pair<cplx, cplx>> pts;
    for (int i = 0; i < 100; ++i) {
        pairs.push_back({random_in_disk(rng, 0.9), random_in_disk(rng, 0.9), random_in_disk(rng, 0.9),
                         random_in_disk(rng, 0.9)});
        pts.emplace_back(random_in_disk(rng, 0.9), random_in_disk(rng, 0.9));
    }
    const double r = refined_identity_residual(pairs);
    const double d = diagonal_residual(pts);
    const std::span<const std::pair<cplx, cplx>> five(pts.data(), 5);
    const double g = std::min(agler_gram_min_eigenvalue(1, five), agler_gram_min_eigenvalue(2, five));
    return {r < 1e-10 && d < 1e-12 && g >= -1e-8,
            fmt("identity residual %.3g, diagonal residual %.3g, Gram min eigenvalue %.3g", r, d, g)};
}

Outcome c10_agler_inner(std::uint64_t) {
    const AglerInnerCheck c = agler_inner_reduction();
    return {std::abs(c.value - kPi / 2.0) <= 1e-6 && c.discrepancy,
            fmt("value %.12f (pi/2 = %.12f), printed %.2f, discrepancy flag %s", c.value, kPi / 2.0,
                c.printed_value, c.discrepancy ? "set" : "clear")};
}

Outcome c11_rudin_forelli(std::uint64_t) {
    std::vector<double> moduli;
    for (int k = 3; k <= 8; ++k) moduli.push_back(1.0 - std::pow(10.0, -k));
    const QuadGrid grid{64, 256, 0.0};
    std::string detail;
    bool ok = true;
    for (double gamma : {0.5, 1.0, 2.0}) {
        const auto r = rudin_forelli_check(0.0, gamma, moduli, grid);
        ok = ok && std::abs(r.exponent - gamma) <= 0.05;
        detail += fmt("gamma %.1f: exponent %.4f; ", gamma, r.exponent);
    }
    const auto neg = rudin_forelli_check(0.0, -0.5, moduli, grid);
    const double spread = *std::max_element(neg.values.begin(), neg.values.end()) /
                          *std::min_element(neg.values.begin(), neg.values.end());
    ok = ok && std::abs(neg.exponent) <= 0.05 && spread < 1.1;
    detail += fmt("gamma -0.5: exponent %.4f, max/min %.4f; ", neg.exponent, spread);
    const auto zero = rudin_forelli_check(0.0, 0.0, moduli, grid);
    const double rel = zero.log_fit_residual / zero.values.back();
    ok = ok && zero.log_slope > 0.0 && rel < 0.01;
    detail += fmt("gamma 0: log slope %.4f, relative residual %.2g", zero.log_slope, rel);
    return {ok, detail};
}

Outcome c12_blaschke(std::uint64_t seed) {
    std::mt19937_64 rng(seed + 12);
    std::uniform_int_distribution<int> nz(1, 4);
    const QuadGrid grid{32, 128, 0.0};
    int failures = 0, checks = 0;
    double worst = 1e300;
    for (int c = 0; c < 200; ++c) {
        std::vector<cplx> zeros;
        const int n = nz(rng);
        while (int(zeros.size()) < n) {
            const cplx a = random_in_disk(rng, 0.95);
            if (std::all_of(zeros.begin(), zeros.end(), [&](cplx b) { return std::abs(a - b) > 1e-3; }))
                zeros.push_back(a);
        }
        for (double alpha : {0.5, 1.0, 1.5}) {
            const auto r = blaschke_lower_bound_check(zeros, alpha, grid);
            ++checks;
            if (!r.holds) ++failures;
            if (r.rhs > 0) worst = std::min(worst, r.lhs / r.rhs);
        }
    }
    return {failures == 0, fmt("%d of %d checks hold; smallest lhs/rhs %.4f", checks - failures, checks, worst)};
}

Outcome c13_cases(std::uint64_t) {
    const double xs[] = {1e-3};
    struct Item {
        const char* name;
        LocalModel model;
        bool control;
    };
    const Item items[] = {
        {"case 1", LocalModel{{{{0.0, 1.0}, 1}, {{0.0, 1.0}, 2}}}, false},
        {"case 2", LocalModel{{{{0.0, 1.0}, 1}, {{0.0, 2.0}, 1}}}, false},
        {"case 3", LocalModel{{{{0.0, 1.0}, 1}, {{0.0, 2.0}, 2}}}, false},
        {"identical branches", LocalModel{{{{0.0, 1.0}, 1}, {{0.0, 1.0}, 1}}}, true},
    };
    bool ok = true;
    std::string detail;
    for (const auto& it : items) {
        const double v = case_limit_check(it.model, {0, 1}, xs).front();
        ok = ok && (it.control ? v == 0.0 : std::abs(v - 1.0) <= 0.05);
        detail += fmt("%s %.6f; ", it.name, v);
    }
    return {ok, detail};
}

double frak_norm(const BiPoly& p, double alpha) {
    const CoeffGrid g = coeff_grid(p);
    const SpaceSpec s = SpaceSpec::frak(alpha, alpha);
    double acc = 0.0;
    for (int k = 0; k <= g.kmax; ++k)
        for (int l = 0; l <= g.lmax; ++l) acc += s.weight(k, l) * std::norm(g.at(k, l));
    return acc;
}

Outcome c14_douglas(std::uint64_t seed) {
    double worst1 = 0.0;
    for (int n = 1; n <= 8; ++n) {
        UniPoly z(n + 1, 0.0);
        z[n] = 1.0;
        worst1 = std::max(worst1, std::abs(douglas_1d(z, 1.0, 256) - n) / n);
    }
    std::mt19937_64 rng(seed + 14);
    double lo = 1e300, hi = 0.0;
    for (int c = 0; c < 50; ++c) {
        const BiPoly p = random_poly(rng, 4, 4);
        for (double alpha : {0.5, 1.0}) {
            const double ratio = douglas_bidisc_weighted(p, alpha, 64) / frak_norm(p, alpha);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
    }
    const bool ok = worst1 <= 1e-3 && lo >= 0.1 && hi <= 10.0;
    return {ok, fmt("max rel error for z^n %.2g; bidisc/coefficient ratio in [%.4f, %.4f]", worst1, lo, hi)};
}

Outcome c15_cladir(std::uint64_t seed) {
    std::mt19937_64 rng(seed + 15);
    std::uniform_int_distribution<int> deg(0, 6);
    double lo = 1e300, hi = 0.0;
    for (int c = 0; c < 100; ++c) {
        const BiPoly p = random_poly(rng, deg(rng), deg(rng));
        const CoeffGrid g = coeff_grid(p);
        const int cut[] = {g.kmax + g.lmax};
        for (double alpha : {0.5, 1.0, 1.5}) {
            const double w = coeff_norm_partial_sums(g, SpaceSpec::bcg_weighted(alpha), cut)[0];
            const double a = coeff_norm_partial_sums(g, SpaceSpec::frak(alpha, 0.0), cut)[0];
            const double b = coeff_norm_partial_sums(g, SpaceSpec::frak(0.0, alpha), cut)[0];
            const double r = w / std::max(a, b);
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
    }
    return {lo >= 0.25 && hi <= 4.0, fmt("ratio range [%.4f, %.4f]", lo, hi)};
}

// Independent statement of the rule table, written against the verdict strings.
std::string table_oracle(int K, bool sf, Bidegree bd, const SpaceSpec& s) {
    if (K == 0) return "member";
    const double k = K;
    switch (s.kind) {
        case SpaceSpec::Kind::bcg: return "member";
        case SpaceSpec::Kind::bcg_weighted:
            return s.alpha1 < 1 + 1 / k ? "member" : (sf ? "non_member" : "not_covered");
        case SpaceSpec::Kind::frak: {
            const double a = std::max(s.alpha1, 0.0), b = std::max(s.alpha2, 0.0);
            if (a + b <= 1) return "member";
            if (a == 0 || b == 0) return std::max(a, b) < 1 + 1 / k ? "member" : "not_covered";
            return std::max(a, b) < 0.5 + 0.5 / k ? "member" : "not_covered";
        }
        case SpaceSpec::Kind::higher_order:
            if (std::max(s.m, s.n) < 2) return "member";
            return (bd.n1 == 1 || bd.n2 == 1) ? "non_member" : "not_covered";
    }
    return "?";
}

Outcome c16_classification(std::uint64_t) {
    int cases = 0, mismatches = 0;
    for (int K : {0, 2, 4, 6})
        for (bool sf : {true, false})
            for (Bidegree bd : {Bidegree{1, 1}, Bidegree{2, 1}, Bidegree{2, 2}}) {
                std::vector<SpaceSpec> spaces{SpaceSpec::bcg()};
                for (int i = 1; i < 40; ++i) {
                    const double a = 0.05 * i;
                    spaces.push_back(SpaceSpec::bcg_weighted(a));
                    spaces.push_back(SpaceSpec::frak(a, a));
                    spaces.push_back(SpaceSpec::frak(a, 0.0));
                    spaces.push_back(SpaceSpec::frak(0.0, a));
                }
                for (int m = 1; m <= 3; ++m)
                    for (int n = 1; n <= 3; ++n) spaces.push_back(SpaceSpec::higher_order(m, n));
                for (const auto& s : spaces) {
                    ++cases;
                    if (to_string(theoretical_verdict(K, sf, bd, s).verdict) != table_oracle(K, sf, bd, s))
                        ++mismatches;
                }
            }

    // Worked examples: rule verdict plus numeric agreement outside the cutoff band.
    struct Example {
        const char* name;
        bool amy;
        SpaceSpec space;
        const char* expected;
    };
    const Example ex[] = {
        {"kappa bcgw(1.4)", false, SpaceSpec::bcg_weighted(1.4), "member"},
        {"kappa bcg", false, SpaceSpec::bcg(), "member"},
        {"kappa higher(2,1)", false, SpaceSpec::higher_order(2, 1), "non_member"},
        {"kappa frak(0.7,0.7)", false, SpaceSpec::frak(0.7, 0.7), "member"},
        {"AMY bcgw(1.2)", true, SpaceSpec::bcg_weighted(1.2), "member"},
        {"AMY bcgw(1.3)", true, SpaceSpec::bcg_weighted(1.3), "non_member"},
    };
    const Rif kap = kappa_rif(), amy = amy_rif();
    const ContactProfile pk = contact_profile(kap), pa = contact_profile(amy);
    ClassifyOptions opt;
    opt.grid = QuadGrid{64, 256, 0.0};
    bool ok = mismatches == 0;
    std::string detail = fmt("rule table %d/%d; ", cases - mismatches, cases);
    for (const auto& e : ex) {
        const MembershipReport r = classify(e.amy ? amy : kap, e.space, e.amy ? pa : pk, opt);
        const bool good = to_string(r.theoretical_verdict) == std::string(e.expected) && r.agreement;
        ok = ok && good;
        detail += fmt("%s: %s/%s%s; ", e.name, to_string(r.theoretical_verdict), to_string(r.numeric_verdict),
                      good ? "" : " MISMATCH");
    }
    return {ok, detail};
}

const char* const kNames[kCriterionCount] = {
    "reflection of kappa and AMY denominators",
    "contact orders of kappa and AMY",
    "kappa unweighted slice norm equals pi/2",
    "kappa coefficients: closed form vs recurrence",
    "kappa diagonal tail exponent -1.5",
    "kappa in the unweighted mixed-norm space",
    "kappa outside higher-order space (2,1)",
    "AMY weighted cutoff bracketed by 1.2 and 1.3",
    "Agler identity and diagonal property",
    "Agler inner integral pi/2 with discrepancy flag",
    "Rudin-Forelli growth exponents",
    "Blaschke lower bound over 200 configurations",
    "pseudodistance limits for cases 1-3",
    "Douglas formulas",
    "weighted mixed-norm vs one-variable weights",
    "classification table and worked examples",
};

using CriterionFn = Outcome (*)(std::uint64_t);
const CriterionFn kFns[kCriterionCount] = {
    c01_reflection, c02_contact,  c03_kappa_slice,   c04_kappa_coeffs, c05_kappa_tail, c06_kappa_bcg,
    c07_kappa_higher, c08_amy_bracket, c09_agler, c10_agler_inner, c11_rudin_forelli, c12_blaschke,
    c13_cases,      c14_douglas,  c15_cladir,        c16_classification,
};

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
    CriterionResult r;
    r.id = id;
    if (id < 1 || id > kCriterionCount) {
        r.detail = "no such criterion";
        return r;
    }
    r.name = kNames[id - 1];
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const Outcome o = kFns[id - 1](seed);
        r.pass = o.pass;
        r.detail = o.detail;
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("error: ") + e.what();
    }
    r.seconds = seconds_since(t0);
    return r;
}

std::vector<CriterionResult> run_suite(std::span<const int> ids, std::uint64_t seed) {
    std::vector<CriterionResult> out;
    if (ids.empty())
        for (int i = 1; i <= kCriterionCount; ++i) out.push_back(run_criterion(i, seed));
    else
        for (int i : ids) out.push_back(run_criterion(i, seed));
    return out;
}

nlohmann::json to_json(const CriterionResult& r) {
    return {{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}};
}

nlohmann::json mixed_norm_evidence() {
    const std::vector<double> eps{0.1, 0.05, 0.025, 0.0125};
    const NormEstimate e = mixed_dirichlet_norm(kappa_rif(), 1.0, 1.0, QuadGrid{32, 64, 0.0}, eps);
    nlohmann::json j = to_json(e);
    j["function"] = kKappa;
    j["conclusive"] = false;
    return j;
}

}  // namespace rif
