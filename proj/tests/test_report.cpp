#include <doctest.h>

#include "rif/error.hpp"
#include "rif/polyexpr.hpp"
#include "rif/report.hpp"

using namespace rif;

namespace {

using TV = TheoreticalVerdict;

Rif kappa() { return Rif::from_denominator(parse_poly("2 - z1 - z2")); }
Rif amy() { return Rif::from_denominator(parse_poly("4 - 3z1 - z2 - z1*z2 + z1^2")); }

ClassifyOptions coarse() {
    ClassifyOptions o;
    o.grid = QuadGrid{64, 256, 0.0};
    return o;
}

}  // namespace

TEST_CASE("rule table examples") {
    CHECK(theoretical_verdict(2, true, {1, 1}, SpaceSpec::bcg_weighted(1.4)).verdict == TV::member);
    CHECK(*theoretical_verdict(2, true, {1, 1}, SpaceSpec::bcg_weighted(1.4)).cutoff == doctest::Approx(1.5));
    CHECK(theoretical_verdict(4, true, {2, 1}, SpaceSpec::bcg_weighted(1.3)).verdict == TV::non_member);
    CHECK(theoretical_verdict(4, false, {2, 1}, SpaceSpec::bcg_weighted(1.3)).verdict == TV::not_covered);
    CHECK(theoretical_verdict(2, true, {1, 1}, SpaceSpec::higher_order(2, 1)).verdict == TV::non_member);
    CHECK(theoretical_verdict(2, true, {2, 2}, SpaceSpec::higher_order(2, 1)).verdict == TV::not_covered);
    CHECK(theoretical_verdict(2, true, {2, 2}, SpaceSpec::higher_order(1, 1)).verdict == TV::member);
    CHECK(theoretical_verdict(2, true, {1, 1}, SpaceSpec::frak(0.7, 0.7)).verdict == TV::member);
    CHECK(theoretical_verdict(2, true, {1, 1}, SpaceSpec::frak(0.8, 0.8)).verdict == TV::not_covered);
    CHECK(theoretical_verdict(6, true, {3, 3}, SpaceSpec::bcg()).verdict == TV::member);
    CHECK(theoretical_verdict(0, true, {1, 1}, SpaceSpec::higher_order(5, 5)).verdict == TV::member);
    CHECK_THROWS_AS(theoretical_verdict(3, true, {1, 1}, SpaceSpec::bcg()), DomainError);
}

TEST_CASE("rule table is monotone in alpha and depends only on its inputs") {
    for (int K : {2, 4, 6})
        for (bool sf : {true, false})
            for (int kind = 0; kind < 3; ++kind) {
                bool seen_nonmember = false;
                for (int i = 1; i < 40; ++i) {
                    const double a = 0.05 * i;
                    const SpaceSpec s = kind == 0 ? SpaceSpec::bcg_weighted(a)
                                                  : (kind == 1 ? SpaceSpec::frak(a, a) : SpaceSpec::frak(a, 0.0));
                    const TheoryRule r = theoretical_verdict(K, sf, {1, 1}, s);
                    if (seen_nonmember) CHECK(r.verdict != TV::member);
                    if (r.verdict != TV::member) seen_nonmember = true;
                    if (r.verdict == TV::non_member) CHECK(sf);
                    if (kind == 0) CHECK((r.verdict == TV::member) == (a < 1.0 + 1.0 / K));
                    CHECK(r.verdict == theoretical_verdict(K, sf, {1, 1}, s).verdict);
                }
            }
}

TEST_CASE("contradiction rule") {
    CHECK(contradicts(TV::member, NormVerdict::divergent));
    CHECK(contradicts(TV::non_member, NormVerdict::finite));
    CHECK_FALSE(contradicts(TV::member, NormVerdict::inconclusive));
    CHECK_FALSE(contradicts(TV::not_covered, NormVerdict::divergent));
    CHECK_FALSE(contradicts(TV::non_member, NormVerdict::divergent));
}

TEST_CASE("classify the worked examples") {
    const auto r = classify(kappa(), SpaceSpec::bcg_weighted(1.4), coarse());
    CHECK(r.K == 2);
    CHECK(r.theoretical_verdict == TV::member);
    CHECK(r.numeric_verdict == NormVerdict::finite);
    CHECK(r.agreement);
    CHECK(r.rif_summary.bidegree == Bidegree{1, 1});
    CHECK(r.rif_summary.singularities.size() == 1);

    const auto h = classify(kappa(), SpaceSpec::higher_order(2, 1), coarse());
    CHECK(h.theoretical_verdict == TV::non_member);
    CHECK(h.numeric_verdict == NormVerdict::divergent);
    CHECK(h.agreement);
}

TEST_CASE("near-cutoff numerics are inconclusive") {
    const auto r = classify(kappa(), SpaceSpec::bcg_weighted(1.47), coarse());
    CHECK(r.near_cutoff);
    CHECK(r.numeric_verdict == NormVerdict::inconclusive);
    CHECK(r.quadrature.empty());
    CHECK(r.agreement);
}

TEST_CASE("nonsingular functions are members everywhere") {
    const Rif f = Rif::from_denominator(parse_poly("4 - z1 - z2"));
    const auto r = classify(f, SpaceSpec::higher_order(3, 2), coarse());
    CHECK(r.K == 0);
    CHECK(r.theoretical_verdict == TV::member);
    CHECK(r.numeric_verdict == NormVerdict::finite);
}

TEST_CASE("rule-only classification") {
    ClassifyOptions o = coarse();
    o.numeric = false;
    const auto r = classify(amy(), SpaceSpec::bcg_weighted(1.3), o);
    CHECK(r.theoretical_verdict == TV::non_member);
    CHECK(*r.theoretical_cutoff == doctest::Approx(1.25));
    CHECK(r.numeric_verdict == NormVerdict::inconclusive);
}

TEST_CASE("JSON report uses snake case field names") {
    ClassifyOptions o = coarse();
    o.numeric = false;
    const nlohmann::json j = to_json(classify(kappa(), SpaceSpec::frak(0.7, 0.7), o));
    for (const char* key : {"rif_summary", "space", "K", "theoretical_verdict", "theoretical_cutoff",
                            "numeric_verdict", "square_free_flag", "agreement", "contact"})
        CHECK_MESSAGE(j.contains(key), key);
    CHECK(j["theoretical_verdict"] == "member");
    CHECK(j["contact"][0].contains("slope"));
    CHECK(j["contact"][0].contains("residual"));
    CHECK(j["rif_summary"]["denominator"].get<std::string>() == format_poly(parse_poly("2 - z1 - z2")));
}

TEST_CASE("space parsing") {
    CHECK(parse_space("bcgw", 1.2, std::nullopt, {1, 1}).name() == "bcgw(1.2)");
    CHECK(parse_space("frak", 0.5, 0.0, {1, 1}).alpha2 == 0.0);
    CHECK(parse_space("frak", 0.5, std::nullopt, {1, 1}).alpha2 == 0.5);
    CHECK(parse_space("higher", 1.0, std::nullopt, {2, 1}).m == 2);
    CHECK_THROWS_AS(parse_space("hardy", 1.0, std::nullopt, {1, 1}), InputError);
    CHECK_THROWS_AS(parse_space("bcgw", 2.5, std::nullopt, {1, 1}), InputError);
}

TEST_CASE("run_report commands") {
    ReportRequest q;
    q.command = "contact";
    q.polynomial = "4 - 3z1 - z2 - z1*z2 + z1^2";
    auto out = run_report(q);
    CHECK(out.document["contact"]["K"] == 4);
    CHECK_FALSE(out.csv.empty());

    q.command = "taylor";
    q.polynomial = "2 - z1 - z2";
    q.kmax = q.lmax = 3;
    out = run_report(q);
    CHECK(out.document["coefficients"].size() == 16);

    q.command = "analyze";
    q.polynomial = "1 - 2 z1";
    CHECK_THROWS_AS(run_report(q), DomainError);
    q.polynomial = "2 - y";
    CHECK_THROWS_AS(run_report(q), ParseError);
    q.command = "plot";
    q.polynomial = "2 - z1 - z2";
    CHECK_THROWS_AS(run_report(q), InputError);
}
