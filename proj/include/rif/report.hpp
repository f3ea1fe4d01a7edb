#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rif/bipoly.hpp"
#include "rif/contact.hpp"
#include "rif/quadnorms.hpp"
#include "rif/series.hpp"
#include "rif/stability.hpp"

namespace rif {

enum class TheoreticalVerdict { member, non_member, not_covered };
const char* to_string(TheoreticalVerdict v);

struct TheoryRule {
    TheoreticalVerdict verdict = TheoreticalVerdict::not_covered;
    std::string rule;
    std::optional<double> cutoff;
};

// Rule table. K = 0 means the function has no singularity on the closed bidisc.
// `bidegree` only matters for higher_order spaces.
TheoryRule theoretical_verdict(int K, bool square_free, Bidegree bidegree, const SpaceSpec& space);

// Numeric verdicts within this distance of a cutoff are reported inconclusive.
inline constexpr double kCutoffBand = 0.05;

struct RifSummary {
    std::string denominator;
    std::string numerator;
    Bidegree bidegree;
    StabilityVerdict stability = StabilityVerdict::stable;
    std::vector<TorusPoint> singularities;
};

struct SeriesEvidence {
    std::vector<int> cuts;
    std::vector<double> partial_sums;
    double growth_slope = 0.0;
    NormVerdict verdict = NormVerdict::inconclusive;
};

struct MembershipReport {
    RifSummary rif_summary;
    SpaceSpec space;
    int K = 0;
    std::vector<ContactOrderEstimate> contact;
    TheoreticalVerdict theoretical_verdict = TheoreticalVerdict::not_covered;
    std::string theoretical_rule;
    std::optional<double> theoretical_cutoff;
    NormVerdict numeric_verdict = NormVerdict::inconclusive;
    bool near_cutoff = false;
    std::vector<NormEstimate> quadrature;
    std::optional<SeriesEvidence> series;
    bool square_free_flag = true;
    bool agreement = true;
    std::vector<std::string> warnings;
};

struct ClassifyOptions {
    QuadGrid grid{64, 256, 0.0};
    std::vector<double> eps_levels;
    // Largest diagonal cut for coefficient sums (dyadic cuts 16, 32, ..., series_max).
    int series_max = 2048;
    int torus_grid = 256;
    // Skip all numerics and report only the rule table.
    bool numeric = true;
};

MembershipReport classify(const Rif& f, const SpaceSpec& space, const ClassifyOptions& options = {});
// Same with a contact profile computed by the caller.
MembershipReport classify(const Rif& f, const SpaceSpec& space, const ContactProfile& profile,
                          const ClassifyOptions& options);

// Coefficient-sum evidence at dyadic cuts, diagnosed like a truncated integral with eps = 1/N.
SeriesEvidence series_evidence(const Rif& f, const SpaceSpec& space, int series_max);

struct NumericEvidence {
    std::vector<NormEstimate> quadrature;
    std::optional<SeriesEvidence> series;
    NormVerdict verdict = NormVerdict::inconclusive;
};

// Quadrature and coefficient diagnostics for one space, without the cutoff band.
NumericEvidence numeric_evidence(const Rif& f, const SpaceSpec& space, const TorusZeroSet& zeros,
                                 const ClassifyOptions& options);

// A numeric verdict contradicts a theoretical one.
bool contradicts(TheoreticalVerdict t, NormVerdict n);

nlohmann::json to_json(const TorusPoint& p);
nlohmann::json to_json(const ContactOrderEstimate& e);
nlohmann::json to_json(const ContactProfile& p);
nlohmann::json to_json(const NormEstimate& e);
nlohmann::json to_json(const SpaceSpec& s);
nlohmann::json to_json(const SeriesEvidence& s);
nlohmann::json to_json(const MembershipReport& r);

// Parses "frak", "bcg", "bcgw", "higher" with the given parameters. Throws InputError.
SpaceSpec parse_space(const std::string& tag, double alpha, std::optional<double> alpha2, std::pair<int, int> order);

struct ReportRequest {
    // analyze, contact, norm, taylor, verify.
    std::string command;
    std::string polynomial;
    std::string space = "bcgw";
    double alpha = 1.0;
    std::optional<double> alpha2;
    std::pair<int, int> order{1, 1};
    QuadGrid grid{64, 256, 0.0};
    std::vector<double> eps_levels;
    // Taylor truncation orders.
    int kmax = 16;
    int lmax = 16;
    std::string suite = "acceptance";
    std::uint64_t seed = 20240607;
};

struct ReportOutput {
    nlohmann::json document;
    // (file name, contents) pairs for the CSV sidecars.
    std::vector<std::pair<std::string, std::string>> csv;
    int exit_code = 0;
};

// Runs one command: stability, singularities, contact order, norms, classification as the command needs.
ReportOutput run_report(const ReportRequest& request);

}  // namespace rif
