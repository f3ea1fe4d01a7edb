// Command-line front end: analyze, contact, norm, taylor, verify.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "rif/error.hpp"
#include "rif/report.hpp"

namespace {

struct Flags {
    std::string p;
    std::string space = "bcgw";
    double alpha = 1.0;
    double alpha2 = 0.0;
    std::vector<int> order{1, 1};
    std::vector<int> grid{64, 256};
    std::vector<int> terms{16, 16};
    std::vector<double> eps;
    std::string json;
    std::string csv;
    std::string suite = "acceptance";
    std::uint64_t seed = 20240607;
};

void add_common(CLI::App* sub, Flags& f, bool needs_poly) {
    auto* opt = sub->add_option("--p", f.p, "Denominator polynomial, e.g. \"2 - z1 - z2\"");
    if (needs_poly) opt->required();
    sub->add_option("--json", f.json, "Write the JSON document here instead of stdout");
    sub->add_option("--csv", f.csv, "Directory for CSV sidecars");
}

std::vector<CLI::Option*> alpha2_options;

void add_norm_flags(CLI::App* sub, Flags& f) {
    sub->add_option("--space", f.space, "Space: frak, bcg, bcgw or higher")
        ->check(CLI::IsMember({"frak", "bcg", "bcgw", "higher"}));
    sub->add_option("--alpha", f.alpha, "Weight parameter");
    alpha2_options.push_back(sub->add_option("--alpha2", f.alpha2, "Second weight parameter (frak)"));
    sub->add_option("--order", f.order, "Derivative orders M N (higher)")->expected(2);
    sub->add_option("--grid", f.grid, "Quadrature resolution R A")->expected(2);
    sub->add_option("--eps-levels", f.eps, "Truncation levels, decreasing")->expected(4, 64);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rational inner functions: singularities, contact order and Dirichlet-type norms"};
    app.require_subcommand(1);
    Flags f;

    auto* analyze = app.add_subcommand("analyze", "Classify membership in a space");
    add_common(analyze, f, true);
    add_norm_flags(analyze, f);
    auto* contact = app.add_subcommand("contact", "Boundary singularities and contact order");
    add_common(contact, f, true);
    auto* norm = app.add_subcommand("norm", "Truncated norm estimates with divergence diagnostics");
    add_common(norm, f, true);
    add_norm_flags(norm, f);
    auto* taylor = app.add_subcommand("taylor", "Taylor coefficients");
    add_common(taylor, f, true);
    taylor->add_option("--terms", f.terms, "Truncation orders K L")->expected(2);
    auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
    add_common(verify, f, false);
    verify->add_option("--suite", f.suite, "Suite name");
    verify->add_option("--seed", f.seed, "Seed for randomized checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    rif::ReportRequest q;
    q.command = app.get_subcommands().front()->get_name();
    q.polynomial = f.p;
    q.space = f.space;
    q.alpha = f.alpha;
    for (const auto* o : alpha2_options)
        if (o->count() > 0) q.alpha2 = f.alpha2;
    q.order = {f.order[0], f.order[1]};
    q.grid = rif::QuadGrid{f.grid[0], f.grid[1], 0.0};
    q.eps_levels = f.eps;
    q.kmax = f.terms[0];
    q.lmax = f.terms[1];
    q.suite = f.suite;
    q.seed = f.seed;

    try {
        const rif::ReportOutput out = rif::run_report(q);
        const std::string text = out.document.dump(2);
        if (f.json.empty()) {
            std::cout << text << "\n";
        } else {
            std::ofstream os(f.json);
            if (!os) throw rif::InputError("cannot write " + f.json);
            os << text << "\n";
        }
        if (!f.csv.empty()) {
            std::filesystem::create_directories(f.csv);
            for (const auto& [name, body] : out.csv) {
                std::ofstream os(std::filesystem::path(f.csv) / name);
                if (!os) throw rif::InputError("cannot write " + name);
                os << body;
            }
        }
        return out.exit_code;
    } catch (const rif::InputError& e) {
        std::cerr << "rif: " << e.what() << "\n";
        return 1;
    } catch (const rif::Error& e) {
        std::cerr << "rif: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "rif: " << e.what() << "\n";
        return 2;
    }
}
