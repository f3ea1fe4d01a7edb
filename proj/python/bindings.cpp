#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "rif/agler.hpp"
#include "rif/contact.hpp"
#include "rif/error.hpp"
#include "rif/polyexpr.hpp"
#include "rif/quadnorms.hpp"
#include "rif/report.hpp"
#include "rif/series.hpp"
#include "rif/stability.hpp"
#include "rif/suite.hpp"

namespace py = pybind11;
using namespace rif;

namespace {

Rif rif_from(const std::string& denominator) { return Rif::from_denominator(parse_poly(denominator)); }

Var var_from(const std::string& v) {
    if (v == "z1") return Var::z1;
    if (v == "z2") return Var::z2;
    throw InputError("variable must be z1 or z2");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Rational inner functions on the bidisk: singularities, contact order and Dirichlet-type norms.";

    auto base = py::register_exception<Error>(m, "Error");
    auto input = py::register_exception<InputError>(m, "InputError", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", input.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<NumericError>(m, "NumericError", base.ptr());

    m.def("normalize", [](const std::string& text) { return format_poly(parse_poly(text)); }, py::arg("text"),
          "Parse a polynomial and return its canonical text.");

    m.def("bidegree", [](const std::string& text) {
        const Bidegree d = parse_poly(text).bidegree();
        return std::pair<int, int>{d.n1, d.n2};
    }, py::arg("text"));

    m.def("evaluate", [](const std::string& denominator, cplx z1, cplx z2) { return rif_from(denominator)(z1, z2); },
          py::arg("denominator"), py::arg("z1"), py::arg("z2"),
          "Value of the rational inner function with the given denominator.");

    m.def("is_stable", [](const std::string& text, int grid) {
        const StabilityCertificate c = is_stable(parse_poly(text), grid);
        py::dict d;
        d["verdict"] = to_string(c.verdict);
        d["min_slice_root_margin"] = c.min_slice_root_margin;
        if (c.witness) d["witness"] = py::make_tuple(c.witness->first, c.witness->second);
        return d;
    }, py::arg("text"), py::arg("grid") = 128);

    m.def("torus_zeros", [](const std::string& text, int grid) {
        std::vector<std::pair<double, double>> out;
        for (const TorusPoint& p : find_torus_zeros(parse_poly(text), grid).points) out.emplace_back(p.s, p.t);
        return out;
    }, py::arg("text"), py::arg("grid") = 256);

    m.def("contact_profile_json", [](const std::string& denominator, int torus_grid) {
        return to_json(contact_profile(rif_from(denominator), torus_grid)).dump();
    }, py::arg("denominator"), py::arg("torus_grid") = 256);

    m.def("taylor_coeffs", [](const std::string& denominator, int kmax, int lmax) {
        const CoeffGrid g = taylor_coeffs(rif_from(denominator), kmax, lmax);
        std::vector<std::vector<cplx>> rows(kmax + 1);
        for (int k = 0; k <= kmax; ++k)
            for (int l = 0; l <= lmax; ++l) rows[k].push_back(g.at(k, l));
        return rows;
    }, py::arg("denominator"), py::arg("kmax"), py::arg("lmax"));

    m.def("slice_norm_json", [](const std::string& denominator, const std::string& variable, int order, double alpha,
                                int radial, int angular, std::vector<double> eps_levels) {
        const NormEstimate e = slice_norm(rif_from(denominator), var_from(variable), order, alpha,
                                          QuadGrid{radial, angular, 0.0}, eps_levels);
        return to_json(e).dump();
    }, py::arg("denominator"), py::arg("variable") = "z1", py::arg("order") = 1, py::arg("alpha") = 1.0,
          py::arg("radial") = 64, py::arg("angular") = 256, py::arg("eps_levels") = std::vector<double>{});

    m.def("classify_json", [](const std::string& denominator, const std::string& space, double alpha,
                              std::optional<double> alpha2, std::pair<int, int> order, bool numeric) {
        ClassifyOptions opt;
        opt.numeric = numeric;
        return to_json(classify(rif_from(denominator), parse_space(space, alpha, alpha2, order), opt)).dump();
    }, py::arg("denominator"), py::arg("space") = "bcgw", py::arg("alpha") = 1.0, py::arg("alpha2") = py::none(),
          py::arg("order") = std::pair<int, int>{1, 1}, py::arg("numeric") = true);

    m.def("agler_inner_reduction", []() {
        const AglerInnerCheck c = agler_inner_reduction();
        py::dict d;
        d["value"] = c.value;
        d["printed_value"] = c.printed_value;
        d["discrepancy"] = c.discrepancy;
        return d;
    });

    m.def("run_suite_json", [](std::vector<int> ids, std::uint64_t seed) {
        nlohmann::json arr = nlohmann::json::array();
        for (const CriterionResult& r : run_suite(ids, seed)) arr.push_back(to_json(r));
        return arr.dump();
    }, py::arg("ids"), py::arg("seed") = 20240607, py::call_guard<py::gil_scoped_release>());
}
