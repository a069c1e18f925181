#include <limits>
#include <optional>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "riskcap/dual.hpp"
#include "riskcap/engine.hpp"
#include "riskcap/illiquid.hpp"
#include "riskcap/oracle.hpp"
#include "riskcap/properties.hpp"
#include "riskcap/scenario.hpp"

namespace py = pybind11;
using namespace riskcap;

namespace {

double extended_to_double(const ExtendedValue& v) {
    if (v.is_plus_inf()) return std::numeric_limits<double>::infinity();
    if (v.is_minus_inf()) return -std::numeric_limits<double>::infinity();
    return v.value;
}

py::dict rho_result_to_dict(const RhoResult& r) {
    py::dict d;
    d["rho"] = extended_to_double(r.value);
    d["status"] = r.value.is_finite() ? "finite" : r.value.to_string();
    d["reason"] = reason_name(r.value.reason);
    d["method"] = r.method == RhoResult::Method::ClosedForm ? "closed_form" : "bisection";
    d["iterations"] = r.iterations;
    d["residual"] = r.residual;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Capital requirements with general eligible assets on finite scenario spaces";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<ScenarioSpace>(m, "ScenarioSpace")
        .def(py::init<Vec>(), py::arg("probabilities"))
        .def_property_readonly("probabilities", &ScenarioSpace::probabilities)
        .def("__len__", &ScenarioSpace::size);

    py::class_<EligibleAsset>(m, "EligibleAsset")
        .def(py::init<double, Vec>(), py::arg("price"), py::arg("payoff"))
        .def_readonly("price", &EligibleAsset::price)
        .def_readonly("payoff", &EligibleAsset::payoff);

    py::class_<AcceptanceSpec>(m, "AcceptanceSpec")
        .def_static("var", &AcceptanceSpec::var, py::arg("alpha"))
        .def_static("tvar", &AcceptanceSpec::tvar, py::arg("alpha"))
        .def_static("expectation", &AcceptanceSpec::expectation, py::arg("alpha"))
        .def_static("scenario",
                    [](std::size_t n, const std::vector<std::size_t>& indices) {
                        return AcceptanceSpec::scenario(EventMask::from_indices(n, indices));
                    },
                    py::arg("n"), py::arg("indices"))
        .def_static("shortfall_exp",
                    [](double a, double alpha) {
                        return AcceptanceSpec::shortfall(Utility::exponential(a), alpha);
                    },
                    py::arg("a"), py::arg("alpha"))
        .def_static("from_json", &AcceptanceSpec::from_json, py::arg("json_text"))
        .def("to_json", &AcceptanceSpec::to_json)
        .def_property_readonly("alpha", &AcceptanceSpec::alpha)
        .def_property_readonly("convex", &AcceptanceSpec::is_convex)
        .def_property_readonly("coherent", &AcceptanceSpec::is_coherent)
        .def("describe", &AcceptanceSpec::describe);

    py::class_<PricingFunctional>(m, "PricingFunctional")
        .def_static("linear", &PricingFunctional::linear, py::arg("asset_price"))
        .def_static("from_json", &PricingFunctional::from_json, py::arg("json_text"),
                    py::arg("asset_price"))
        .def("to_json", &PricingFunctional::to_json)
        .def("__call__", &PricingFunctional::eval, py::arg("lam"))
        .def("left_limit", &PricingFunctional::left_limit, py::arg("lam"));

    m.def("var_value", &var_value, py::arg("space"), py::arg("x"), py::arg("alpha"));
    m.def("tvar_value", &tvar_value, py::arg("space"), py::arg("x"), py::arg("alpha"));
    m.def("is_acceptable", &is_acceptable, py::arg("spec"), py::arg("space"), py::arg("x"));

    m.def("rho",
          [](const AcceptanceSpec& spec, const ScenarioSpace& space, const Vec& x,
             const EligibleAsset& asset, double tol) {
              return rho_result_to_dict(rho(spec, space, x, asset, tol));
          },
          py::arg("spec"), py::arg("space"), py::arg("x"), py::arg("asset"), py::arg("tol") = 1e-9);

    m.def("rho_illiquid",
          [](const AcceptanceSpec& spec, const ScenarioSpace& space, const Vec& x,
             const EligibleAsset& asset, const PricingFunctional& pi, double tol) {
              return extended_to_double(rho_illiquid(spec, space, x, asset, pi, tol));
          },
          py::arg("spec"), py::arg("space"), py::arg("x"), py::arg("asset"), py::arg("pi"),
          py::arg("tol") = 1e-9);

    m.def("dual_rho",
          [](const AcceptanceSpec& spec, const ScenarioSpace& space, const Vec& x,
             const EligibleAsset& asset) {
              return extended_to_double(dual_rho(spec, space, x, asset));
          },
          py::arg("spec"), py::arg("space"), py::arg("x"), py::arg("asset"));

    m.def("dual_vertices",
          [](const AcceptanceSpec& spec, const ScenarioSpace& space, const EligibleAsset& asset) {
              const DualDecomposition dec = dual_vertices(spec, space, asset);
              std::vector<Vec> psis;
              for (const auto& c : dec.certificates) psis.push_back(c.psi);
              py::dict d;
              d["certificates"] = psis;
              d["degenerate_directions"] = dec.degenerate_directions;
              return d;
          },
          py::arg("spec"), py::arg("space"), py::arg("asset"));

    m.def("cash_subadditivity_report",
          [](const AcceptanceSpec& spec, const ScenarioSpace& space, const EligibleAsset& asset,
             std::size_t budget, std::uint64_t seed, double tol) {
              return cash_subadditivity_report(spec, space, asset, budget, seed, tol).to_json();
          },
          py::arg("spec"), py::arg("space"), py::arg("asset"), py::arg("budget") = 10000,
          py::arg("seed") = 42, py::arg("tol") = 1e-9);

    m.def("axiom_suite",
          [](const AcceptanceSpec& spec, const ScenarioSpace& space, const EligibleAsset& asset,
             std::size_t samples, std::uint64_t seed, double tol) {
              return axiom_suite(spec, space, asset, samples, seed, tol).to_json();
          },
          py::arg("spec"), py::arg("space"), py::arg("asset"), py::arg("samples") = 200,
          py::arg("seed") = 42, py::arg("tol") = 1e-9);

    m.def("check_numeraire_identity",
          [](const AcceptanceSpec& spec, const ScenarioSpace& space, const Vec& x,
             const EligibleAsset& asset, double tol) {
              const NumeraireCheck c = check_numeraire_identity(spec, space, x, asset, tol);
              py::dict d;
              d["pass"] = c.pass;
              d["lhs"] = c.lhs;
              d["rhs"] = c.rhs;
              return d;
          },
          py::arg("spec"), py::arg("space"), py::arg("x"), py::arg("asset"), py::arg("tol") = 1e-9);

    m.def("check_quasiconvexity",
          [](const AcceptanceSpec& spec, const ScenarioSpace& space, const EligibleAsset& asset,
             const PricingFunctional& pi, std::size_t samples, std::uint64_t seed, double tol) {
              return check_quasiconvexity(spec, space, asset, pi, samples, seed, tol).to_json();
          },
          py::arg("spec"), py::arg("space"), py::arg("asset"), py::arg("pi"),
          py::arg("samples") = 200, py::arg("seed") = 42, py::arg("tol") = 1e-9);

    m.def("load_scenarios",
          [](const std::string& path) {
              const LoadedScenarios data = load_scenarios(path);
              py::dict d;
              d["probabilities"] = data.space.probabilities();
              d["positions"] = data.positions;
              d["payoff"] = data.payoff;
              return d;
          },
          py::arg("path"));
}
