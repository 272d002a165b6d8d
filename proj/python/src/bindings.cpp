#include "hllxw/analysis.hpp"
#include "hllxw/cli.hpp"
#include "hllxw/dissipation.hpp"
#include "hllxw/reference.hpp"
#include "hllxw/solvers.hpp"
#include "hllxw/timeloop.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace hllxw;

namespace {

FluxScheme make_scheme(const std::string& name, std::optional<double> omega, const std::string& path) {
  const SchemeKind kind = parse_scheme_kind(name);
  std::optional<OmegaParam> w;
  if (omega) w = OmegaParam(*omega);
  std::optional<EvalPath> p;
  if (scheme_has_paths(kind)) p = parse_path(path);
  return FluxScheme::make(kind, w, p);
}

py::array_t<double> to_array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

py::dict run_document(const std::string& document) {
  const CaseConfig config = parse_config(document);
  const auto model = config.make_model();
  RunResult res = [&] {
    py::gil_scoped_release release;
    return run(config, *model);
  }();
  py::dict variables;
  for (const auto& name : model->variable_names()) {
    variables[py::str(name)] = to_array(extract_variable(res.final_, *model, name));
  }
  py::dict out;
  out["x"] = to_array(res.grid.centers());
  out["t"] = res.t_final;
  out["steps"] = res.diagnostics.size();
  out["variables"] = variables;
  out["conservation_residual"] = res.ledger.max_relative_residual();
  return out;
}

}  // namespace

PYBIND11_MODULE(_hllxw, m) {
  m.doc() = "HLL-type hybrid Riemann solvers in a 1D finite-volume framework";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);
  py::register_exception<RunError>(m, "RunError", PyExc_RuntimeError);

  m.def(
      "dissipation",
      [](const std::string& scheme, py::array_t<double> nu, double nu_min, double nu_max, std::optional<double> omega) {
        const FluxScheme s = make_scheme(scheme, omega, "composite");
        const WaveBracket br = WaveBracket::from_courant(nu_min, nu_max);
        return py::vectorize([&](double x) { return scheme_dissipation(s, x, br); })(nu);
      },
      py::arg("scheme"), py::arg("nu"), py::arg("nu_min"), py::arg("nu_max"), py::arg("omega") = py::none(),
      "Scalar dissipation d(nu) of a scheme for the given Courant-number bracket.");

  m.def(
      "hllx_coeffs",
      [](double nu_min, double nu_max) {
        const HllxCoeffs c = hllx_coeffs(WaveBracket::from_courant(nu_min, nu_max));
        return py::dict(py::arg("alpha") = c.alpha, py::arg("alpha0") = c.alpha0, py::arg("alpha1") = c.alpha1,
                        py::arg("alpha2") = c.alpha2);
      },
      py::arg("nu_min"), py::arg("nu_max"));

  m.def(
      "beta_coeffs",
      [](double nu_min, double nu_max, double omega) {
        const HllxOmegaCoeffs c = beta_coeffs(WaveBracket::from_courant(nu_min, nu_max), OmegaParam(omega));
        return py::dict(py::arg("beta") = c.beta, py::arg("beta0") = c.beta0, py::arg("beta1") = c.beta1,
                        py::arg("beta2") = c.beta2, py::arg("b0") = c.b0, py::arg("b1") = c.b1);
      },
      py::arg("nu_min"), py::arg("nu_max"), py::arg("omega"));

  m.def(
      "region_check",
      [](const std::string& scheme, double nu_min, double nu_max, std::optional<double> omega, int samples) {
        const FluxScheme s = make_scheme(scheme, omega, "composite");
        const WaveBracket br = WaveBracket::from_courant(nu_min, nu_max);
        const RegionReport r = region_check([&](double x) { return scheme_dissipation(s, x, br); }, br, samples);
        return py::dict(py::arg("monotone") = r.monotone, py::arg("l2_stable") = r.l2_stable,
                        py::arg("max_violation") = r.max_violation);
      },
      py::arg("scheme"), py::arg("nu_min"), py::arg("nu_max"), py::arg("omega") = py::none(),
      py::arg("samples") = 401);

  m.def(
      "modified_eq_coeffs",
      [](double a, double dx, double nu) {
        const ModifiedEqCoeffs c = modified_eq_coeffs(a, dx, nu);
        return py::make_tuple(c.d_up, c.d_lw);
      },
      py::arg("a"), py::arg("dx"), py::arg("nu"), "(D_UP, D_LW) of the modified equation.");

  m.def(
      "utilde", [](py::array_t<double> xi, double d_hat) { return py::vectorize([d_hat](double x) { return utilde(x, d_hat); })(xi); },
      py::arg("xi"), py::arg("d_hat"), "Non-dimensional smeared-step profile.");

  m.def("case_names", &builtin_case_names);
  m.def(
      "case_document", [](const std::string& name) { return emit_config(builtin_case(name)); }, py::arg("name"),
      "Fully explicit JSON document of a built-in case.");
  m.def("run_document", &run_document, py::arg("document"),
        "Runs a JSON case document; returns cell centres, primitive variables and run statistics.");
}
