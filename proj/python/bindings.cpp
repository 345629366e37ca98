#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tgspec/errors.hpp"
#include "tgspec/gegenbauer.hpp"
#include "tgspec/ihoc.hpp"
#include "tgspec/interpolation.hpp"
#include "tgspec/quadrature.hpp"
#include "tgspec/tgbasis.hpp"

namespace py = pybind11;
using namespace tgspec;

namespace {

TGGrid grid_of(const std::string& family, double L, double alpha, std::size_t n) {
  return build_grid(TGMap(parse_family(family), L), GegenbauerIndex(alpha), n);
}

}  // namespace

PYBIND11_MODULE(_tgspec, m) {
  m.doc() = "Transformed Gegenbauer spectral quadrature and IHOC solver";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  py::class_<GaussRule>(m, "GaussRule")
      .def_readonly("n", &GaussRule::n)
      .def_readonly("nodes", &GaussRule::nodes)
      .def_readonly("weights", &GaussRule::weights)
      .def_readonly("lambdas", &GaussRule::lambdas)
      .def_property_readonly("alpha", [](const GaussRule& r) { return r.alpha.value(); });

  m.def("gauss_rule",
        [](double alpha, std::size_t n) { return gauss_rule(GegenbauerIndex(alpha), n); },
        py::arg("alpha"), py::arg("n"));
  m.def("eval_series",
        [](double alpha, std::size_t n, double x) { return eval_series(GegenbauerIndex(alpha), n, x); },
        py::arg("alpha"), py::arg("n"), py::arg("x"));
  m.def("lambda_norm",
        [](double alpha, std::size_t j) { return lambda_norm(GegenbauerIndex(alpha), j); },
        py::arg("alpha"), py::arg("j"));

  py::class_<TGGrid>(m, "TGGrid")
      .def_property_readonly("n", &TGGrid::n)
      .def_property_readonly("alpha", &TGGrid::alpha)
      .def_property_readonly("L", [](const TGGrid& g) { return g.map.L(); })
      .def_property_readonly("family", [](const TGGrid& g) { return std::string(to_string(g.map.family())); })
      .def_property_readonly("x_nodes", [](const TGGrid& g) { return g.rule.nodes; })
      .def_property_readonly("weights", &TGGrid::weights)
      .def_readonly("t_nodes", &TGGrid::t_nodes)
      .def_readonly("P", &TGGrid::P)
      .def_readonly("W", &TGGrid::W);

  m.def("build_grid", &grid_of, py::arg("family"), py::arg("L"), py::arg("alpha"), py::arg("n"));
  m.def("forward_map",
        [](const std::string& family, double L, double t) { return forward_map(TGMap(parse_family(family), L), t); },
        py::arg("family"), py::arg("L"), py::arg("t"));
  m.def("inverse_map",
        [](const std::string& family, double L, double x) { return inverse_map(TGMap(parse_family(family), L), x); },
        py::arg("family"), py::arg("L"), py::arg("x"));

  // Callbacks go through the GIL on every node; fine for smoke use.
  m.def("integrate_to_all_nodes",
        [](const TGGrid& g, const std::function<double(double)>& f) { return integrate_to_all_nodes(g, f); },
        py::arg("grid"), py::arg("f"));
  m.def("benchmark_error",
        [](const std::string& id, const std::string& family, double alpha, double L, std::size_t n) {
          const auto r = benchmark_error(parse_integral(id), parse_family(family), alpha, L, n);
          return py::make_tuple(r.max_abs_error, r.max_log_error);
        },
        py::arg("integral"), py::arg("family"), py::arg("alpha"), py::arg("L"), py::arg("n"));

  py::class_<TGInterpolant>(m, "TGInterpolant")
      .def_readonly("coeffs", &TGInterpolant::coeffs)
      .def("__call__", &evaluate_interpolant);
  m.def("forward_transform",
        [](const TGGrid& g, const std::vector<double>& samples) { return forward_transform(g, samples); },
        py::arg("grid"), py::arg("samples"));

  py::class_<SolveReport>(m, "SolveReport")
      .def_readonly("J_n", &SolveReport::J_n)
      .def_readonly("X", &SolveReport::X)
      .def_readonly("U", &SolveReport::U)
      .def_readonly("Y", &SolveReport::Y)
      .def_readonly("K_star", &SolveReport::K_star)
      .def_readonly("gain_residual", &SolveReport::gain_residual)
      .def_readonly("kkt_residual", &SolveReport::kkt_residual)
      .def_readonly("feasibility", &SolveReport::feasibility)
      .def_property_readonly("t_nodes", [](const SolveReport& r) { return r.grid.t_nodes; });

  m.def("solve",
        [](const std::string& problem, const std::string& family, double L, double alpha,
           std::size_t n, const std::string& method) {
          SolveOptions opts;
          opts.method = parse_method(method);
          return solve_problem(make_benchmark_problem(parse_benchmark(problem)),
                               grid_of(family, L, alpha, n), opts);
        },
        py::arg("problem"), py::arg("family") = "eg", py::arg("L") = 15.0,
        py::arg("alpha") = 0.5, py::arg("n") = 20, py::arg("method") = "is",
        py::call_guard<py::gil_scoped_release>());

  m.def("advise",
        [](const std::string& family, const std::string& regime, std::size_t n) {
          const auto a = advise_parameters(parse_family(family), parse_regime(regime), n);
          py::dict d;
          d["alpha"] = a.alpha;
          d["alpha_min"] = a.alpha_min;
          d["alpha_max"] = a.alpha_max;
          d["L_min"] = a.L_min;
          d["L_max"] = a.L_max;
          return d;
        },
        py::arg("family"), py::arg("regime"), py::arg("n"));
}
