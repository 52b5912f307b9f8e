#include <cmath>
#include <limits>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mirrorflux/bogolubov.hpp"
#include "mirrorflux/errors.hpp"
#include "mirrorflux/scenarios.hpp"

namespace py = pybind11;
using namespace mirrorflux;

namespace {

py::dict sample_dict(const StressSample& s) {
  py::dict d;
  d["T_uu"] = s.T_uu;
  d["T_vv"] = s.T_vv;
  d["T_uv"] = s.T_uv;
  d["chart"] = s.chart;
  d["state"] = s.state;
  return d;
}

// Null components on the outer product of two coordinate arrays. Points near
// a singular ray are NaN; points outside the chart or the physical region
// raise CoverageError.
py::dict grid(const Scenario& s, const std::string& chart, const std::vector<double>& c1,
              const std::vector<double>& c2) {
  const auto n1 = static_cast<py::ssize_t>(c1.size()), n2 = static_cast<py::ssize_t>(c2.size());
  py::array_t<double> uu({n1, n2}), vv({n1, n2}), uv({n1, n2});
  auto a = uu.mutable_unchecked<2>(), b = vv.mutable_unchecked<2>(), c = uv.mutable_unchecked<2>();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (py::ssize_t i = 0; i < n1; ++i) {
    for (py::ssize_t j = 0; j < n2; ++j) {
      const Point p{c1[i], c2[j], chart};
      a(i, j) = b(i, j) = c(i, j) = nan;
      if (near_singular_ray(s, p)) continue;
      try {
        const StressSample t = evaluate(s, p);
        a(i, j) = t.T_uu;
        b(i, j) = t.T_vv;
        c(i, j) = t.T_uv;
      } catch (const SingularityError&) {
      }
    }
  }
  py::dict d;
  d["T_uu"] = uu;
  d["T_vv"] = vv;
  d["T_uv"] = uv;
  return d;
}

py::array_t<std::complex<double>> to_array(const ComplexMatrix& m) {
  py::array_t<std::complex<double>> out({static_cast<py::ssize_t>(m.rows),
                                         static_cast<py::ssize_t>(m.cols)});
  auto w = out.mutable_unchecked<2>();
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t c = 0; c < m.cols; ++c) w(r, c) = m(r, c);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_mirrorflux, m) {
  m.doc() = "Renormalized stress tensor of a 1+1D massless scalar with mirrors";

  auto base = py::register_exception<Error>(m, "MirrorfluxError", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<CoverageError>(m, "CoverageError", base.ptr());
  py::register_exception<SingularityError>(m, "SingularityError", base.ptr());
  py::register_exception<NoRootError>(m, "NoRootError", base.ptr());
  py::register_exception<MonotonicityError>(m, "MonotonicityError", base.ptr());
  py::register_exception<StateError>(m, "StateError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<OracleUnavailableError>(m, "OracleUnavailableError", base.ptr());

  m.def("list_scenarios", [] {
    py::list out;
    for (const ScenarioInfo& s : list_scenarios()) {
      py::list params;
      for (const ParamSchema& p : s.params) {
        py::dict d;
        d["name"] = p.name;
        d["description"] = p.description;
        d["default"] = p.default_value;
        d["affects_result"] = p.affects_result;
        params.append(d);
      }
      py::dict d;
      d["name"] = s.name;
      d["description"] = s.description;
      d["default_chart"] = s.default_chart;
      d["params"] = params;
      out.append(d);
    }
    return out;
  });

  py::class_<Scenario>(m, "Scenario")
      .def(py::init([](const std::string& name, double a) { return build_scenario(name, {a}); }),
           py::arg("name"), py::arg("a") = 1.0)
      .def_property_readonly("name", [](const Scenario& s) { return s.name; })
      .def_property_readonly("a", [](const Scenario& s) { return s.params.a; })
      .def_property_readonly("observation_chart", [](const Scenario& s) { return s.observation_chart; })
      .def_property_readonly("state", [](const Scenario& s) { return s.state.label; })
      .def_property_readonly("charts",
                             [](const Scenario& s) {
                               std::vector<std::string> names;
                               for (const auto& [k, v] : s.charts) names.push_back(k);
                               return names;
                             })
      .def(
          "evaluate",
          [](const Scenario& s, double c1, double c2, const std::string& chart) {
            return sample_dict(evaluate(s, {c1, c2, chart.empty() ? s.observation_chart : chart}));
          },
          py::arg("c1"), py::arg("c2"), py::arg("chart") = "")
      .def(
          "closed_form",
          [](const Scenario& s, double c1, double c2, const std::string& chart) {
            return sample_dict(
                closed_form_reference(s, {c1, c2, chart.empty() ? s.observation_chart : chart}));
          },
          py::arg("c1"), py::arg("c2"), py::arg("chart") = "")
      .def(
          "orthonormal",
          [](const Scenario& s, double c1, double c2, const std::string& chart) {
            const std::string name = chart.empty() ? s.observation_chart : chart;
            const OrthonormalStress o = to_orthonormal_frame(evaluate(s, {c1, c2, name}), s.chart(name));
            py::dict d;
            d["energy_density"] = o.energy_density;
            d["pressure"] = o.pressure;
            d["flux"] = o.flux;
            return d;
          },
          py::arg("c1"), py::arg("c2"), py::arg("chart") = "")
      .def(
          "grid",
          [](const Scenario& s, const std::vector<double>& c1, const std::vector<double>& c2,
             const std::string& chart) {
            return grid(s, chart.empty() ? s.observation_chart : chart, c1, c2);
          },
          py::arg("c1"), py::arg("c2"), py::arg("chart") = "")
      .def(
          "conservation_residual",
          [](const Scenario& s, const std::string& chart, double c1_lo, double c1_hi,
             double c2_lo, double c2_hi, int n) {
            const std::string name = chart.empty() ? s.observation_chart : chart;
            return check_conservation(s.state, s.chart(name), {c1_lo, c1_hi, c2_lo, c2_hi}, n)
                .max_residual;
          },
          py::arg("chart"), py::arg("c1_lo"), py::arg("c1_hi"), py::arg("c2_lo"),
          py::arg("c2_hi"), py::arg("n") = 50);

  m.def("rindler_point", [](double tau, double rho) {
    const Point p = rindler_point(tau, rho);
    return py::make_tuple(p.c1, p.c2);
  }, py::arg("tau"), py::arg("rho"));

  m.def(
      "thermal_coefficients",
      [](const std::vector<double>& frequencies, double width, int frequency_nodes,
         double abs_tol) {
        const ModeBasis a =
            make_mode_basis(minkowski_chart(), frequencies, width, ModeFamily::boost_eigen);
        const ModeBasis b = make_mode_basis(rindler_chart(), frequencies, width);
        QuadratureSpec spec;
        spec.frequency_nodes = frequency_nodes;
        spec.abs_tol = abs_tol;
        const BogolubovPair p = compute_coefficients(a, b, spec);
        std::vector<double> n, norm, ratio;
        for (std::size_t j = 0; j < p.alpha.rows; ++j) {
          n.push_back(expected_number(p, j));
          norm.push_back(row_normalization(p, j));
          ratio.push_back(thermal_ratio(p, j));
        }
        py::dict d;
        d["alpha"] = to_array(p.alpha);
        d["beta"] = to_array(p.beta);
        d["row_frequencies"] = p.row_frequencies;
        d["expected_number"] = n;
        d["row_normalization"] = norm;
        d["thermal_ratio"] = ratio;
        d["discretization_error"] = p.discretization_error;
        d["truncated"] = p.truncated;
        d["unconverged"] = p.unconverged;
        return d;
      },
      "Minkowski boost-eigen packets against Rindler plane-wave packets.",
      py::arg("frequencies"), py::arg("width") = 0.5, py::arg("frequency_nodes") = 129,
      py::arg("abs_tol") = 1e-8);
}
