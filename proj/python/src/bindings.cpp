#include "toric/cohomology.hpp"
#include "toric/errors.hpp"
#include "toric/fixtures.hpp"
#include "toric/geometry.hpp"
#include "toric/io.hpp"
#include "toric/polytope.hpp"
#include "toric/potential.hpp"
#include "toric/spectrum.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace toric;

namespace {

// Reports cross the boundary as plain Python containers.
py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

SymplecticPotential make_potential(const DelzantPolytope& p, const std::string& correction) {
  auto g = canonical_potential(p);
  if (correction.empty() || correction == "zero") return g;
  if (correction == "calabi-blowup") return add_correction(g, load_correction(correction, p.dim()));
  return add_correction(g, parse_correction(correction, p.dim(), "<correction>"));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Kähler geometry of toric manifolds on Delzant polytopes";

  py::register_exception<ToricError>(m, "ToricError", PyExc_ValueError);

  py::class_<DelzantPolytope>(m, "Polytope")
      .def_static("from_json", [](const std::string& text) { return parse_polytope(text); }, py::arg("text"))
      .def_static("load", &load_polytope, py::arg("path"))
      .def_static("fixture", &fixtures::by_name, py::arg("name"))
      .def_property_readonly("dim", &DelzantPolytope::dim)
      .def_property_readonly("num_facets", &DelzantPolytope::num_facets)
      .def_property_readonly("name", &DelzantPolytope::name)
      .def("to_json", [](const DelzantPolytope& p) { return to_python(polytope_json(p)); })
      .def("describe", [](const DelzantPolytope& p) { return to_python(combinatorics_json(p)); })
      .def("vertices", [](const DelzantPolytope& p) {
        std::vector<std::vector<double>> out;
        for (const auto& v : p.vertices()) {
          std::vector<double> pt;
          for (const auto& q : v.point) pt.push_back(to_double(q));
          out.push_back(pt);
        }
        return out;
      })
      .def("sl_transform", &sl_transform, py::arg("matrix"))
      .def("h_numbers", [](const DelzantPolytope& p) { return h_numbers(p); })
      .def("normal_sum", &normal_sum);

  m.def("fixture_names", &fixtures::names);

  py::class_<SymplecticPotential>(m, "Potential")
      .def(py::init(&make_potential), py::arg("polytope"), py::arg("correction") = "",
           "Canonical potential plus an optional correction given as a name or correction JSON text")
      .def_property_readonly("dim", &SymplecticPotential::dim)
      .def("hessian", [](const SymplecticPotential& g, const Eigen::VectorXd& x) { return Eigen::MatrixXd(g.jet(x, 2).hessian); }, py::arg("x"))
      .def("scalar_curvature", &scalar_curvature, py::arg("x"))
      .def("scalar_curvature_alt", &scalar_curvature_alt, py::arg("x"))
      .def("validate", [](const SymplecticPotential& g) { return to_python(validity_json(validate_potential(g))); })
      .def("extremality", [](const SymplecticPotential& g, double tol) { return to_python(extremality_json(extremality_test(g, SamplingConfig{}, tol))); },
           py::arg("tol") = kDefaultExtremalTolerance)
      .def(
          "spectrum",
          [](const SymplecticPotential& g, int k, const std::string& method, int degree, int cells) {
            const bool fem = method == "fem" || (method == "auto" && g.dim() == 1);
            if (method != "auto" && method != "fem" && method != "ritz") throw ToricError(ErrorKind::InvalidArgument, "method must be auto, ritz or fem");
            const auto r = fem ? invariant_spectrum(g, k, Fem1DConfig{cells}) : invariant_spectrum(g, k, RitzConfig{degree});
            return to_python(spectrum_json(r));
          },
          py::arg("k"), py::arg("method") = "auto", py::arg("degree") = 6, py::arg("cells") = 512);

  m.def("bessel_bounds", [](int max_j) {
    std::vector<double> out;
    for (const auto& b : bessel_bounds(max_j)) out.push_back(b.bound);
    return out;
  }, py::arg("max_j"));
  m.def("spectral_invariance", [](const DelzantPolytope& p, const IntMatrix& a, int k, int degree) {
    const auto r = spectral_invariance_check(p, a, k, RitzConfig{degree});
    py::dict d;
    d["original"] = r.original;
    d["transformed"] = r.transformed;
    d["max_relative_difference"] = r.max_relative_difference;
    d["invariant"] = r.invariant;
    return d;
  }, py::arg("polytope"), py::arg("matrix"), py::arg("k") = 2, py::arg("degree") = 6);
  m.def("cohomology", [](const DelzantPolytope& p) { return to_python(cohomology_json(p)); }, py::arg("polytope"));
  m.def("generator_form", [](const DelzantPolytope& p, std::size_t r, const Eigen::VectorXd& x) { return Eigen::MatrixXd(generator_form(p, r, x).C); },
        py::arg("polytope"), py::arg("facet"), py::arg("x"));
  m.def("ddbar_legendre", [](const SymplecticPotential& g, const Eigen::VectorXd& x) { return Eigen::MatrixXd(ddbar_coefficients(g, legendre_field(g), x).C); },
        py::arg("potential"), py::arg("x"));
}
