// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "murearr/cli.hpp"
#include "murearr/elliptic.hpp"
#include "murearr/gridsets.hpp"
#include "murearr/io.hpp"
#include "murearr/parallel.hpp"
#include "murearr/rearrange1d.hpp"
#include "murearr/rearrangefn.hpp"
#include "murearr/spectral.hpp"
#include "murearr/suites.hpp"

namespace py = pybind11;
using namespace murearr;

namespace {

// Json crosses the boundary as text; the python side wraps with json.loads.
LatticePtr lattice_from(const std::string& density_json, int N, double L) {
  const Json spec = Json::parse(density_json);
  return make_lattice(GridSpec{spec.value("n", 2), N, L}, weight_from_json(spec));
}

py::array_t<double> to_array(const LatticePtr& lat, const std::vector<double>& v) {
  std::vector<py::ssize_t> shape(lat->n(), lat->N());
  py::array_t<double> a(shape);
  std::copy(v.begin(), v.end(), a.mutable_data());
  return a;
}

std::vector<double> from_array(const LatticePtr& lat, const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (static_cast<std::size_t>(a.size()) != lat->size()) throw ParameterError("array size does not match the grid");
  return std::vector<double>(a.data(), a.data() + a.size());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Weighted symmetrization and rearrangement kernels";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<RangeError>(m, "RangeError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<ParameterError>(m, "ParameterError", base.ptr());
  py::register_exception<QuadratureError>(m, "QuadratureError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());

  py::class_<Density1D>(m, "Density1D")
      .def_static("gaussian", &Density1D::gaussian, py::arg("c"), py::arg("quad_tol") = Density1D::kDefaultQuadTol)
      .def("psi", &Density1D::psi)
      .def("primitive", &Density1D::primitive)
      .def("primitive_inverse", &Density1D::primitive_inverse)
      .def("iso_j", &Density1D::iso_j)
      .def("profile", &Density1D::profile);

  py::class_<RadialDensity>(m, "RadialDensity")
      .def(py::init<int, double>(), py::arg("n"), py::arg("c"))
      .def("h", &RadialDensity::h)
      .def("H", &RadialDensity::H)
      .def("H_inverse", &RadialDensity::H_inverse)
      .def("profile", &RadialDensity::profile);

  py::class_<IntervalSet>(m, "IntervalSet")
      .def(py::init<std::vector<IntervalSet::Interval>>())
      .def_static("centered", &IntervalSet::centered)
      .def("intervals", &IntervalSet::intervals);
  m.def("measure_1d", &measure_1d);
  m.def("perimeter_1d", &perimeter_1d);
  m.def("symmetrize_1d", &symmetrize_1d);

  m.def("set_thread_cap", &set_thread_cap);
  m.def("thread_cap", &thread_cap);

  m.def(
      "symmetrize",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> values, const std::string& density, double L,
         const std::string& mode, bool is_set) {
        const int N = values.ndim() > 0 ? static_cast<int>(values.shape(0)) : 0;
        const LatticePtr lat = lattice_from(density, N, L);
        std::vector<double> v = from_array(lat, values);
        const SymMode sm = sym_mode_from_string(mode);
        if (is_set) {
          const GridSet s(lat, std::move(v));
          return to_array(lat, (sm == SymMode::kSteiner ? steiner_symmetrize_set(s) : schwarz_symmetrize_set(s)).occ);
        }
        return to_array(lat, symmetrize_fn(GridFunction(lat, std::move(v)), sm).values);
      },
      py::arg("values"), py::arg("density"), py::arg("L"), py::arg("mode") = "schwarz", py::arg("is_set") = false);

  m.def(
      "rayleigh_quotient",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> values, const std::string& density, double L) {
        const LatticePtr lat = lattice_from(density, static_cast<int>(values.shape(0)), L);
        return rayleigh_quotient(GridFunction(lat, from_array(lat, values)));
      },
      py::arg("values"), py::arg("density"), py::arg("L"));

  m.def("run_suite_json", [](const std::string& name, const std::string& cfg_json) {
    const Json j = Json::parse(cfg_json);
    SuiteConfig c;
    c.seed = j.value("seed", std::uint64_t{7});
    if (j.contains("cases")) c.cases = j.at("cases").get<int>();
    if (j.contains("c")) c.c = j.at("c").get<double>();
    if (j.contains("n")) c.n = j.at("n").get<int>();
    if (j.contains("N")) c.N = j.at("N").get<int>();
    if (j.contains("L")) c.L = j.at("L").get<double>();
    if (j.contains("p")) c.p = j.at("p").get<double>();
    if (j.contains("q")) c.q = j.at("q").get<double>();
    if (j.contains("tol")) c.tol = j.at("tol").get<double>();
    py::gil_scoped_release release;
    const Json r = name == "full" ? run_all_suites(c) : run_suite(name, c);
    return r.dump();
  });
  m.def("suite_names", &suite_names);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code;
    {
      py::gil_scoped_release release;
      code = run_cli(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  });
}
