#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ejakit/composite.hpp"
#include "ejakit/diagonalize.hpp"
#include "ejakit/errors.hpp"
#include "ejakit/pet_suite.hpp"
#include "ejakit/serialize.hpp"

namespace py = pybind11;
using namespace ejakit;

namespace {

// JSON crosses the boundary as text; the Python package decodes it.
AlgebraSpec spec_from_text(const std::string& text) { return spec_from_json(parse_json(text)); }

ToleranceConfig make_tolerances(double eig, double pos, double op, double sharp) {
  ToleranceConfig tol{eig, pos, op, sharp};
  tol.validate();
  return tol;
}

}  // namespace

PYBIND11_MODULE(_ejakit, m) {
  m.doc() = "Euclidean Jordan algebra effect theory (native core)";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<StructuralError>(m, "StructuralError", PyExc_TypeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

  py::class_<ToleranceConfig>(m, "Tolerances")
      .def(py::init(&make_tolerances), py::arg("eig") = 1e-8, py::arg("pos") = 1e-9, py::arg("op") = 1e-9,
           py::arg("sharp") = 1e-7)
      .def_readonly("eig", &ToleranceConfig::eig)
      .def_readonly("pos", &ToleranceConfig::pos)
      .def_readonly("op", &ToleranceConfig::op)
      .def_readonly("sharp", &ToleranceConfig::sharp);

  py::class_<AlgebraSpec>(m, "Algebra")
      .def(py::init(&spec_from_text), py::arg("spec_json"))
      .def_property_readonly("dim", &AlgebraSpec::dim)
      .def_property_readonly("rank", &AlgebraSpec::rank)
      .def_property_readonly("name", &AlgebraSpec::name)
      .def("to_json", [](const AlgebraSpec& s) { return canonical_dump(spec_to_json(s)); })
      .def("__eq__", [](const AlgebraSpec& a, const AlgebraSpec& b) { return a == b; })
      .def("__repr__", [](const AlgebraSpec& s) { return "Algebra(" + s.name() + ")"; });

  py::class_<Element>(m, "Element")
      .def(py::init<AlgebraSpec, Eigen::VectorXd>(), py::arg("algebra"), py::arg("coords"))
      .def_static("unit", &Element::unit)
      .def_static("zero", &Element::zero)
      .def_property_readonly("algebra", &Element::spec)
      .def_property_readonly("coords", [](const Element& a) { return Eigen::VectorXd(a.coords()); })
      .def("to_json", [](const Element& a) { return canonical_dump(element_to_json(a)); })
      .def_static("from_json", [](const std::string& text) { return element_from_json(parse_json(text)); })
      .def("__add__", [](const Element& a, const Element& b) { return a + b; })
      .def("__sub__", [](const Element& a, const Element& b) { return a - b; })
      .def("__mul__", [](const Element& a, double s) { return s * a; })
      .def("__rmul__", [](const Element& a, double s) { return s * a; })
      .def("__neg__", [](const Element& a) { return -a; });

  m.def("jordan_product", &jordan_product);
  m.def("inner_product", &inner_product);
  m.def("quadratic_rep", &quadratic_rep);
  m.def("eigenvalues", &eigenvalues);
  m.def("order_norm", &order_norm);
  m.def("complement", &complement);
  m.def("is_effect", &is_effect, py::arg("q"), py::arg("tol") = ToleranceConfig{});
  m.def("is_sharp", &is_sharp, py::arg("q"), py::arg("tol") = ToleranceConfig{});
  m.def("is_atomic", &is_atomic, py::arg("q"), py::arg("tol") = ToleranceConfig{});
  m.def("floor", &ejakit::floor, py::arg("q"), py::arg("tol") = ToleranceConfig{});
  m.def("ceiling", &ceiling, py::arg("q"), py::arg("tol") = ToleranceConfig{});
  m.def("transition_probability", &transition_probability, py::arg("p"), py::arg("q"),
        py::arg("tol") = ToleranceConfig{});

  m.def("random_effect", py::overload_cast<const AlgebraSpec&, std::uint64_t>(&random_effect));
  m.def("random_atom", py::overload_cast<const AlgebraSpec&, std::uint64_t>(&random_atom));
  m.def("random_sharp", py::overload_cast<const AlgebraSpec&, std::uint64_t, int>(&random_sharp),
        py::arg("algebra"), py::arg("seed"), py::arg("rank"));

  m.def(
      "peel",
      [](const Element& v, const ToleranceConfig& tol) {
        const SpectralDecomposition d = peel_diagonalize(v, tol);
        return py::make_tuple(d.values, d.projections);
      },
      py::arg("effect"), py::arg("tol") = ToleranceConfig{},
      "Eigenvalues and projections of an effect found by peeling floors.");
  m.def(
      "diagonalize",
      [](const Element& a, const ToleranceConfig& tol) {
        const SignedDecomposition s = diagonalize_general(a, tol);
        return py::make_tuple(s.decomposition.values, s.decomposition.projections);
      },
      py::arg("element"), py::arg("tol") = ToleranceConfig{});

  m.def("check_ids", [] {
    std::vector<std::string> ids;
    for (const CheckInfo& c : check_catalog()) ids.push_back(c.id);
    return ids;
  });
  m.def(
      "run_check_json",
      [](const std::string& id, const AlgebraSpec& spec, std::uint64_t seed, int trials, const ToleranceConfig& tol) {
        return canonical_dump(report_to_json(run_check(id, spec, seed, trials, tol)));
      },
      py::arg("check_id"), py::arg("algebra"), py::arg("seed") = 1, py::arg("trials") = 50,
      py::arg("tol") = ToleranceConfig{});
  m.def(
      "tensor",
      [](const AlgebraSpec& a, const AlgebraSpec& b) { return tensor_matrix(a, b).spec; }, py::arg("left"),
      py::arg("right"));
  m.def(
      "scan_json",
      [](int max_rank, int max_power, int max_spin_dim) {
        return canonical_dump(scan_to_json(scan_closure(max_rank, max_power, max_spin_dim)));
      },
      py::arg("max_rank") = 8, py::arg("max_power") = 4, py::arg("max_spin_dim") = 10);
}
