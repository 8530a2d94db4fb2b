#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mckay/pipeline.hpp"

namespace py = pybind11;
using namespace mckay;

namespace {

RunOptions options(int w_max, int cohomology_w_max, std::size_t path_budget) {
  RunOptions o;
  o.w_max = w_max;
  o.cohomology_w_max = cohomology_w_max;
  o.path_budget = path_budget;
  return o;
}

py::dict result(const Report& r, const std::string& presentation, const std::string& dot) {
  py::dict d;
  d["report"] = r.to_json().dump();
  d["text"] = r.to_text();
  d["passed"] = r.passed();
  d["presentation"] = presentation;
  d["dot"] = dot;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Higher McKay quivers with potential over cyclotomic fields";

  static py::exception<Error> error(m, "MckayError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object code = py::str(std::string(error_code_name(e.code())));
      PyErr_SetObject(error.ptr(), py::make_tuple(py::str(e.what()), code).ptr());
    }
  });

  py::class_<Cyclo>(m, "Cyclo")
      .def(py::init<long>())
      .def_static("parse", &Cyclo::parse, py::arg("text"), py::arg("conductor"))
      .def_static("zeta", &Cyclo::zeta, py::arg("m"), py::arg("k") = 1)
      .def_property_readonly("conductor", [](const Cyclo& c) { return c.minimized().conductor(); })
      .def("is_rational", &Cyclo::is_rational)
      .def("conj", &Cyclo::conj)
      .def("inverse", &Cyclo::inverse)
      .def("__add__", [](const Cyclo& a, const Cyclo& b) { return a + b; })
      .def("__sub__", [](const Cyclo& a, const Cyclo& b) { return a - b; })
      .def("__mul__", [](const Cyclo& a, const Cyclo& b) { return a * b; })
      .def("__truediv__", [](const Cyclo& a, const Cyclo& b) { return a / b; })
      .def("__neg__", [](const Cyclo& a) { return -a; })
      .def("__eq__", [](const Cyclo& a, const Cyclo& b) { return a == b; })
      .def("__str__", [](const Cyclo& c) { return c.minimized().to_string(); })
      .def("__repr__", [](const Cyclo& c) { return "Cyclo('" + c.minimized().to_string() + "')"; });

  m.attr("default_path_budget") = default_path_budget;

  m.def(
      "poly_qp",
      [](int n, int w_max, int cw, std::size_t budget) {
        const PolyRun r = run_poly_qp(n, options(w_max, cw, budget));
        return result(r.report, presentation_json(r.qp.pres).dump(), quiver_dot(r.qp.pres.quiver));
      },
      py::arg("n"), py::arg("w_max") = 4, py::arg("cohomology_w_max") = 3, py::arg("path_budget") = default_path_budget);

  m.def(
      "mckay",
      [](const std::string& doc, int w_max, int cw, std::size_t budget) {
        const McKayRun r = run_mckay(parse_group_document(doc), options(w_max, cw, budget));
        return result(r.report, mckay_json(r.qp).dump(), quiver_dot(r.qp.pres.quiver));
      },
      py::arg("group_document"), py::arg("w_max") = 4, py::arg("cohomology_w_max") = 3,
      py::arg("path_budget") = default_path_budget);

  m.def(
      "gl_dga",
      [](const std::string& doc, int w_max, int cw, std::size_t budget) {
        const GlRun r = run_gl_dga(parse_group_document(doc), options(w_max, cw, budget));
        return result(r.report, presentation_json(r.dga.pres).dump(), quiver_dot(r.dga.pres.quiver));
      },
      py::arg("group_document"), py::arg("w_max") = 4, py::arg("cohomology_w_max") = 3,
      py::arg("path_budget") = default_path_budget);

  m.def(
      "h0",
      [](const std::optional<std::string>& doc, int n, int w_max, std::size_t budget) {
        H0Run r;
        if (doc) {
          const GroupDocument g = parse_group_document(*doc);
          r = run_h0(&g, 0, options(w_max, w_max, budget));
        } else {
          r = run_h0(nullptr, n, options(w_max, w_max, budget));
        }
        return result(r.report, h0_json(r.h0).dump(), quiver_dot(r.h0.quiver));
      },
      py::arg("group_document") = py::none(), py::arg("n") = 0, py::arg("w_max") = 3,
      py::arg("path_budget") = default_path_budget);

  m.def(
      "verify",
      [](const std::string& presentation) {
        const PresentationDocument doc = parse_presentation(presentation);
        return result(run_verify(doc), "", quiver_dot(doc.pres.quiver));
      },
      py::arg("presentation"));

  m.def(
      "info", [](const std::string& doc) { return result(run_info(parse_group_document(doc)), "", ""); },
      py::arg("group_document"));
}
