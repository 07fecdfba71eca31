#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mvsp/io.hpp"

namespace py = pybind11;
using namespace mvsp;

namespace {

// Results cross the boundary as JSON text; the Python wrapper decodes them.
std::string dump(const Json& j) { return j.dump(); }

AdditivePoly additive(const Field& F, const std::string& text) {
  auto A = detect_additive(F, parse_poly(F, text));
  if (!A) throw InputError("polynomial is not additive");
  return at_base(F, *A);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Minimal value set polynomials over finite fields";
  py::register_exception<GuardError>(m, "GuardError", PyExc_RuntimeError);
  py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);

  py::class_<Field, std::shared_ptr<Field>>(m, "Field")
      .def(py::init([](const std::string& spec) { return std::const_pointer_cast<Field>(Field::parse(spec)); }))
      .def_property_readonly("p", &Field::p)
      .def_property_readonly("k", &Field::k)
      .def_property_readonly("n", &Field::n)
      .def_property_readonly("q", &Field::q)
      .def_property_readonly("order", &Field::order)
      .def_property_readonly("spec", &Field::spec)
      .def("__repr__", [](const Field& F) { return "Field('" + F.spec() + "')"; });

  m.def("normalize", [](const Field& F, const std::string& f) { return format_poly(F, parse_poly(F, f)); });
  m.def("to_json", [](const Field& F, const std::string& f) { return dump(poly_json(F, parse_poly(F, f))); });
  m.def("from_json", [](const Field& F, const std::string& j) { return format_poly(F, poly_from_json(F, Json::parse(j))); });
  m.def("evaluate", [](const Field& F, const std::string& f, const std::string& a) {
    return format_elem(F, eval(F, parse_poly(F, f), parse_elem(F, a)));
  });

  m.def("verify", [](const Field& F, const std::string& f, const std::optional<std::string>& T) {
    const Poly pf = parse_poly(F, f);
    return dump(report_json(F, T ? mills_check(F, pf, parse_poly(F, *T)) : is_minimal(F, pf)));
  }, py::arg("field"), py::arg("F"), py::arg("T") = py::none());
  m.def("classify", [](const Field& F, const std::string& f, bool any_degree) {
    const Poly pf = parse_poly(F, f);
    return dump(classification_json(F, any_degree ? extract_normal_form(F, pf) : classify_low_degree(F, pf)));
  }, py::arg("field"), py::arg("F"), py::arg("any_degree") = false);
  m.def("reduce", [](const Field& F, const std::string& T) {
    Json arr = Json::array();
    for (const auto& w : find_additive_reduction(F, parse_poly(F, T))) arr.push_back(witness_json(F, w));
    return dump(arr);
  });
  m.def("orbits", [](std::uint64_t q, unsigned n) { return dump(orbit_table_json(orbit_table(q, n))); });
  m.def("basis", [](const Field& F, unsigned d, const std::string& alpha) {
    return dump(basis_json(F, build_basis(F, d, parse_elem(F, alpha))));
  }, py::arg("field"), py::arg("d") = 1, py::arg("alpha") = "1");
  m.def("enumerate", [](const Field& F, unsigned d, const std::string& alpha, std::uint64_t limit) {
    std::vector<std::string> out;
    for (const auto& f : enumerate_w(F, build_basis(F, d, parse_elem(F, alpha)), limit)) out.push_back(format_poly(F, f));
    return out;
  }, py::arg("field"), py::arg("d") = 1, py::arg("alpha") = "1", py::arg("limit") = std::uint64_t{1} << 20);
  m.def("lift", [](const Field& F, const std::string& A) { return dump(lift_json(F, lift_pipeline(F, additive(F, A)))); });
  m.def("linear_dim", [](const Field& F, const std::string& A) {
    return dump(linear_dim_json(F, linear_dim_w(F, additive(F, A))));
  });
  m.def("census", [](const Field& F, unsigned jobs) {
    OracleOptions o;
    o.jobs = jobs;
    return dump(census_json(F, census_subfield_valued(F, o)));
  }, py::arg("field"), py::arg("jobs") = 1);
  m.def("theorems", [](const Field& F) { return dump(form_check_json(F, verify_low_degree_forms(F))); });
}
