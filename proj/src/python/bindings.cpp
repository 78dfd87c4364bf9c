#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "freeatom/algebra_io.hpp"
#include "freeatom/cli.hpp"
#include "freeatom/fixtures.hpp"
#include "freeatom/report.hpp"

namespace py = pybind11;
using namespace freeatom;

namespace {

  ElementId element(FreeAlgebra const& fa, std::string const& text) {
    return element_of_term(fa, parse_term(text, fa.signature(), fa.variables()));
  }

  PreorderSpec order(FreeAlgebra const& fa, std::string const& lhs, std::string const& rhs) {
    return PreorderSpec::parse(lhs, rhs, fa.signature());
  }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Free algebras of discriminator varieties and cover-term synthesis";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);
  py::register_exception<SwitchingTermError>(m, "SwitchingTermError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);

  py::class_<FiniteAlgebra>(m, "FiniteAlgebra")
      .def_property_readonly("name", &FiniteAlgebra::name)
      .def_property_readonly("size", &FiniteAlgebra::size)
      .def_property_readonly("symbols",
                             [](FiniteAlgebra const& a) {
                               std::vector<std::pair<std::string, std::size_t>> out;
                               for (auto const& s : a.signature().symbols()) {
                                 out.emplace_back(s.name, s.arity);
                               }
                               return out;
                             })
      .def("table", &FiniteAlgebra::table, py::arg("symbol"))
      .def("to_text", [](FiniteAlgebra const& a) { return write_algebra(a); });

  m.def("load_algebras", &load_algebras, py::arg("text"),
        "Parse and validate the algebras in a text buffer.");

  py::class_<VarietyPresentation>(m, "Presentation")
      .def_property_readonly("generators", &VarietyPresentation::generators);

  m.def("load_presentation",
        [](std::vector<std::filesystem::path> const& files, std::string const& sw) {
          return load_presentation(files, sw);
        },
        py::arg("files"), py::arg("switch"));
  m.def("default_fixture_dir", [] { return default_fixture_dir(); });
  m.def("fixture_presentation",
        [](std::string const& name, std::filesystem::path const& dir) {
          return load_fixture(name, dir).presentation();
        },
        py::arg("name"), py::arg("directory"));
  m.def("fixture_names",
        [](std::filesystem::path const& dir) {
          std::vector<std::string> out;
          for (auto const& f : load_manifest(dir)) {
            out.push_back(f.name);
          }
          return out;
        },
        py::arg("directory"));

  py::class_<FreeAlgebra>(m, "FreeAlgebra")
      .def_property_readonly("size", &FreeAlgebra::size)
      .def_property_readonly("layers", &FreeAlgebra::layers)
      .def_property_readonly("variables",
                             [](FreeAlgebra const& fa) { return fa.variables().names(); })
      .def("__len__", &FreeAlgebra::size)
      .def("values",
           [](FreeAlgebra const& fa, ElementId e) {
             auto const v = fa.values(e);
             return std::vector<Element>(v.begin(), v.end());
           },
           py::arg("element"))
      .def("witness",
           [](FreeAlgebra const& fa, ElementId e) { return term_text(fa, fa.witness(e)); },
           py::arg("element"))
      .def("element", &element, py::arg("term"))
      .def("dump_json",
           [](FreeAlgebra const& fa, bool elements) {
             return free_algebra_json(fa, elements).dump();
           },
           py::arg("elements") = false);

  m.def("build_free_algebra",
        [](VarietyPresentation const& vp, std::size_t generators, std::size_t cap) {
          return build_free_algebra(vp, generators, {cap});
        },
        py::arg("presentation"), py::arg("generators"),
        py::arg("cap") = FreeAlgebraOptions{}.element_cap);

  m.def("relation",
        [](FreeAlgebra const& fa, std::string const& lhs, std::string const& rhs) {
          auto const rel = relation_on(order(fa, lhs, rhs), fa);
          std::vector<std::vector<bool>> out(rel.size(), std::vector<bool>(rel.size()));
          for (std::size_t a = 0; a < rel.size(); ++a) {
            for (std::size_t b = 0; b < rel.size(); ++b) {
              out[a][b] = rel(a, b);
            }
          }
          return out;
        },
        py::arg("free_algebra"), py::arg("lhs"), py::arg("rhs"));

  m.def("find_cover_json",
        [](FreeAlgebra const& fa, std::string const& lhs, std::string const& rhs,
           std::string const& alpha, std::string const& beta) {
          auto const cert =
              synthesize_cover(fa, order(fa, lhs, rhs), element(fa, alpha), element(fa, beta));
          return certificate_json(cert, fa).dump();
        },
        py::arg("free_algebra"), py::arg("lhs"), py::arg("rhs"), py::arg("alpha"),
        py::arg("beta"));

  m.def("atomic_check_json",
        [](FreeAlgebra const& fa, std::string const& lhs, std::string const& rhs,
           bool oracle, bool synthesis) {
          auto const r = run_atomic_check(fa, order(fa, lhs, rhs), oracle, synthesis);
          return atomic_check_json(r, fa).dump();
        },
        py::arg("free_algebra"), py::arg("lhs"), py::arg("rhs"), py::arg("oracle") = true,
        py::arg("synthesis") = true);

  m.def("run_cli",
        [](std::vector<std::string> args) {
          std::ostringstream out;
          std::ostringstream err;
          int const          rc = run_cli(std::move(args), out, err);
          return py::make_tuple(rc, out.str(), err.str());
        },
        py::arg("args"), "Run a CLI command; returns (exit code, stdout, stderr).");
}
