#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "brst/cli.hpp"
#include "brst/errors.hpp"
#include "brst/liealg.hpp"

namespace py = pybind11;

namespace {

py::tuple run_cli(const std::vector<std::string>& args) {
  std::vector<std::string> owned{"brst"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : owned) argv.push_back(s.data());
  std::ostringstream out, err;
  int code = 0;
  {
    py::gil_scoped_release release;
    code = brst::cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "BRST and Lie algebra cohomology engine";

  py::class_<brst::LieAlgebra>(m, "LieAlgebra")
      .def_static("builtin", &brst::builtin_algebra, py::arg("name"))
      .def_static("from_json", [](const std::string& text) { return brst::LieAlgebra::from_json(nlohmann::json::parse(text)); })
      .def_property_readonly("name", &brst::LieAlgebra::name)
      .def_property_readonly("dim", &brst::LieAlgebra::dim)
      .def_property_readonly("basis", &brst::LieAlgebra::basis)
      .def("f", [](const brst::LieAlgebra& g, std::size_t a, std::size_t b, std::size_t c) {
        if (a >= g.dim() || b >= g.dim() || c >= g.dim()) throw py::index_error("structure index out of range");
        return brst::to_string(g.f(a, b, c));
      })
      .def("to_json", [](const brst::LieAlgebra& g) { return g.to_json().dump(); })
      .def("is_valid", [](const brst::LieAlgebra& g) { return brst::validate(g).ok(); })
      .def("killing_rank", [](const brst::LieAlgebra& g) { return brst::killing_form(g).rank(); })
      .def("__repr__", [](const brst::LieAlgebra& g) { return "<LieAlgebra " + g.name() + " dim " + std::to_string(g.dim()) + ">"; });

  m.def("builtin_names", &brst::builtin_names);
  m.def("run", &run_cli, py::arg("args"), "Runs the command line with the given arguments; returns (code, stdout, stderr).");

  // translators run newest first, so the base class goes in first
  auto base = py::register_exception<brst::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<brst::ParseError>(m, "ParseError", base.ptr());
  py::register_exception<brst::ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<brst::ResourceError>(m, "ResourceError", base.ptr());

#ifdef BRST_VERSION
  m.attr("__version__") = BRST_VERSION;
#endif
}
