#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "orlicz/cli/commands.hpp"
#include "orlicz/cli/config.hpp"
#include "orlicz/conjugation.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/gallery.hpp"
#include "orlicz/inversion.hpp"

namespace py = pybind11;
using namespace orlicz;

namespace {

cli::RunConfig parse_text(const std::string& text) {
  std::istringstream in(text);
  return cli::parse_config(in, "<string>");
}

/// Runs one CLI command on config text; returns (exit code, log).
std::pair<int, std::string> run(const std::string& command, const std::string& text, const std::string& out_dir) {
  std::ostringstream log;
  int code = cli::ExitCode::usage;
  try {
    const auto config = parse_text(text);
    if (command == "check") {
      code = cli::run_check(config, out_dir, log);
    } else if (command == "suite") {
      code = cli::run_suite(config, out_dir, log);
    } else if (command == "density") {
      code = cli::run_density(config, out_dir, log);
    } else {
      throw UsageError("unknown command '" + command + "'");
    }
  } catch (const UsageError& e) {
    log << "error: " << e.what() << '\n';
    code = cli::ExitCode::usage;
  }
  return {code, log.str()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Weak Phi-functions: inverses, conjugates and the A0/A1/A2 checks";
  m.attr("__version__") = ORLICZ_VERSION;

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<UnboundedError>(m, "UnboundedError", PyExc_ArithmeticError);

  py::class_<PhiFamily>(m, "Family")
      .def_property_readonly("name", &PhiFamily::name)
      .def_property_readonly("strong", [](const PhiFamily& f) { return f.strength() == Strength::strong; })
      .def_property_readonly("ainc_constant", &PhiFamily::ainc_constant)
      .def_property_readonly("dimension", [](const PhiFamily& f) { return f.domain().dimension(); })
      .def(
          "__call__",
          [](const PhiFamily& f, std::vector<double> x, double t) { return f.evaluate(Point(std::move(x)), t).value(); },
          py::arg("x"), py::arg("t"))
      .def(
          "left_inverse",
          [](const PhiFamily& f, std::vector<double> x, double tau) { return left_inverse(f, Point(std::move(x)), tau); },
          py::arg("x"), py::arg("tau"))
      .def(
          "conjugate",
          [](const PhiFamily& f, std::vector<double> x, double t) { return conjugate(f, Point(std::move(x)), t).value(); },
          py::arg("x"), py::arg("t"))
      .def("__repr__", [](const PhiFamily& f) { return "<Family " + f.name() + ">"; });

  m.def(
      "family",
      [](const std::string& text) {
        const auto config = parse_text(text);
        return cli::build_family(config, cli::build_domain(config));
      },
      py::arg("config"), "Family and domain from config text (family = ..., family.p = ..., domain = ...).");

  m.def("gallery", [] {
    std::vector<std::string> names;
    for (const auto& e : gallery::entries()) names.push_back(e.name);
    return names;
  });

  m.def("run", &run, py::arg("command"), py::arg("config"), py::arg("out_dir") = "",
        py::call_guard<py::gil_scoped_release>());
}
