#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "arithdyn/cli.hpp"
#include "arithdyn/decision.hpp"
#include "arithdyn/heights.hpp"
#include "arithdyn/parse.hpp"
#include "arithdyn/serialize.hpp"
#include "arithdyn/symmetry.hpp"

namespace py = pybind11;
using namespace arithdyn;

namespace {

// Results cross the boundary as JSON text; the Python side decodes it.
std::string height_json(const std::string& map, const std::string& point, double tol) {
  return to_json(canonical_height(parse_polynomial(map), parse_rational(point), tol)).dump();
}

std::string orbit_json(const std::string& map, const std::string& point, std::uint64_t budget, std::uint64_t n) {
  return to_json(orbit_point(parse_polynomial(map, n), parse_constant(point, n), budget)).dump();
}

std::string symmetry_json(const std::string& map, std::uint64_t n) {
  return to_json(symmetry_group(parse_polynomial(map, n))).dump();
}

std::string same_julia_json(const std::string& f, const std::string& g, std::uint64_t n) {
  return to_json(same_julia(parse_polynomial(f, n), parse_polynomial(g, n))).dump();
}

std::string line_json(const std::string& maps, const std::string& line, std::uint64_t n, std::uint64_t budget) {
  const SplitPolynomialMap phi(parse_map_list(maps, n));
  return to_json(line_preperiodic(phi, parse_line(line, phi.dimension(), n), budget)).dump();
}

std::string scan_csv(const std::string& maps, const std::string& line, double height_bound, double tol) {
  const SplitPolynomialMap phi(parse_map_list(maps));
  std::ostringstream out;
  write_scan_csv(out, bogomolov_scan(phi, parse_line(line, phi.dimension()), height_bound, tol));
  return out.str();
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact arithmetic dynamics: heights, Julia symmetries, preperiodic lines";

  py::register_exception<HeightBudgetExceeded>(m, "HeightBudgetExceeded");

  m.def("weil_height", [](const std::string& x) { return weil_height(parse_rational(x)); }, py::arg("x"));
  m.def("height_json", &height_json, py::arg("map"), py::arg("point"), py::arg("tol") = 1e-9);
  m.def("orbit_json", &orbit_json, py::arg("map"), py::arg("point"), py::arg("budget") = 1000,
        py::arg("conductor") = 1);
  m.def("symmetry_json", &symmetry_json, py::arg("map"), py::arg("conductor") = 1);
  m.def("same_julia_json", &same_julia_json, py::arg("map1"), py::arg("map2"), py::arg("conductor") = 1);
  m.def("line_json", &line_json, py::arg("maps"), py::arg("line"), py::arg("conductor") = 1,
        py::arg("budget") = 1000);
  m.def("scan_csv", &scan_csv, py::arg("maps"), py::arg("line"), py::arg("height_bound"), py::arg("tol") = 1e-9);
  m.def("exponent_sequence", [](std::uint64_t d, std::uint64_t r) {
    const auto e = exponent_sequence(d, r);
    return py::make_tuple(e.preperiod, e.period, e.residues);
  }, py::arg("d"), py::arg("r"));
  m.def("run", &run_cli, py::arg("args"), "Runs a CLI command line; returns (exit_code, stdout, stderr).");
}
