#include "arithdyn/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <regex>
#include <sstream>

#include "arithdyn/decision.hpp"
#include "arithdyn/heights.hpp"
#include "arithdyn/julia.hpp"
#include "arithdyn/parse.hpp"
#include "arithdyn/serialize.hpp"
#include "arithdyn/symmetry.hpp"

namespace arithdyn {

namespace {

struct Options {
  std::string map, map2, maps, point, line, window = "-2,2,-2,2", out, height_bound;
  std::uint64_t conductor = 1, budget = 1000;
  double tol = 1e-9;
  double scan_tol = 1e-6;
  unsigned res = 256, max_iter = 256;
};

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file '" + path + "'");
  return f;
}

RenderSpec parse_window(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used == 0 || used != item.size()) throw std::invalid_argument("bad window entry '" + item + "'");
    v.push_back(x);
  }
  if (v.size() != 4) throw std::invalid_argument("window must be xmin,xmax,ymin,ymax");
  RenderSpec spec;
  spec.xmin = v[0];
  spec.xmax = v[1];
  spec.ymin = v[2];
  spec.ymax = v[3];
  return spec;
}

int verdict_code(const Verdict& v) { return std::holds_alternative<Unknown>(v) ? kExitUnknown : kExitDefinite; }

int cmd_height(const Options& o, std::ostream& out) {
  const Polynomial f = parse_polynomial(o.map);
  const Rational x = parse_rational(o.point);
  if (!(o.tol > 0)) throw std::invalid_argument("--tol must be positive");
  try {
    emit(out, to_json(canonical_height(f, x, o.tol)));
    return kExitDefinite;
  } catch (const HeightBudgetExceeded& e) {
    Json j;
    j["verdict"] = "Unknown";
    j["reason"] = e.what();
    emit(out, j);
    return kExitUnknown;
  }
}

int cmd_point_orbit(const Options& o, std::ostream& out) {
  const Polynomial f = parse_polynomial(o.map, o.conductor);
  const CycloNumber x = parse_constant(o.point, o.conductor);
  const Verdict v = orbit_point(f, x, o.budget);
  emit(out, to_json(v));
  return verdict_code(v);
}

int cmd_symmetry(const Options& o, std::ostream& out) {
  emit(out, to_json(symmetry_group(parse_polynomial(o.map, o.conductor))));
  return kExitDefinite;
}

int cmd_same_julia(const Options& o, std::ostream& out) {
  const Polynomial f = parse_polynomial(o.map, o.conductor);
  const Polynomial g = parse_polynomial(o.map2, o.conductor);
  if (f.degree() < 2 || g.degree() != f.degree()) throw std::invalid_argument("maps must share one degree >= 2");
  emit(out, to_json(same_julia(f, g)));
  return kExitDefinite;
}

int cmd_line_decide(const Options& o, std::ostream& out) {
  const SplitPolynomialMap phi(parse_map_list(o.maps, o.conductor));
  const Line line = parse_line(o.line, phi.dimension(), o.conductor);
  const Verdict v = line_preperiodic(phi, line, o.budget);
  emit(out, to_json(v));
  return verdict_code(v);
}

int cmd_scan(const Options& o, std::ostream& out) {
  const SplitPolynomialMap phi(parse_map_list(o.maps));
  const Line line = parse_line(o.line, phi.dimension());
  const double bound = parse_height_bound(o.height_bound);
  if (!(bound > 0)) throw std::invalid_argument("--height-bound must be positive");
  if (!(o.scan_tol > 0)) throw std::invalid_argument("--tol must be positive");
  std::ofstream file;
  if (!o.out.empty()) file = open_out(o.out);
  const ScanReport report = bogomolov_scan(phi, line, bound, o.scan_tol);
  Json j;
  j["parameters"] = report.rows.size();
  Json zeros = Json::array();
  for (std::size_t i : report.zero_candidates) zeros.push_back(to_string(report.rows[i].t));
  j["zero_candidates"] = std::move(zeros);
  j["gap"] = report.gap ? json_number(*report.gap) : Json(nullptr);
  j["gap_t"] = report.gap_row ? Json(to_string(report.rows[*report.gap_row].t)) : Json(nullptr);
  std::size_t errors = 0;
  for (const auto& row : report.rows) errors += row.flag.rfind("error", 0) == 0;
  j["errors"] = errors;
  if (!o.out.empty()) {
    write_scan_csv(file, report);
    j["csv"] = o.out;
    emit(out, j);
  } else {
    write_scan_csv(out, report);
  }
  return kExitDefinite;
}

int cmd_julia(const Options& o, std::ostream& out) {
  const Polynomial f = parse_polynomial(o.map, o.conductor);
  if (f.degree() < 2) throw std::invalid_argument("julia needs degree >= 2");
  RenderSpec spec = parse_window(o.window);
  spec.resolution = o.res;
  spec.max_iter = o.max_iter;
  spec.escape_radius = escape_radius(f);
  spec.validate();
  std::ofstream file = open_out(o.out);
  const JuliaImage image = julia_render(f, 1, spec);
  const bool csv = o.out.size() >= 4 && o.out.compare(o.out.size() - 4, 4, ".csv") == 0;
  if (csv) {
    write_green_csv(file, image);
  } else {
    write_ppm(file, image);
  }
  Json j;
  j["width"] = image.width;
  j["height"] = image.height;
  j["max_iter"] = image.max_iter;
  j["escape_radius"] = json_number(spec.escape_radius);
  j["format"] = csv ? "csv" : "ppm";
  j["out"] = o.out;
  emit(out, j);
  return kExitDefinite;
}

}  // namespace

double parse_height_bound(const std::string& text) {
  static const std::regex log_form(R"(\s*log\(\s*([0-9]+)\s*\)\s*)");
  std::smatch m;
  if (std::regex_match(text, m, log_form)) {
    const double n = std::stod(m[1].str());
    if (n < 1) throw std::invalid_argument("log argument must be >= 1");
    return std::log(n);
  }
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad height bound '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument("bad height bound '" + text + "'");
  return v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact arithmetic dynamics: heights, Julia symmetries, preperiodic lines", "arithdyn"};
  app.require_subcommand(1);
  auto positive = CLI::PositiveNumber;

  auto* height = app.add_subcommand("height", "Canonical height of a rational point");
  height->add_option("--map", o.map, "Polynomial over Q")->required();
  height->add_option("--point", o.point, "Rational point")->required();
  height->add_option("--tol", o.tol, "Absolute tolerance")->capture_default_str();

  auto* orbit = app.add_subcommand("point-orbit", "Preperiodicity of a point");
  orbit->add_option("--map", o.map)->required();
  orbit->add_option("--point", o.point)->required();
  orbit->add_option("--budget", o.budget)->capture_default_str();
  orbit->add_option("--conductor", o.conductor)->check(positive)->capture_default_str();

  auto* sym = app.add_subcommand("symmetry", "Rotational symmetry group of the Julia set");
  sym->add_option("--map", o.map)->required();
  sym->add_option("--conductor", o.conductor)->check(positive)->capture_default_str();

  auto* same = app.add_subcommand("same-julia", "Whether map2 = tau o map1 with tau a Julia symmetry of map1");
  same->add_option("--map1", o.map)->required();
  same->add_option("--map2", o.map2)->required();
  same->add_option("--conductor", o.conductor)->check(positive)->capture_default_str();

  auto* decide = app.add_subcommand("line-decide", "Preperiodicity of a line under a split map");
  decide->add_option("--maps", o.maps, "Maps separated by ';'")->required();
  decide->add_option("--line", o.line, "(p1,...,pm) + t*(v1,...,vm)")->required();
  decide->add_option("--conductor", o.conductor)->check(positive)->capture_default_str();
  decide->add_option("--budget", o.budget)->capture_default_str();

  auto* scan = app.add_subcommand("scan", "Heights along a rational line");
  scan->add_option("--maps", o.maps)->required();
  scan->add_option("--line", o.line)->required();
  scan->add_option("--height-bound", o.height_bound, "Decimal or log(N)")->required();
  scan->add_option("--tol", o.scan_tol)->capture_default_str();
  scan->add_option("--out", o.out, "CSV path; CSV goes to stdout when omitted");

  auto* julia = app.add_subcommand("julia", "Escape-time image (P5) or Green function CSV (*.csv)");
  julia->add_option("--map", o.map)->required();
  julia->add_option("--window", o.window, "xmin,xmax,ymin,ymax")->capture_default_str();
  julia->add_option("--res", o.res)->check(positive)->capture_default_str();
  julia->add_option("--max-iter", o.max_iter)->check(positive)->capture_default_str();
  julia->add_option("--out", o.out)->required();
  julia->add_option("--conductor", o.conductor)->check(positive)->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kExitDefinite;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    if (height->parsed()) return cmd_height(o, out);
    if (orbit->parsed()) return cmd_point_orbit(o, out);
    if (sym->parsed()) return cmd_symmetry(o, out);
    if (same->parsed()) return cmd_same_julia(o, out);
    if (decide->parsed()) return cmd_line_decide(o, out);
    if (scan->parsed()) return cmd_scan(o, out);
    if (julia->parsed()) return cmd_julia(o, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << " (at position " << e.position() << ")\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const HeightBudgetExceeded& e) {
    err << "unknown: " << e.what() << "\n";
    return kExitUnknown;
  }
  err << "error: no subcommand\n";
  return kExitInputError;
}

}  // namespace arithdyn
