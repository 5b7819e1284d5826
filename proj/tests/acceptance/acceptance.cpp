// Acceptance checks: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "../corpus.hpp"
#include "arithdyn/decision.hpp"
#include "arithdyn/heights.hpp"
#include "arithdyn/julia.hpp"
#include "arithdyn/parse.hpp"
#include "arithdyn/serialize.hpp"
#include "arithdyn/symmetry.hpp"

using namespace arithdyn;

namespace {

// Pinned tolerances.
constexpr double kPowerMapTol = 1e-9;
constexpr double kFunctionalTol = 2e-9;
constexpr double kLog2Tol = 1e-9;
constexpr double kScanTol = 1e-9;
constexpr double kGapFixtureTol = 1e-8;
constexpr double kGapFloor = 0.1;
constexpr double kDiskFraction = 0.99;
constexpr double kMirrorDisagreement = 0.01;

Polynomial P(const char* s, std::uint64_t n = 1) { return parse_polynomial(s, n); }
SplitPolynomialMap Phi(const char* s, std::uint64_t n = 1) { return SplitPolynomialMap(parse_map_list(s, n)); }
Line L(const char* s, std::uint64_t n = 1) { return parse_line(s, 0, n); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& what) {
    if (pass) detail << what;
    pass = false;
  }
};

Rational random_rational(std::mt19937& rng, int bound) {
  std::uniform_int_distribution<int> num(-bound, bound), den(1, bound);
  return Rational(num(rng)) / den(rng);
}

std::vector<Rational> rationals_up_to(long H) {
  std::vector<Rational> out;
  for (long q = 1; q <= H; ++q) {
    for (long p = -H; p <= H; ++p) {
      if (std::gcd(p, q) == 1) out.push_back(make_rational(p, q));
    }
  }
  return out;
}

bool brute_force_preperiodic(const Polynomial& f, CycloNumber x, unsigned steps) {
  std::map<CycloNumber, unsigned> seen;
  for (unsigned n = 0; n <= steps; ++n) {
    if (seen.count(x)) return true;
    seen.emplace(x, n);
    if (x.bit_size() > 4096) return false;
    x = f(x);
  }
  return false;
}

// 1. h-hat of z^d equals the Weil height.
void criterion_power_map(Outcome& o) {
  std::size_t count = 0;
  for (int d : {2, 3, 5}) {
    const Polynomial f = Polynomial::monomial(CycloNumber(1, 1), d);
    for (const auto& x : rationals_up_to(30)) {
      const HeightResult h = canonical_height(f, x, kPowerMapTol / 10);
      ++count;
      if (std::abs(h.value - weil_height(x)) > kPowerMapTol) {
        o.fail("z^" + std::to_string(d) + " at " + to_string(x));
      }
    }
  }
  o.detail << (o.pass ? std::to_string(count) + " points" : "");
}

// 2. h(f(x)) = d h(x) and invariance under affine conjugation.
void criterion_functional(Outcome& o) {
  const char* maps[] = {"z^2 - 1", "z^2 + 1/4", "2*z^3 - z + 1/3", "z^2 - 3/4", "1/2*z^3 + 1", "z^4 - 2*z", "-3*z^2 + 5/2"};
  std::mt19937 rng(2718);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  std::size_t count = 0;
  double worst = 0;
  for (const char* text : maps) {
    const Polynomial f = P(text);
    const int d = f.degree();
    for (int trial = 0; trial < 15; ++trial) {
      const Rational x = random_rational(rng, 12);
      const Rational fx = *f(CycloNumber(1, x)).as_rational();
      const double tol = kFunctionalTol / (4 * d);
      const double lhs = canonical_height(f, fx, tol).value;
      const double rhs = d * canonical_height(f, x, tol).value;
      worst = std::max(worst, std::abs(lhs - rhs));
      if (std::abs(lhs - rhs) > kFunctionalTol) o.fail(std::string("functional equation for ") + text);

      int a = 0;
      while (a == 0) a = num(rng);
      const AffineLinearMap s(CycloNumber(1, Rational(a) / den(rng)), CycloNumber(1, Rational(num(rng)) / den(rng)));
      const Polynomial g = affine_conjugate(f, s);
      const Rational sx = *s(CycloNumber(1, x)).as_rational();
      const double conj = canonical_height(g, sx, kFunctionalTol / 4).value;
      const double orig = canonical_height(f, x, kFunctionalTol / 4).value;
      worst = std::max(worst, std::abs(conj - orig));
      if (std::abs(conj - orig) > kFunctionalTol) o.fail(std::string("conjugation invariance for ") + text);
      count += 2;
    }
  }
  if (o.pass) o.detail << count << " checks, worst deviation " << format_double(worst);
}

// 3. Local decomposition vs the naive limit within C_f / (d^n (d - 1)).
void criterion_oracle(Outcome& o) {
  struct Pair {
    const char* f;
    const char* x;
  };
  const Pair pairs[] = {{"z^2 - 1", "1/2"},     {"z^2 - 1", "3"},         {"z^2 + 1/4", "1/3"},   {"z^2 + 1/4", "2"},
                        {"z^2 - 2", "1/5"},     {"z^2 + 1", "0"},         {"z^2 + 1", "-2/3"},    {"2*z^2 - 1", "1/2"},
                        {"z^3 - z", "2/3"},     {"z^3 + 1/2", "1"},       {"1/3*z^3 + z", "3"},   {"z^2 - 3/4", "5/7"},
                        {"z^3 - 10*z^2", "1"},  {"100*z^3", "1"},         {"z^2/2 + 1", "4/3"},   {"z^4 - 1", "1/2"},
                        {"-z^2 + 1/7", "7/2"},  {"z^2 + z", "1/3"},       {"5*z^2 - 1/5", "1"},   {"z^3 - 2*z + 1", "-1/2"}};
  std::size_t checks = 0;
  for (const auto& pr : pairs) {
    const Polynomial f = P(pr.f);
    const Rational x = parse_rational(pr.x);
    const int d = f.degree();
    const HeightResult h = canonical_height(f, x, 1e-12);
    const double C = height_constants(f).total;
    for (unsigned n = 0; n <= 8; ++n) {
      const double naive = naive_limit_height(f, x, n);
      const double bound = C / (std::pow(d, n) * (d - 1)) + h.error_radius + 1e-12;
      ++checks;
      if (std::abs(h.value - naive) > bound) {
        o.fail(std::string(pr.f) + " at " + pr.x + ", n = " + std::to_string(n));
      }
    }
  }
  const HeightResult h = canonical_height(P("z^2 - 1"), parse_rational("1/2"), kLog2Tol);
  if (std::abs(h.value - std::log(2.0)) > kLog2Tol) o.fail("z^2 - 1 at 1/2 is not log 2");
  if (o.pass) o.detail << checks << " bounds, h(z^2-1, 1/2) = " << format_double(h.value);
}

// 4. gcd rule vs exhaustive commutation checks.
void criterion_symmetry(Outcome& o) {
  std::size_t n_polys = 0;
  for (const auto& s : arithdyn_test::kSymmetryCorpus) {
    const Polynomial f = P(s.text, s.conductor);
    const SymmetryGroup g = symmetry_group(f);
    ++n_polys;
    for (std::uint64_t n = 1; n <= 12; ++n) {
      const bool expected = g.infinite() || *g.order % n == 0;
      if (arithdyn_test::rotation_commutes(f, n) != expected) {
        o.fail(std::string(s.text) + " at order " + std::to_string(n));
      }
    }
  }
  if (n_polys < 20) o.fail("corpus too small");
  const SymmetryGroup g = symmetry_group(P("z^2 + 2*z"));
  if (!g.infinite() || g.center != CycloNumber(1, -1)) o.fail("z^2 + 2z should be infinite about -1");
  if (o.pass) o.detail << n_polys << " polynomials x 12 orders";
}

// 5. Line-decision golden set, with replay.
void criterion_lines(Outcome& o) {
  struct Golden {
    const char* maps;
    const char* line;
    std::uint64_t conductor;
    std::function<bool(const Verdict&)> ok;
  };
  const Golden golden[] = {
      {"z^2; z^2", "(0,0) + t*(1,1)", 1,
       [](const Verdict& v) { return std::holds_alternative<Preperiodic>(v) && std::get<Preperiodic>(v) == Preperiodic{0, 1}; }},
      {"z^3; z^3", "(0,0) + t*(1,w)", 4,
       [](const Verdict& v) { return std::holds_alternative<Preperiodic>(v) && std::get<Preperiodic>(v) == Preperiodic{0, 2}; }},
      {"z^2; z^2 + 1", "(0,0) + t*(1,1)", 1,
       [](const Verdict& v) {
         return std::holds_alternative<NotPreperiodic>(v) &&
                std::holds_alternative<CommutationFails>(std::get<NotPreperiodic>(v).witness);
       }},
      {"z^2 - 1; z^2; z^2", "(0,0,0) + t*(0,1,1)", 1,
       [](const Verdict& v) { return std::holds_alternative<Preperiodic>(v); }},
  };
  for (const auto& g : golden) {
    const SplitPolynomialMap phi = Phi(g.maps, g.conductor);
    const Line line = L(g.line, g.conductor);
    const Verdict v = line_preperiodic(phi, line);
    if (!g.ok(v)) {
      o.fail(std::string(g.maps) + " on " + g.line + " gave " + to_json(v).dump());
      continue;
    }
    if (const auto* pre = std::get_if<Preperiodic>(&v)) {
      if (!replay_certificate(phi, line, *pre)) o.fail(std::string("replay failed for ") + g.maps);
    }
  }
  if (o.pass) o.detail << "4 golden verdicts, certificates replayed";
}

// 6. Escape witnesses re-verify; preperiodic rationals of z^2 - 1 up to
// height log 10 are exactly {0, 1, -1}.
void criterion_escape(Outcome& o) {
  std::mt19937 rng(161803);
  std::size_t escapes = 0;
  for (const char* text : {"z^2 - 1", "z^2 + 1/4"}) {
    const Polynomial f = P(text);
    int found = 0;
    while (found < 100) {
      const CycloNumber x(1, random_rational(rng, 50));
      if (brute_force_preperiodic(f, x, 64)) continue;
      ++found;
      const Verdict v = orbit_point(f, x);
      const auto* np = std::get_if<NotPreperiodic>(&v);
      if (!np) {
        o.fail(std::string(text) + " at " + to_string(x) + " not NotPreperiodic");
        continue;
      }
      const EscapeWitness w = std::holds_alternative<ArchimedeanEscape>(np->witness)
                                  ? EscapeWitness{std::get<ArchimedeanEscape>(np->witness)}
                                  : EscapeWitness{std::get<ValuationEscape>(np->witness)};
      if (!verify_escape(f, w)) o.fail(std::string("witness does not verify for ") + text);
      ++escapes;
    }
  }
  const Polynomial f = P("z^2 - 1");
  std::vector<std::string> brute, decided;
  for (const auto& x : rationals_up_to(10)) {
    const CycloNumber c(1, x);
    if (brute_force_preperiodic(f, c, 64)) brute.push_back(to_string(x));
    if (std::holds_alternative<Preperiodic>(orbit_point(f, c))) decided.push_back(to_string(x));
  }
  const std::vector<std::string> expected{"-1", "0", "1"};
  if (brute != expected) o.fail("brute-force sweep disagrees with {0, 1, -1}");
  if (decided != expected) o.fail("orbit_point sweep disagrees with {0, 1, -1}");
  if (o.pass) o.detail << escapes << " verified escapes, preperiodic sweep {-1, 0, 1}";
}

// 7. Bogomolov gap along the diagonal of (z^2, z^2 + 1).
void criterion_gap(Outcome& o, const std::string& fixture_path) {
  std::map<int, double> fixtures;
  {
    std::ifstream in(fixture_path);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream ss(line);
      std::string n, gap;
      std::getline(ss, n, ',');
      std::getline(ss, gap, ',');
      fixtures[std::stoi(n)] = std::stod(gap);
    }
  }
  const SplitPolynomialMap phi = Phi("z^2; z^2 + 1");
  const Line diag = L("(0,0) + t*(1,1)");
  double previous = INFINITY;
  std::ostringstream values;
  for (int N = 5; N <= 10; ++N) {
    const ScanReport r = bogomolov_scan(phi, diag, std::log(static_cast<double>(N)), kScanTol);
    if (!r.zero_candidates.empty()) o.fail("zero candidates at bound log " + std::to_string(N));
    for (const auto& row : r.rows) {
      if (row.flag.rfind("error", 0) == 0) o.fail("row error at t = " + to_string(row.t));
    }
    if (!r.gap || !(*r.gap > 0)) {
      o.fail("no positive gap at bound log " + std::to_string(N));
      continue;
    }
    const double gap = *r.gap;
    values << (N > 5 ? ", " : "") << "log " << N << ": " << format_double(gap);
    if (gap > previous) o.fail("gap increased at log " + std::to_string(N));
    previous = gap;
    if (gap < kGapFloor) o.fail("gap below floor at log " + std::to_string(N));
    auto it = fixtures.find(N);
    if (it == fixtures.end()) {
      o.fail("missing fixture for log " + std::to_string(N));
    } else if (std::abs(it->second - gap) > kGapFixtureTol) {
      o.fail("gap at log " + std::to_string(N) + " = " + format_double(gap) + " differs from fixture");
    }
    // Independent check of the minimizing row: h(t) + naive limit for z^2 + 1.
    const Rational t = r.rows[*r.gap_row].t;
    const Polynomial g = P("z^2 + 1");
    const unsigned n = 8;
    const double naive = weil_height(t) + naive_limit_height(g, t, n);
    const double bound = height_constants(g).total / std::pow(2.0, n) + r.rows[*r.gap_row].error;
    if (std::abs(naive - gap) > bound) o.fail("gap row disagrees with the naive limit at log " + std::to_string(N));
  }
  if (o.pass) o.detail << values.str();
}

// 8. Renderer: z^2 fills the unit disk; z^2 - 1 is symmetric under z -> -z.
void criterion_render(Outcome& o) {
  RenderSpec spec;
  spec.resolution = 256;
  spec.max_iter = 256;
  spec.escape_radius = escape_radius(P("z^2"));
  const JuliaImage disk = julia_render(P("z^2"), 1, spec);
  std::size_t inside = 0, hit = 0;
  for (std::size_t i = 0; i < disk.iterations.size(); ++i) {
    if (std::hypot(disk.re[i], disk.im[i]) < 0.9) {
      ++inside;
      hit += disk.iterations[i] == disk.max_iter;
    }
  }
  const double frac = inside ? static_cast<double>(hit) / inside : 0;
  if (frac < kDiskFraction) o.fail("only " + format_double(frac) + " of the disk reaches max_iter");

  spec.escape_radius = escape_radius(P("z^2 - 1"));
  const JuliaImage basilica = julia_render(P("z^2 - 1"), 1, spec);
  std::size_t differ = 0;
  for (unsigned row = 0; row < basilica.height; ++row) {
    for (unsigned col = 0; col < basilica.width; ++col) {
      const bool a = basilica.at(col, row) == basilica.max_iter;
      const bool b = basilica.at(basilica.width - 1 - col, basilica.height - 1 - row) == basilica.max_iter;
      differ += a != b;
    }
  }
  const double mismatch = static_cast<double>(differ) / basilica.iterations.size();
  if (mismatch > kMirrorDisagreement) o.fail("z -> -z mismatch " + format_double(mismatch));
  if (o.pass) o.detail << "disk fraction " << format_double(frac) << ", mirror mismatch " << format_double(mismatch);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string fixtures = argc > 1 ? argv[1] : ARITHDYN_GAP_FIXTURES;
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Outcome&)> run;
  };
  const Criterion criteria[] = {
      {1, "power-map identity", criterion_power_map},
      {2, "functional equation and conjugation invariance", criterion_functional},
      {3, "local decomposition vs naive limit", criterion_oracle},
      {4, "symmetry gcd rule vs brute force", criterion_symmetry},
      {5, "line-decision golden set", criterion_lines},
      {6, "escape soundness", criterion_escape},
      {7, "Bogomolov gap scan", [&](Outcome& o) { criterion_gap(o, fixtures); }},
      {8, "renderer sanity", criterion_render},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > 60) o.fail(" (exceeded 60 s)");
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " [" << o.detail.str()
              << "] (" << format_double(std::round(secs * 100) / 100) << " s)" << std::endl;
  }
  return failures;
}
