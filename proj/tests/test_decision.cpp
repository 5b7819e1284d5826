#include <doctest.h>

#include <map>
#include <random>
#include <sstream>

#include "arithdyn/decision.hpp"
#include "arithdyn/parse.hpp"

using namespace arithdyn;

namespace {

Polynomial P(const char* s, std::uint64_t n = 1) { return parse_polynomial(s, n); }
CycloNumber C(const char* s, std::uint64_t n = 1) { return parse_constant(s, n); }
Line L(const char* s, std::uint64_t n = 1) { return parse_line(s, 0, n); }
SplitPolynomialMap Phi(const char* s, std::uint64_t n = 1) { return SplitPolynomialMap(parse_map_list(s, n)); }

template <class T>
T as(const Verdict& v) {
  REQUIRE(std::holds_alternative<T>(v));
  return std::get<T>(v);
}

template <class T>
T witness(const Verdict& v) {
  const Witness w = as<NotPreperiodic>(v).witness;
  REQUIRE(std::holds_alternative<T>(w));
  return std::get<T>(w);
}

// Minimal (N, k) by walking line images directly, or nullopt within `steps`.
std::optional<Preperiodic> brute_force_line_orbit(const SplitPolynomialMap& phi, const Line& line, unsigned steps) {
  std::vector<Line> seen{line};
  for (unsigned n = 1; n <= steps; ++n) {
    auto next = line_image(phi, seen.back());
    if (!next) return std::nullopt;
    for (std::size_t j = 0; j < seen.size(); ++j) {
      if (seen[j] == *next) return Preperiodic{j, n - j};
    }
    seen.push_back(*next);
  }
  return std::nullopt;
}

// Exact iteration with a size cap; a repeat gives (N, k).
std::optional<Preperiodic> brute_force_point_orbit(const Polynomial& f, CycloNumber x, unsigned steps) {
  std::map<CycloNumber, unsigned> seen;
  for (unsigned n = 0; n <= steps; ++n) {
    if (auto it = seen.find(x); it != seen.end()) return Preperiodic{it->second, n - it->second};
    seen.emplace(x, n);
    if (x.bit_size() > 4096) return std::nullopt;
    x = f(x);
  }
  return std::nullopt;
}

Integer pow_int(std::uint64_t d, unsigned k) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), d, k);
  return out;
}

}  // namespace

TEST_CASE("orbit_point: examples") {
  CHECK(as<Preperiodic>(orbit_point(P("z^2 - 1"), C("0"))) == Preperiodic{0, 2});

  const auto arch = witness<ArchimedeanEscape>(orbit_point(P("z^2"), C("2")));
  CHECK(arch.iteration == 0);
  CHECK(arch.radius == doctest::Approx(2.0));

  const auto val = witness<ValuationEscape>(orbit_point(P("z^2 - 1"), C("1/2")));
  CHECK(val.prime == 2);
  CHECK(val.iteration == 0);
  CHECK(val.valuation == -1);
}

TEST_CASE("orbit_point: budget, fields and bad primes") {
  const auto u = as<Unknown>(orbit_point(P("z^2 - 1"), C("0"), 0));
  CHECK(u.budget == 0);
  CHECK(as<Preperiodic>(orbit_point(P("z^2 - 1"), C("0"), 2)) == Preperiodic{0, 2});

  // 0 -> i -> i - 1 -> -i -> i - 1 over Q(i).
  CHECK(as<Preperiodic>(orbit_point(P("z^2 + w", 4), C("0", 4))) == Preperiodic{2, 2});
  CHECK(std::holds_alternative<ArchimedeanEscape>(as<NotPreperiodic>(orbit_point(P("z^2 + w", 4), C("1", 4))).witness));

  // z^3 - 10 z^2 at 10 is fixed at 0 after one step despite |10| being large
  // relative to a naive radius.
  CHECK(as<Preperiodic>(orbit_point(P("z^3 - 10*z^2"), C("10"))) == Preperiodic{1, 1});

  // Bad prime 3: only the leading coefficient is nonzero, so the threshold is
  // the fixed valuation -1.
  const Polynomial f = P("3*z^2");
  CHECK(valuation_escape_threshold(f, 3) == -1);
  const auto w = witness<ValuationEscape>(orbit_point(f, C("1/9")));
  CHECK(w.prime == 3);
  CHECK(verify_escape(f, w));
  CHECK(as<Preperiodic>(orbit_point(f, C("1/3"))) == Preperiodic{0, 1});

  CHECK_THROWS_AS(orbit_point(P("z"), C("0")), std::invalid_argument);
  CHECK_THROWS_AS(orbit_point(P("z^2"), C("w", 4)), ConductorMismatch);
}

TEST_CASE("escape radius") {
  CHECK(escape_radius(P("z^2")) == doctest::Approx(2.0));
  CHECK(escape_radius(P("z^2 - 1")) == doctest::Approx(3.0));
  CHECK(escape_radius(P("100*z^3")) == doctest::Approx(1.0));
  CHECK(escape_radius(P("z^3 - 10*z^2")) == doctest::Approx(12.0));
}

TEST_CASE("pairwise_relation: examples") {
  auto r = pairwise_relation(P("z^2"), P("z^2"), AffineLinearMap(C("-1"), C("0")));
  REQUIRE(std::holds_alternative<Related>(r));
  CHECK(std::get<Related>(r).tau == AffineLinearMap(C("-1"), C("0")));
  CHECK(std::get<Related>(r).order == std::optional<std::uint64_t>(2));

  r = pairwise_relation(P("z^2"), P("z^2 + 1"), AffineLinearMap::identity());
  REQUIRE(std::holds_alternative<Unrelated>(r));
  CHECK(std::get<Unrelated>(r).reason == SameJuliaFailure::CommutationFails);

  r = pairwise_relation(P("z^2"), P("z^2 + z"), AffineLinearMap::identity());
  REQUIRE(std::holds_alternative<Unrelated>(r));
  CHECK(std::get<Unrelated>(r).reason == SameJuliaFailure::NoLinearFactor);
}

TEST_CASE("exponent_sequence: examples") {
  auto e = exponent_sequence(2, 2);
  CHECK(e.preperiod == 0);
  CHECK(e.period == 1);
  CHECK(e.residues == std::vector<std::uint64_t>{1});
  e = exponent_sequence(3, 2);
  CHECK(e.period == 2);
  CHECK(e.residues == std::vector<std::uint64_t>{1, 0});
  e = exponent_sequence(2, 3);
  CHECK(e.preperiod == 0);
  CHECK(e.period == 2);
  CHECK(e.residues == std::vector<std::uint64_t>{1, 0});
  e = exponent_sequence(2, 4);  // 1, 3, 7 = 3, ...
  CHECK(e.preperiod == 1);
  CHECK(e.period == 1);
}

TEST_CASE("property: exponent_sequence matches (d^k - 1)/(d - 1) mod r") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::uint64_t> dd(2, 9), rr(1, 60);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t d = dd(rng), r = rr(rng);
    const auto e = exponent_sequence(d, r);
    REQUIRE(e.residues.size() == e.preperiod + e.period);
    for (unsigned k = 1; k <= 40; ++k) {
      const Integer direct = (pow_int(d, k) - 1) / (d - 1) % r;
      std::uint64_t idx = k - 1;
      if (idx >= e.preperiod + e.period) idx = e.preperiod + (idx - e.preperiod) % e.period;
      CHECK(Integer(static_cast<unsigned long>(e.residues[idx])) == direct);
      if (k < e.residues.size()) CHECK(e.residues[k] == (d * e.residues[k - 1] + 1) % r);
    }
  }
}

TEST_CASE("monomial_branch_check: examples") {
  auto b = monomial_branch_check(C("w", 4), C("0", 4));
  REQUIRE(std::holds_alternative<TorsionTranslate>(b));
  CHECK(std::get<TorsionTranslate>(b).order == 4);
  CHECK(std::holds_alternative<NotTorsion>(monomial_branch_check(C("2"), C("0"))));
  CHECK(std::holds_alternative<NotTorsion>(monomial_branch_check(C("1"), C("1"))));
}

TEST_CASE("monomial_branch_check through an annihilator") {
  auto b = monomial_branch_check(P("z^2 + 1"), C("0"));
  REQUIRE(std::holds_alternative<TorsionTranslate>(b));
  CHECK(std::get<TorsionTranslate>(b).order == 4);
  b = monomial_branch_check(P("(z^2 + z + 1)*(z + 1)"), C("0"));
  REQUIRE(std::holds_alternative<TorsionTranslate>(b));
  CHECK(std::get<TorsionTranslate>(b).order == 6);
  CHECK(std::holds_alternative<NotTorsion>(monomial_branch_check(P("z^2 - 2"), C("0"))));
  CHECK(std::holds_alternative<NotTorsion>(monomial_branch_check(P("z^2 + 1"), C("1"))));
  b = monomial_branch_check(P("z^70 - 1"), C("0"));
  REQUIRE(std::holds_alternative<DegreeCapExceeded>(b));
  CHECK(std::get<DegreeCapExceeded>(b).degree == 70);
}

TEST_CASE("line_image: examples") {
  auto img = line_image(Phi("z^2; z^2"), L("(0,0) + t*(1,-1)"));
  REQUIRE(img);
  CHECK(*img == L("(0,0) + t*(1,1)"));
  img = line_image(Phi("z^2; z^2 + 1"), L("(0,0) + t*(1,1)"));
  REQUIRE(img);
  CHECK(*img == L("(0,1) + t*(1,1)"));
  CHECK_FALSE(line_image(Phi("z^2; z^2 + 1"), L("(0,1) + t*(1,1)")));
  img = line_image(Phi("z^2 - 1; z^2"), L("(0,0) + t*(0,1)"));
  REQUIRE(img);
  CHECK(*img == L("(-1,0) + t*(0,1)"));
}

TEST_CASE("line_preperiodic: examples") {
  CHECK(as<Preperiodic>(line_preperiodic(Phi("z^2; z^2"), L("(0,0) + t*(1,1)"))) == Preperiodic{0, 1});
  CHECK(as<Preperiodic>(line_preperiodic(Phi("z^3; z^3", 4), L("(0,0) + t*(1,w)", 4))) == Preperiodic{0, 2});
  CHECK(witness<CommutationFails>(line_preperiodic(Phi("z^2; z^2 + 1"), L("(0,0) + t*(1,1)"))).index == 2);
  const auto v = line_preperiodic(Phi("z^2 - 1; z^2; z^2"), L("(0,0,0) + t*(0,1,1)"));
  CHECK(as<Preperiodic>(v) == Preperiodic{0, 2});
}

TEST_CASE("line_preperiodic: witnesses") {
  CHECK(witness<NoLinearFactor>(line_preperiodic(Phi("z^2; z^2 + z"), L("(0,0) + t*(1,1)"))).index == 2);

  const auto nt = witness<NonTorsionTranslate>(line_preperiodic(Phi("z^2; z^2"), L("(0,0) + t*(1,2)")));
  CHECK(nt.index == 2);
  CHECK(nt.gamma_power == C("2"));

  // (t, t + 1) under (z^2, z^2) maps onto a conic.
  CHECK(witness<NoLinearFactor>(line_preperiodic(Phi("z^2; z^2"), L("(0,1) + t*(1,1)"))).index == 2);

  const auto cc = witness<ConstantCoordinateEscapes>(line_preperiodic(Phi("z^2; z^2"), L("(2,0) + t*(0,1)")));
  CHECK(cc.index == 1);
  CHECK(verify_escape(P("z^2"), cc.escape));

  const auto u = as<Unknown>(line_preperiodic(Phi("z^2 - 1; z^2"), L("(0,0) + t*(0,1)"), 0));
  CHECK(u.reason.find("coordinate 1") != std::string::npos);
}

TEST_CASE("line_preperiodic: finite rotations with preperiod") {
  // z^4 + z^2 has symmetry order 2; coordinate 2 is coordinate 1 reflected.
  CHECK(as<Preperiodic>(line_preperiodic(Phi("z^4 + z^2; z^4 + z^2"), L("(0,0) + t*(1,-1)"))) == Preperiodic{1, 1});
  // Degree 3 over Q(i) with three coordinates.
  const auto v = line_preperiodic(Phi("z^3; z^3; z^3 + 2*z", 4), L("(0,0,0) + t*(1,w,-1)", 4));
  CHECK(std::holds_alternative<NotPreperiodic>(v));
  CHECK(as<Preperiodic>(line_preperiodic(Phi("z^3; z^3; z^3", 4), L("(0,0,0) + t*(1,w,-1)", 4))) == Preperiodic{0, 2});
}

TEST_CASE("property: certificates agree with a brute-force line orbit") {
  struct Case {
    const char* maps;
    const char* line;
    std::uint64_t conductor;
  };
  const Case corpus[] = {
      {"z^2; z^2", "(0,0) + t*(1,1)", 1},
      {"z^2; z^2", "(0,0) + t*(1,-1)", 1},
      {"z^3; z^3", "(0,0) + t*(1,-1)", 1},
      {"z^3; z^3", "(0,0) + t*(1,w)", 4},
      {"z^3; z^3", "(0,0) + t*(1,-w)", 4},
      {"z^5; z^5", "(0,0) + t*(1,w)", 4},
      {"z^3; z^3; z^3", "(0,0,0) + t*(1,w,-1)", 4},
      {"z^2 + 2*z; z^2 + 2*z", "(-1,-1) + t*(1,-1)", 1},
      {"z^3 + 2*z; z^3 + 2*z", "(0,0) + t*(1,-1)", 1},
      {"z^4 + z^2; z^4 + z^2", "(0,0) + t*(1,-1)", 1},
      {"z^4 + w*z^2; z^4 + w*z^2", "(0,0) + t*(1,-1)", 4},
      {"z^5 + z; z^5 + z", "(0,0) + t*(1,w)", 4},
      {"z^2 - 1; z^2; z^2", "(0,0,0) + t*(0,1,1)", 1},
      {"z^2 - 1; z^2 - 1", "(-1,0) + t*(0,1)", 1},
      {"z^2 - 1; z^2 - 2; z^2", "(0,2,0) + t*(0,0,1)", 1},
      {"z^2 - 2; z^2 - 2; z^2 - 1", "(0,0,0) + t*(1,-1,0)", 1},
      {"z^3 - 3*z; z^3 - 3*z", "(0,0) + t*(1,-1)", 1},
      {"z^2 + w; z^2 + w", "(0,0) + t*(0,1)", 4},
  };
  for (const auto& c : corpus) {
    const SplitPolynomialMap phi = Phi(c.maps, c.conductor);
    const Line line = L(c.line, c.conductor);
    INFO(c.maps << " on " << c.line);
    const Verdict v = line_preperiodic(phi, line);
    const auto brute = brute_force_line_orbit(phi, line, 40);
    REQUIRE(brute);
    const auto cert = as<Preperiodic>(v);
    CHECK(cert == *brute);
    CHECK(replay_certificate(phi, line, cert));
  }
}

TEST_CASE("property: verdicts are invariant under coordinatewise conjugation") {
  struct Case {
    const char* maps;
    const char* line;
    std::uint64_t conductor;
  };
  const Case corpus[] = {
      {"z^2; z^2", "(0,0) + t*(1,1)", 1},       {"z^3; z^3", "(0,0) + t*(1,w)", 4},
      {"z^2; z^2 + 1", "(0,0) + t*(1,1)", 1},   {"z^2; z^2 + z", "(0,0) + t*(1,1)", 1},
      {"z^2; z^2", "(0,0) + t*(1,2)", 1},       {"z^2 - 1; z^2; z^2", "(0,0,0) + t*(0,1,1)", 1},
      {"z^2; z^2", "(3,0) + t*(0,1)", 1},       {"z^4 + z^2; z^4 + z^2", "(0,0) + t*(1,-1)", 1},
  };
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> num(-7, 7), den(1, 5);
  for (const auto& c : corpus) {
    const SplitPolynomialMap phi = Phi(c.maps, c.conductor);
    const Line line = L(c.line, c.conductor);
    const Verdict v = line_preperiodic(phi, line);
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<Polynomial> maps;
      std::vector<CycloNumber> base, dir;
      for (std::size_t i = 0; i < phi.dimension(); ++i) {
        int a = 0;
        while (a == 0) a = num(rng);
        const AffineLinearMap s(CycloNumber(c.conductor, Rational(a) / den(rng)),
                                CycloNumber(c.conductor, Rational(num(rng)) / den(rng)));
        maps.push_back(affine_conjugate(phi[i], s));
        base.push_back(s(line.base()[i]));
        dir.push_back(s.a() * line.direction()[i]);
      }
      const Verdict w = line_preperiodic(SplitPolynomialMap(maps), Line(base, dir));
      INFO(c.maps << " on " << c.line);
      REQUIRE(v.index() == w.index());
      if (std::holds_alternative<Preperiodic>(v)) CHECK(std::get<Preperiodic>(v) == std::get<Preperiodic>(w));
      if (std::holds_alternative<NotPreperiodic>(v)) {
        CHECK(std::get<NotPreperiodic>(v).witness.index() == std::get<NotPreperiodic>(w).witness.index());
      }
    }
  }
}

TEST_CASE("property: orbit verdicts are sound") {
  std::mt19937 rng(31337);
  std::uniform_int_distribution<int> num(-40, 40), den(1, 40);
  const Polynomial maps[] = {P("z^2 - 1"), P("z^2 + 1/4"), P("z^2 - 2"), P("z^3 - z"), P("2*z^2 - 1/3")};
  for (const auto& f : maps) {
    for (int trial = 0; trial < 100; ++trial) {
      const CycloNumber x(1, Rational(num(rng)) / den(rng));
      const Verdict v = orbit_point(f, x);
      const auto brute = brute_force_point_orbit(f, x, 64);
      INFO(to_string(f) << " at " << to_string(x));
      if (const auto* pre = std::get_if<Preperiodic>(&v)) {
        REQUIRE(brute);
        CHECK(*pre == *brute);
      } else {
        const Witness w = as<NotPreperiodic>(v).witness;
        const EscapeWitness e = std::holds_alternative<ArchimedeanEscape>(w)
                                    ? EscapeWitness{std::get<ArchimedeanEscape>(w)}
                                    : EscapeWitness{std::get<ValuationEscape>(w)};
        CHECK(verify_escape(f, e));
        CHECK_FALSE(brute);
      }
    }
  }
}

TEST_CASE("property: escape witnesses over Q(i) re-verify") {
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
  const Polynomial f = P("z^2 + w", 4);
  for (int trial = 0; trial < 50; ++trial) {
    const CycloNumber x = CycloNumber(4, Rational(num(rng)) / den(rng)) +
                          CycloNumber(4, Rational(num(rng)) / den(rng)) * CycloNumber::zeta(4);
    const Verdict v = orbit_point(f, x);
    if (const auto* np = std::get_if<NotPreperiodic>(&v)) {
      REQUIRE(std::holds_alternative<ArchimedeanEscape>(np->witness));
      CHECK(verify_escape(f, EscapeWitness{std::get<ArchimedeanEscape>(np->witness)}));
    } else {
      CHECK(brute_force_point_orbit(f, x, 64));
    }
  }
}

TEST_CASE("scan parameters") {
  const auto t = scan_parameters(std::log(2.0));
  std::vector<std::string> got;
  for (const auto& q : t) got.push_back(to_string(q));
  CHECK(got == std::vector<std::string>{"-2", "-1", "0", "1", "2", "-1/2", "1/2"});
  CHECK(scan_parameters(std::log(10.0)).size() == 127);
}

TEST_CASE("bogomolov scan: examples") {
  auto zeros = [](const ScanReport& r) {
    std::vector<std::string> out;
    for (std::size_t i : r.zero_candidates) out.push_back(to_string(r.rows[i].t));
    return out;
  };
  const double B = std::log(10.0);
  auto r = bogomolov_scan(Phi("z^2; z^2"), L("(0,0) + t*(1,1)"), B, 1e-9);
  CHECK(zeros(r) == std::vector<std::string>{"-1", "0", "1"});
  REQUIRE(r.gap);
  CHECK(*r.gap > 0);
  // h-hat = 2 h(t) on the diagonal of (z^2, z^2).
  for (const auto& row : r.rows) CHECK(row.hhat == doctest::Approx(2 * weil_height(row.t)).epsilon(1e-9));

  r = bogomolov_scan(Phi("z^2 - 1; z^2 - 1"), L("(0,0) + t*(1,1)"), B, 1e-9);
  CHECK(zeros(r) == std::vector<std::string>{"-1", "0", "1"});

  r = bogomolov_scan(Phi("z^2; z^2 + 1"), L("(0,0) + t*(1,1)"), B, 1e-9);
  CHECK(r.zero_candidates.empty());
  REQUIRE(r.gap);
  CHECK(*r.gap > 0);
}

TEST_CASE("property: scan zeros are preperiodic coordinatewise and output is deterministic") {
  const auto phi = Phi("z^2 - 1; z^2 - 2");
  const auto line = L("(0,0) + t*(1,-1)");
  const auto a = bogomolov_scan(phi, line, std::log(6.0), 1e-9, 1);
  const auto b = bogomolov_scan(phi, line, std::log(6.0), 1e-9, 4);
  std::ostringstream sa, sb;
  write_scan_csv(sa, a);
  write_scan_csv(sb, b);
  CHECK(sa.str() == sb.str());
  CHECK(sa.str().rfind("t,point,hhat,error,flag\n", 0) == 0);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const auto& row = a.rows[i];
    bool all_preperiodic = true;
    for (std::size_t c = 0; c < row.point.size(); ++c) {
      all_preperiodic &= std::holds_alternative<Preperiodic>(orbit_point(phi[c], CycloNumber(1, row.point[c])));
    }
    INFO(to_string(row.t));
    CHECK((row.flag == "zero") == all_preperiodic);
  }
}
