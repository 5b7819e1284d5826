#include <doctest.h>

#include <numeric>
#include <random>

#include "arithdyn/parse.hpp"
#include "arithdyn/symmetry.hpp"
#include "corpus.hpp"

using namespace arithdyn;

namespace {

Polynomial P(const char* s, std::uint64_t n = 1) { return parse_polynomial(s, n); }
CycloNumber C(const char* s, std::uint64_t n = 1) { return parse_constant(s, n); }

std::uint64_t lcm(std::uint64_t a, std::uint64_t b) { return std::lcm(a, b); }

}  // namespace

TEST_CASE("center and centered form: examples") {
  CHECK(center(P("z^2 + 2*z")) == C("-1"));
  CHECK(center(P("z^3 + 2*z")) == C("0"));
  CHECK(center(P("2*z^2 - 4*z")) == C("1"));
  CHECK(centered_form(P("z^2 + 2*z")).first == P("z^2"));
  CHECK(centered_form(P("z^2 + 2*z")).second == C("-1"));
  CHECK(centered_form(P("z^2 + 3")).first == P("z^2 + 3"));
  CHECK(centered_form(P("z^3 + 2*z")).first == P("z^3 + 2*z"));
}

TEST_CASE("symmetry_group: examples") {
  auto g = symmetry_group(P("z^3 + 2*z"));
  CHECK(g.center == C("0"));
  CHECK(g.order == std::optional<std::uint64_t>(2));
  g = symmetry_group(P("z^2 + 5"));
  CHECK(g.order == std::optional<std::uint64_t>(2));
  g = symmetry_group(P("z^2 + 2*z"));
  CHECK(g.infinite());
  CHECK(g.center == C("-1"));
}

TEST_CASE("symmetry_check: examples") {
  const AffineLinearMap neg(C("-1"), C("0"));
  CHECK(symmetry_check(P("z^2"), neg));
  CHECK_FALSE(symmetry_check(P("z^2 + 1"), AffineLinearMap::translation(C("1"))));
  CHECK(symmetry_check(P("z^3 + 2*z"), neg));
  CHECK_THROWS_AS(symmetry_check(P("z^2"), AffineLinearMap(C("w", 4), C("0", 4))), ConductorMismatch);
}

TEST_CASE("linear_factor: examples") {
  auto t = linear_factor(P("-z^2"), P("z^2"));
  REQUIRE(t);
  CHECK(*t == AffineLinearMap(C("-1"), C("0")));
  t = linear_factor(P("z^2 + 1"), P("z^2"));
  REQUIRE(t);
  CHECK(*t == AffineLinearMap(C("1"), C("1")));
  CHECK_FALSE(linear_factor(P("z^2 + z"), P("z^2")));
}

TEST_CASE("same_julia: examples") {
  auto r = same_julia(P("z^2"), P("-z^2"));
  REQUIRE(r.yes());
  CHECK(*r.tau == AffineLinearMap(C("-1"), C("0")));
  r = same_julia(P("z^2"), P("z^2 + 1"));
  CHECK_FALSE(r.yes());
  CHECK(r.reason == SameJuliaFailure::CommutationFails);
  r = same_julia(P("z^3", 4), P("w*z^3", 4));
  REQUIRE(r.yes());
  CHECK(*r.tau == AffineLinearMap(C("w", 4), C("0", 4)));
  r = same_julia(P("z^2"), P("z^2 + z"));
  CHECK(r.reason == SameJuliaFailure::NoLinearFactor);
}

TEST_CASE("power_map_form: examples") {
  auto m = power_map_form(P("z^2 + 2*z"));
  REQUIRE(m);
  CHECK(m->center == C("-1"));
  CHECK(m->coefficient == C("1"));
  CHECK_FALSE(power_map_form(P("z^2 - 1")));
  m = power_map_form(P("3*z^3"));
  REQUIRE(m);
  CHECK(m->center == C("0"));
  CHECK(m->coefficient == C("3"));
}

TEST_CASE("gcd rule matches brute-force rotations of order <= 12") {
  CHECK(std::size(arithdyn_test::kSymmetryCorpus) >= 20);
  for (const auto& s : arithdyn_test::kSymmetryCorpus) {
    const Polynomial f = P(s.text, s.conductor);
    const SymmetryGroup g = symmetry_group(f);
    INFO(s.text);
    for (std::uint64_t n = 1; n <= 12; ++n) {
      INFO("n = " << n);
      const bool expected = g.infinite() || *g.order % n == 0;
      CHECK(arithdyn_test::rotation_commutes(f, n) == expected);
    }
    CHECK(power_map_form(f).has_value() == g.infinite());
  }
}

TEST_CASE("property: symmetry group is conjugation covariant") {
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 6);
  for (const auto& s : arithdyn_test::kSymmetryCorpus) {
    const Polynomial f = P(s.text, s.conductor);
    for (int trial = 0; trial < 3; ++trial) {
      int a = 0;
      while (a == 0) a = num(rng);
      const AffineLinearMap t(CycloNumber(s.conductor, Rational(a) / den(rng)),
                              CycloNumber(s.conductor, Rational(num(rng)) / den(rng)));
      const SymmetryGroup g = symmetry_group(f);
      const SymmetryGroup h = symmetry_group(affine_conjugate(f, t));
      INFO(s.text);
      CHECK(h.center == t(g.center));
      CHECK(h.order == g.order);
    }
  }
}

TEST_CASE("property: same_julia is reflexive and symmetric along rotations") {
  for (const auto& s : arithdyn_test::kSymmetryCorpus) {
    const Polynomial f = P(s.text, s.conductor);
    INFO(s.text);
    const auto self = same_julia(f, f);
    REQUIRE(self.yes());
    CHECK(self.tau->is_identity());

    const SymmetryGroup g = symmetry_group(f);
    for (std::uint64_t n = 2; n <= 6; ++n) {
      if (!g.infinite() && *g.order % n != 0) continue;
      const std::uint64_t M = lcm(n, f.conductor());
      const AffineLinearMap tau = AffineLinearMap::rotation(CycloNumber::zeta(M, M / n), g.center.lift(M));
      const Polynomial F = f.lift(M);
      const Polynomial G = apply(tau, F);
      const auto fwd = same_julia(F, G);
      REQUIRE(fwd.yes());
      CHECK(*fwd.tau == tau);
      const auto back = same_julia(G, F);
      REQUIRE(back.yes());
      CHECK(apply(*back.tau, G) == F);
    }
  }
}

TEST_CASE("property: translations and non-rotations are rejected") {
  const Polynomial f = P("z^3 + 2*z");
  CHECK_FALSE(same_julia(f, apply(AffineLinearMap::translation(C("1")), f)).yes());
  CHECK_FALSE(same_julia(f, apply(AffineLinearMap(C("2"), C("0")), f)).yes());
}
