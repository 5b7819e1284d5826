#include "arithdyn/symmetry.hpp"

#include <numeric>
#include <stdexcept>

namespace arithdyn {

namespace {

void require_degree(const Polynomial& f) {
  if (f.degree() < 2) throw std::invalid_argument("symmetry computations need degree >= 2");
}

void require_same_field(const Polynomial& f, const Polynomial& g) {
  if (f.conductor() != g.conductor()) throw ConductorMismatch(f.conductor(), g.conductor());
}

}  // namespace

CycloNumber center(const Polynomial& f) {
  require_degree(f);
  const int d = f.degree();
  return -f.coeff(d - 1) / (CycloNumber(f.conductor(), d) * f.leading());
}

std::pair<Polynomial, CycloNumber> centered_form(const Polynomial& f) {
  const CycloNumber zeta = center(f);
  return {affine_conjugate(f, AffineLinearMap::translation(-zeta)), zeta};
}

SymmetryGroup symmetry_group(const Polynomial& f) {
  auto [F, zeta] = centered_form(f);
  const int d = F.degree();
  std::uint64_t b = 0;
  for (int j = 0; j < d; ++j) {
    if (!F.coeff(j).is_zero()) b = std::gcd(b, static_cast<std::uint64_t>(d - j));
  }
  SymmetryGroup out{zeta, std::nullopt};
  if (b != 0) out.order = b;
  return out;
}

bool symmetry_check(const Polynomial& f, const AffineLinearMap& s) {
  require_degree(f);
  if (f.conductor() != s.conductor()) throw ConductorMismatch(f.conductor(), s.conductor());
  return compose(f, s.as_polynomial()) == apply(s.power(static_cast<std::uint64_t>(f.degree())), f);
}

std::optional<AffineLinearMap> linear_factor(const Polynomial& g, const Polynomial& f) {
  require_same_field(f, g);
  require_degree(f);
  if (g.degree() != f.degree()) throw std::invalid_argument("linear_factor needs equal degrees");
  const CycloNumber a = g.leading() / f.leading();
  const Polynomial diff = g - a * f;
  if (diff.degree() > 0) return std::nullopt;
  return AffineLinearMap(a, diff.coeff(0));
}

std::string to_string(SameJuliaFailure reason) {
  switch (reason) {
    case SameJuliaFailure::NoLinearFactor:
      return "no linear factor";
    case SameJuliaFailure::CommutationFails:
      return "commutation fails";
    case SameJuliaFailure::NotRotationAboutCenter:
      return "not a rotation about the center";
    case SameJuliaFailure::InfiniteOrder:
      return "rotation of infinite order";
  }
  return "unknown";
}

SameJuliaResult same_julia(const Polynomial& f, const Polynomial& g) {
  SameJuliaResult out;
  const auto tau = linear_factor(g, f);
  if (!tau) {
    out.reason = SameJuliaFailure::NoLinearFactor;
    return out;
  }
  if (!symmetry_check(f, *tau)) {
    out.reason = SameJuliaFailure::CommutationFails;
    return out;
  }
  const SymmetryGroup group = symmetry_group(f);
  if ((*tau)(group.center) != group.center) {
    out.reason = SameJuliaFailure::NotRotationAboutCenter;
    return out;
  }
  if (!group.infinite() && !affine_order(*tau)) {
    out.reason = SameJuliaFailure::InfiniteOrder;
    return out;
  }
  out.tau = tau;
  return out;
}

std::optional<PowerMapForm> power_map_form(const Polynomial& f) {
  auto [F, zeta] = centered_form(f);
  if (!F.is_monomial()) return std::nullopt;
  return PowerMapForm{zeta, F.leading()};
}

}  // namespace arithdyn
