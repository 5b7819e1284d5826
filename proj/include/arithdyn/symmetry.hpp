#pragma once

#include <optional>
#include <string>
#include <utility>

#include "arithdyn/affine.hpp"

namespace arithdyn {

/// Rotations about `center` preserving the Julia set: cyclic of the given
/// order, or all rotations when `order` is empty.
struct SymmetryGroup {
  CycloNumber center;
  std::optional<std::uint64_t> order;

  bool infinite() const { return !order.has_value(); }
};

/// zeta = -a_{d-1} / (d a_d).
CycloNumber center(const Polynomial& f);

/// (F, zeta) with F(z) = f(z + zeta) - zeta, which has no z^{d-1} term.
std::pair<Polynomial, CycloNumber> centered_form(const Polynomial& f);

/// Order b = gcd{ d - j : c_j != 0, j < d } over the centered form, or
/// infinite when the centered form is a monomial.
SymmetryGroup symmetry_group(const Polynomial& f);

/// f o s == s^d o f as exact polynomials.
bool symmetry_check(const Polynomial& f, const AffineLinearMap& s);

/// tau with g = tau o f, if g - (lc g / lc f) f is constant.
std::optional<AffineLinearMap> linear_factor(const Polynomial& g, const Polynomial& f);

enum class SameJuliaFailure { NoLinearFactor, CommutationFails, NotRotationAboutCenter, InfiniteOrder };

std::string to_string(SameJuliaFailure reason);

struct SameJuliaResult {
  /// Set when g = tau o f with tau a symmetry of J(f).
  std::optional<AffineLinearMap> tau;
  SameJuliaFailure reason = SameJuliaFailure::NoLinearFactor;

  bool yes() const { return tau.has_value(); }
};

SameJuliaResult same_julia(const Polynomial& f, const Polynomial& g);

/// Centered form c z^d, if any.
struct PowerMapForm {
  CycloNumber center;
  CycloNumber coefficient;
};
std::optional<PowerMapForm> power_map_form(const Polynomial& f);

}  // namespace arithdyn
