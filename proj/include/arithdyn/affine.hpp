#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "arithdyn/polynomial.hpp"

namespace arithdyn {

/// z -> a*z + b with a != 0.
class AffineLinearMap {
 public:
  AffineLinearMap(CycloNumber a, CycloNumber b);
  static AffineLinearMap identity(std::uint64_t conductor = 1);
  static AffineLinearMap translation(const CycloNumber& b);
  /// z -> w*(z - center) + center.
  static AffineLinearMap rotation(const CycloNumber& w, const CycloNumber& center);

  const CycloNumber& a() const { return a_; }
  const CycloNumber& b() const { return b_; }
  std::uint64_t conductor() const { return a_.conductor(); }
  bool is_identity() const { return a_.is_one() && b_.is_zero(); }

  CycloNumber operator()(const CycloNumber& z) const { return a_ * z + b_; }
  AffineLinearMap inverse() const;
  /// n-fold self composition.
  AffineLinearMap power(std::uint64_t n) const;
  Polynomial as_polynomial() const;
  AffineLinearMap lift(std::uint64_t target_conductor) const;

  friend bool operator==(const AffineLinearMap& s, const AffineLinearMap& t) { return s.a_ == t.a_ && s.b_ == t.b_; }
  friend bool operator!=(const AffineLinearMap& s, const AffineLinearMap& t) { return !(s == t); }

 private:
  CycloNumber a_, b_;
};

/// s o t.
AffineLinearMap compose(const AffineLinearMap& s, const AffineLinearMap& t);
/// s o f, i.e. a*f + b.
Polynomial apply(const AffineLinearMap& s, const Polynomial& f);
/// f o s.
Polynomial precompose(const Polynomial& f, const AffineLinearMap& s);
/// s o f o s^-1.
Polynomial affine_conjugate(const Polynomial& f, const AffineLinearMap& s);

/// Order of s under composition; nullopt when infinite. Finite exactly when
/// s is the identity or a != 1 is a root of unity, and then it is the order
/// of a. The torsion bound of Q(zeta_N) makes the search finite, so no cap
/// parameter is needed.
std::optional<std::uint64_t> affine_order(const AffineLinearMap& s);

std::string to_string(const AffineLinearMap& s);

}  // namespace arithdyn
