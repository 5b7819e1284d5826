#include "arithdyn/affine.hpp"

#include "arithdyn/algebra.hpp"

namespace arithdyn {

AffineLinearMap::AffineLinearMap(CycloNumber a, CycloNumber b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.conductor() != b_.conductor()) throw ConductorMismatch(a_.conductor(), b_.conductor());
  if (a_.is_zero()) throw std::invalid_argument("affine map needs a != 0");
}

AffineLinearMap AffineLinearMap::identity(std::uint64_t conductor) {
  return {CycloNumber(conductor, 1L), CycloNumber(conductor, 0L)};
}

AffineLinearMap AffineLinearMap::translation(const CycloNumber& b) { return {CycloNumber(b.conductor(), 1L), b}; }

AffineLinearMap AffineLinearMap::rotation(const CycloNumber& w, const CycloNumber& center) {
  return {w, center - w * center};
}

AffineLinearMap AffineLinearMap::inverse() const {
  const CycloNumber inv = a_.inverse();
  return {inv, -(b_ * inv)};
}

AffineLinearMap AffineLinearMap::power(std::uint64_t n) const {
  AffineLinearMap result = identity(conductor());
  AffineLinearMap base = *this;
  while (n > 0) {
    if (n & 1U) result = compose(result, base);
    n >>= 1U;
    if (n > 0) base = compose(base, base);
  }
  return result;
}

Polynomial AffineLinearMap::as_polynomial() const { return Polynomial(conductor(), {b_, a_}); }

AffineLinearMap AffineLinearMap::lift(std::uint64_t target) const { return {a_.lift(target), b_.lift(target)}; }

AffineLinearMap compose(const AffineLinearMap& s, const AffineLinearMap& t) {
  return {s.a() * t.a(), s.a() * t.b() + s.b()};
}

Polynomial apply(const AffineLinearMap& s, const Polynomial& f) {
  return f * s.a() + Polynomial::constant(s.b());
}

Polynomial precompose(const Polynomial& f, const AffineLinearMap& s) { return compose(f, s.as_polynomial()); }

Polynomial affine_conjugate(const Polynomial& f, const AffineLinearMap& s) {
  return apply(s, precompose(f, s.inverse()));
}

std::optional<std::uint64_t> affine_order(const AffineLinearMap& s) {
  if (s.a().is_one()) {
    if (s.b().is_zero()) return 1;
    return std::nullopt;
  }
  // a != 1: s is a rotation about b/(1-a), so s^n = id iff a^n = 1.
  return root_of_unity_order(s.a());
}

std::string to_string(const AffineLinearMap& s) {
  return to_string(s.as_polynomial());
}

}  // namespace arithdyn
