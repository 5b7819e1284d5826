#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arithdyn/cyclo.hpp"

namespace arithdyn {

/// Dense polynomial in z over Q(zeta_N). The conductor is the field tag; the
/// coefficient vector is trimmed so the last entry is nonzero (empty = 0).
class Polynomial {
 public:
  explicit Polynomial(std::uint64_t conductor = 1) : conductor_(conductor) {}
  Polynomial(std::uint64_t conductor, std::vector<CycloNumber> coeffs);

  static Polynomial from_rationals(const std::vector<Rational>& coeffs, std::uint64_t conductor = 1);
  static Polynomial constant(const CycloNumber& c);
  /// c * z^k.
  static Polynomial monomial(const CycloNumber& c, unsigned k);
  /// The identity polynomial z.
  static Polynomial identity(std::uint64_t conductor = 1);

  std::uint64_t conductor() const { return conductor_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<CycloNumber>& coeffs() const { return coeffs_; }
  /// Coefficient of z^k (zero beyond the degree).
  CycloNumber coeff(std::size_t k) const;
  /// Leading coefficient; throws for the zero polynomial.
  const CycloNumber& leading() const;

  /// Over Q (every coefficient rational), the coefficients as rationals.
  std::optional<std::vector<Rational>> rational_coeffs() const;
  bool is_monomial() const;

  CycloNumber operator()(const CycloNumber& x) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const CycloNumber& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const CycloNumber& c) { return a *= c; }
  friend Polynomial operator*(const CycloNumber& c, Polynomial a) { return a *= c; }

  Polynomial pow(unsigned e) const;
  Polynomial lift(std::uint64_t target_conductor) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.conductor_ == b.conductor_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

 private:
  void trim();
  void check_same_field(const Polynomial& o) const;

  std::uint64_t conductor_;
  std::vector<CycloNumber> coeffs_;
};

/// f o g.
Polynomial compose(const Polynomial& f, const Polynomial& g);
/// n-fold self composition (n = 0 gives z).
Polynomial iterate(const Polynomial& f, unsigned n);

/// N-th cyclotomic polynomial as a polynomial over Q.
Polynomial cyclotomic_polynomial(std::uint64_t n);

/// Pretty printer; output is accepted by parse_polynomial.
std::string to_string(const Polynomial& f);

}  // namespace arithdyn
