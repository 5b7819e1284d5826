#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arithdyn/qpoly.hpp"
#include "arithdyn/rational.hpp"

namespace arithdyn {

/// Raised when two exact values from different cyclotomic fields meet.
class ConductorMismatch : public std::invalid_argument {
 public:
  ConductorMismatch(std::uint64_t a, std::uint64_t b);
};

/// Shared, immutable description of Q(zeta_N).
class CyclotomicField {
 public:
  static std::shared_ptr<const CyclotomicField> get(std::uint64_t conductor);

  std::uint64_t conductor() const { return conductor_; }
  std::size_t degree() const { return degree_; }
  const qpoly::QPoly& modulus() const { return *modulus_; }

  explicit CyclotomicField(std::uint64_t conductor);

 private:
  std::uint64_t conductor_;
  std::size_t degree_;
  const qpoly::QPoly* modulus_;
};

/// Element of Q(zeta_N) in the power basis 1, w, ..., w^(phi(N)-1), always
/// reduced modulo the N-th cyclotomic polynomial. Q itself is conductor 1.
class CycloNumber {
 public:
  /// Zero of Q.
  CycloNumber();
  CycloNumber(std::uint64_t conductor, const Rational& value);
  CycloNumber(std::uint64_t conductor, long value) : CycloNumber(conductor, Rational(value)) {}

  /// Takes an arbitrary-length coefficient vector in powers of zeta_N and
  /// reduces it.
  static CycloNumber from_powers(std::uint64_t conductor, qpoly::QPoly powers);
  /// zeta_N^k.
  static CycloNumber zeta(std::uint64_t conductor, std::uint64_t k = 1);

  std::uint64_t conductor() const { return field_->conductor(); }
  const std::vector<Rational>& coords() const { return coords_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  std::optional<Rational> as_rational() const;

  CycloNumber operator-() const;
  CycloNumber& operator+=(const CycloNumber& o);
  CycloNumber& operator-=(const CycloNumber& o);
  CycloNumber& operator*=(const CycloNumber& o);
  CycloNumber& operator/=(const CycloNumber& o);
  friend CycloNumber operator+(CycloNumber a, const CycloNumber& b) { return a += b; }
  friend CycloNumber operator-(CycloNumber a, const CycloNumber& b) { return a -= b; }
  friend CycloNumber operator*(CycloNumber a, const CycloNumber& b) { return a *= b; }
  friend CycloNumber operator/(CycloNumber a, const CycloNumber& b) { return a /= b; }

  CycloNumber inverse() const;
  CycloNumber pow(std::uint64_t e) const;

  /// Same element viewed in Q(zeta_M); requires N | M.
  CycloNumber lift(std::uint64_t target_conductor) const;

  /// Image under zeta_N -> exp(2 pi i k / N).
  std::complex<double> embed(std::uint64_t k = 1) const;

  friend bool operator==(const CycloNumber& a, const CycloNumber& b);
  friend bool operator!=(const CycloNumber& a, const CycloNumber& b) { return !(a == b); }
  /// Lexicographic total order on (conductor, coords); only for containers.
  friend bool operator<(const CycloNumber& a, const CycloNumber& b);

  std::size_t bit_size() const;

 private:
  void check_same_field(const CycloNumber& o) const;

  std::shared_ptr<const CyclotomicField> field_;
  std::vector<Rational> coords_;
};

/// Embedding indices k in [1, N] coprime to N (k = 1 for N = 1).
std::vector<std::uint64_t> embedding_indices(std::uint64_t conductor);

/// "3/2", "w", "1 + w - 2*w^2"; parseable by parse_constant.
std::string to_string(const CycloNumber& x);

}  // namespace arithdyn
