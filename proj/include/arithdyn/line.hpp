#pragma once

#include <cstdint>
#include <vector>

#include "arithdyn/polynomial.hpp"

namespace arithdyn {

/// Phi = (f_1, ..., f_m) acting coordinatewise on affine m-space. All maps
/// share one field and one degree d >= 2; unequal degrees are rejected.
class SplitPolynomialMap {
 public:
  explicit SplitPolynomialMap(std::vector<Polynomial> maps);

  std::size_t dimension() const { return maps_.size(); }
  int degree() const { return maps_.front().degree(); }
  std::uint64_t conductor() const { return maps_.front().conductor(); }
  const std::vector<Polynomial>& maps() const { return maps_; }
  const Polynomial& operator[](std::size_t i) const { return maps_[i]; }

  std::vector<CycloNumber> operator()(const std::vector<CycloNumber>& point) const;

 private:
  std::vector<Polynomial> maps_;
};

/// Parametric line base + t * direction. Equality is equality of point sets.
class Line {
 public:
  Line(std::vector<CycloNumber> base, std::vector<CycloNumber> direction);

  std::size_t dimension() const { return base_.size(); }
  std::uint64_t conductor() const { return base_.front().conductor(); }
  const std::vector<CycloNumber>& base() const { return base_; }
  const std::vector<CycloNumber>& direction() const { return direction_; }
  std::vector<CycloNumber> at(const CycloNumber& t) const;

  /// Representative with direction scaled so its first nonzero entry is 1
  /// and the base point zero in that coordinate. Equal lines have equal
  /// normal forms.
  Line normalized() const;

  friend bool operator==(const Line& a, const Line& b);
  friend bool operator!=(const Line& a, const Line& b) { return !(a == b); }

 private:
  std::vector<CycloNumber> base_, direction_;
};

}  // namespace arithdyn
