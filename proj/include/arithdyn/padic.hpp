#pragma once

// Capped-precision p-adic numbers: enough to track valuations of long orbits
// without the bit growth of exact rational iteration.

#include <vector>

#include "arithdyn/rational.hpp"

namespace arithdyn {

/// Either p^val * unit + O(p^abs) with p not dividing unit and val < abs, or
/// the indistinct value O(p^abs) (flagged by `indistinct`).
struct PAdicValue {
  long abs = 0;
  long val = 0;
  bool indistinct = true;
  Integer unit;

  /// Known lower bound for the valuation.
  long min_valuation() const { return indistinct ? abs : val; }
};

class CappedPAdicRing {
 public:
  explicit CappedPAdicRing(Integer p);

  const Integer& prime() const { return p_; }

  /// q + O(p^abs_prec).
  PAdicValue from_rational(const Rational& q, long abs_prec) const;
  PAdicValue add(const PAdicValue& a, const PAdicValue& b) const;
  PAdicValue mul(const PAdicValue& a, const PAdicValue& b) const;
  /// sum coeffs[j] x^j by Horner.
  PAdicValue evaluate(const std::vector<PAdicValue>& coeffs, const PAdicValue& x) const;

 private:
  Integer power(long k) const;

  Integer p_;
};

}  // namespace arithdyn
