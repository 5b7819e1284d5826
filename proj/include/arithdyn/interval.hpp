#pragma once

// Outward-rounded interval arithmetic on MPFR floats, and rectangular complex
// intervals built on it. Used for certified archimedean computations.

#include <mpfr.h>

#include "arithdyn/cyclo.hpp"

namespace arithdyn {

class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 128);
  Interval(double v, mpfr_prec_t prec);
  Interval(const Rational& q, mpfr_prec_t prec);
  Interval(const Interval& o);
  Interval(Interval&& o) noexcept;
  Interval& operator=(Interval o) noexcept;
  ~Interval();

  /// Interval [lo, hi]; requires lo <= hi.
  static Interval hull(double lo, double hi, mpfr_prec_t prec);

  mpfr_prec_t precision() const { return mpfr_get_prec(lo_); }
  double lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  double mid() const;
  /// Upper bound on hi - lo.
  double width() const;
  bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
  bool is_finite() const { return mpfr_number_p(lo_) && mpfr_number_p(hi_); }
  /// this is a subset of the interior of o.
  bool strictly_inside(const Interval& o) const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  Interval operator-() const;
  Interval sqr() const;
  Interval abs() const;
  /// Requires a nonnegative interval.
  Interval sqrt() const;
  /// Requires a positive interval.
  Interval log() const;
  /// max(0, log x), x >= 0.
  Interval log_plus() const;
  Interval exp() const;
  /// Requires an interval not containing zero.
  Interval reciprocal() const;
  Interval scaled(double factor) const;
  /// Adds [-r, r].
  Interval widened(double r) const;
  static Interval max(const Interval& a, const Interval& b);

  /// cos/sin of 2*pi*k/n.
  static Interval cos_2pi(std::uint64_t k, std::uint64_t n, mpfr_prec_t prec);
  static Interval sin_2pi(std::uint64_t k, std::uint64_t n, mpfr_prec_t prec);

 private:
  mpfr_t lo_, hi_;
};

struct ComplexInterval {
  Interval re, im;

  explicit ComplexInterval(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
  ComplexInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}

  /// Image of x under zeta_N -> exp(2 pi i k / N).
  static ComplexInterval embed(const CycloNumber& x, std::uint64_t k, mpfr_prec_t prec);
  /// Square box centered at (cre, cim) with half side r.
  static ComplexInterval box(double cre, double cim, double r, mpfr_prec_t prec);

  friend ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  Interval abs() const { return (re.sqr() + im.sqr()).sqrt(); }
  double width() const;
  bool strictly_inside(const ComplexInterval& o) const {
    return re.strictly_inside(o.re) && im.strictly_inside(o.im);
  }
};

/// Horner evaluation of sum coeffs[j] z^j.
ComplexInterval evaluate(const std::vector<ComplexInterval>& coeffs, const ComplexInterval& z);

}  // namespace arithdyn
