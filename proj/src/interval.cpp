#include "arithdyn/interval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace arithdyn {

Interval::Interval(mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(double v, mpfr_prec_t prec) : Interval(prec) {
  mpfr_set_d(lo_, v, MPFR_RNDD);
  mpfr_set_d(hi_, v, MPFR_RNDU);
}

Interval::Interval(const Rational& q, mpfr_prec_t prec) : Interval(prec) {
  mpfr_set_q(lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, q.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Interval& o) {
  mpfr_init2(lo_, o.precision());
  mpfr_init2(hi_, o.precision());
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept : Interval(o.precision()) {
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(Interval o) noexcept {
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::hull(double lo, double hi, mpfr_prec_t prec) {
  if (lo > hi) throw std::invalid_argument("empty interval");
  Interval out(prec);
  mpfr_set_d(out.lo_, lo, MPFR_RNDD);
  mpfr_set_d(out.hi_, hi, MPFR_RNDU);
  return out;
}

double Interval::mid() const {
  mpfr_t m;
  mpfr_init2(m, precision() + 1);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  const double out = mpfr_get_d(m, MPFR_RNDN);
  mpfr_clear(m);
  return out;
}

double Interval::width() const {
  mpfr_t w;
  mpfr_init2(w, 64);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  const double out = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return out;
}

bool Interval::strictly_inside(const Interval& o) const {
  return mpfr_greater_p(lo_, o.lo_) && mpfr_less_p(hi_, o.hi_);
}

namespace {
mpfr_prec_t joint(const Interval& a, const Interval& b) { return std::max(a.precision(), b.precision()); }
}  // namespace

Interval operator+(const Interval& a, const Interval& b) {
  Interval out(joint(a, b));
  mpfr_add(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return out;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval out(joint(a, b));
  mpfr_sub(out.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(out.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return out;
}

Interval operator*(const Interval& a, const Interval& b) {
  const mpfr_prec_t prec = joint(a, b);
  Interval out(prec);
  mpfr_t t;
  mpfr_init2(t, prec);
  bool first = true;
  for (auto x : {a.lo_, a.hi_}) {
    for (auto y : {b.lo_, b.hi_}) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, out.lo_)) mpfr_set(out.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, out.hi_)) mpfr_set(out.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return out;
}

Interval Interval::operator-() const {
  Interval out(precision());
  mpfr_neg(out.lo_, hi_, MPFR_RNDD);
  mpfr_neg(out.hi_, lo_, MPFR_RNDU);
  return out;
}

Interval Interval::abs() const {
  if (mpfr_sgn(lo_) >= 0) return *this;
  if (mpfr_sgn(hi_) <= 0) return -*this;
  Interval out(precision());
  mpfr_set_zero(out.lo_, 1);
  if (mpfr_cmpabs(lo_, hi_) > 0) {
    mpfr_neg(out.hi_, lo_, MPFR_RNDU);
  } else {
    mpfr_set(out.hi_, hi_, MPFR_RNDU);
  }
  return out;
}

Interval Interval::sqr() const {
  const Interval a = abs();
  Interval out(precision());
  mpfr_sqr(out.lo_, a.lo_, MPFR_RNDD);
  mpfr_sqr(out.hi_, a.hi_, MPFR_RNDU);
  return out;
}

Interval Interval::sqrt() const {
  if (mpfr_sgn(lo_) < 0) throw std::domain_error("sqrt of negative interval");
  Interval out(precision());
  mpfr_sqrt(out.lo_, lo_, MPFR_RNDD);
  mpfr_sqrt(out.hi_, hi_, MPFR_RNDU);
  return out;
}

Interval Interval::log() const {
  if (mpfr_sgn(lo_) <= 0) throw std::domain_error("log of nonpositive interval");
  Interval out(precision());
  mpfr_log(out.lo_, lo_, MPFR_RNDD);
  mpfr_log(out.hi_, hi_, MPFR_RNDU);
  return out;
}

Interval Interval::log_plus() const {
  Interval out(precision());
  if (mpfr_cmp_ui(lo_, 1) > 0) {
    mpfr_log(out.lo_, lo_, MPFR_RNDD);
  }
  if (mpfr_cmp_ui(hi_, 1) > 0) {
    mpfr_log(out.hi_, hi_, MPFR_RNDU);
  }
  return out;
}

Interval Interval::exp() const {
  Interval out(precision());
  mpfr_exp(out.lo_, lo_, MPFR_RNDD);
  mpfr_exp(out.hi_, hi_, MPFR_RNDU);
  return out;
}

Interval Interval::reciprocal() const {
  if (contains_zero()) throw std::domain_error("reciprocal of interval containing zero");
  Interval out(precision());
  mpfr_ui_div(out.lo_, 1, hi_, MPFR_RNDD);
  mpfr_ui_div(out.hi_, 1, lo_, MPFR_RNDU);
  return out;
}

Interval Interval::scaled(double factor) const { return *this * Interval(factor, precision()); }

Interval Interval::widened(double r) const {
  Interval out(*this);
  mpfr_sub_d(out.lo_, lo_, r, MPFR_RNDD);
  mpfr_add_d(out.hi_, hi_, r, MPFR_RNDU);
  return out;
}

Interval Interval::max(const Interval& a, const Interval& b) {
  Interval out(joint(a, b));
  mpfr_max(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return out;
}

namespace {

// MPFR's trig is correctly rounded; the angle itself carries a few ulps of
// error at working precision and sin/cos are 1-Lipschitz, so 2^-(work-8)
// bounds the total error.
Interval trig_2pi(std::uint64_t k, std::uint64_t n, mpfr_prec_t prec, bool cosine) {
  k %= n;
  if ((4 * k) % n == 0) {
    // Angle is a multiple of pi/2: exact values keep real embeddings real.
    static constexpr int cos_table[4] = {1, 0, -1, 0};
    static constexpr int sin_table[4] = {0, 1, 0, -1};
    const std::uint64_t quarter = 4 * k / n;
    return Interval(static_cast<double>(cosine ? cos_table[quarter] : sin_table[quarter]), prec);
  }
  const mpfr_prec_t work = prec + 32;
  mpfr_t v;
  mpfr_init2(v, work);
  mpfr_const_pi(v, MPFR_RNDN);
  mpfr_mul_ui(v, v, 2 * k, MPFR_RNDN);
  mpfr_div_ui(v, v, n, MPFR_RNDN);
  if (cosine) {
    mpfr_cos(v, v, MPFR_RNDN);
  } else {
    mpfr_sin(v, v, MPFR_RNDN);
  }
  Rational q;
  mpfr_get_q(q.get_mpq_t(), v);
  mpfr_clear(v);
  return Interval(q, prec).widened(std::ldexp(1.0, -static_cast<int>(work) + 8));
}

}  // namespace

Interval Interval::cos_2pi(std::uint64_t k, std::uint64_t n, mpfr_prec_t prec) { return trig_2pi(k, n, prec, true); }
Interval Interval::sin_2pi(std::uint64_t k, std::uint64_t n, mpfr_prec_t prec) { return trig_2pi(k, n, prec, false); }

ComplexInterval ComplexInterval::embed(const CycloNumber& x, std::uint64_t k, mpfr_prec_t prec) {
  const std::uint64_t n = x.conductor();
  if (x.is_rational()) return {Interval(x.coords()[0], prec), Interval(prec)};
  const ComplexInterval w{Interval::cos_2pi(k, n, prec), Interval::sin_2pi(k, n, prec)};
  ComplexInterval acc(prec);
  for (std::size_t i = x.coords().size(); i-- > 0;) {
    acc = acc * w;
    acc.re = acc.re + Interval(x.coords()[i], prec);
  }
  return acc;
}

ComplexInterval ComplexInterval::box(double cre, double cim, double r, mpfr_prec_t prec) {
  return {Interval(cre, prec).widened(r), Interval(cim, prec).widened(r)};
}

double ComplexInterval::width() const { return std::max(re.width(), im.width()); }

ComplexInterval evaluate(const std::vector<ComplexInterval>& coeffs, const ComplexInterval& z) {
  ComplexInterval acc(z.re.precision());
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * z + coeffs[i];
  return acc;
}

}  // namespace arithdyn
