#include "arithdyn/padic.hpp"

#include <algorithm>
#include <stdexcept>

namespace arithdyn {

namespace {

PAdicValue indistinct(long abs) {
  PAdicValue out;
  out.abs = abs;
  out.val = abs;
  out.indistinct = true;
  return out;
}

}  // namespace

CappedPAdicRing::CappedPAdicRing(Integer p) : p_(std::move(p)) {
  if (p_ < 2) throw std::invalid_argument("p-adic ring needs a prime");
}

Integer CappedPAdicRing::power(long k) const {
  if (k < 0) throw std::logic_error("negative p-adic power");
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), p_.get_mpz_t(), static_cast<unsigned long>(k));
  return out;
}

PAdicValue CappedPAdicRing::from_rational(const Rational& q, long abs_prec) const {
  if (q == 0) return indistinct(abs_prec);
  const long v = valuation(q, p_);
  if (v >= abs_prec) return indistinct(abs_prec);
  Integer num = q.get_num(), den = q.get_den();
  if (v > 0) mpz_remove(num.get_mpz_t(), num.get_mpz_t(), p_.get_mpz_t());
  if (v < 0) mpz_remove(den.get_mpz_t(), den.get_mpz_t(), p_.get_mpz_t());
  const Integer mod = power(abs_prec - v);
  Integer inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
  PAdicValue out;
  out.abs = abs_prec;
  out.val = v;
  out.indistinct = false;
  out.unit = num * inv;
  mpz_mod(out.unit.get_mpz_t(), out.unit.get_mpz_t(), mod.get_mpz_t());
  return out;
}

PAdicValue CappedPAdicRing::add(const PAdicValue& a, const PAdicValue& b) const {
  const long abs = std::min(a.abs, b.abs);
  const long m = std::min(a.min_valuation(), b.min_valuation());
  if (m >= abs) return indistinct(abs);
  Integer s = 0;
  if (!a.indistinct) s += a.unit * power(a.val - m);
  if (!b.indistinct) s += b.unit * power(b.val - m);
  const Integer mod = power(abs - m);
  mpz_mod(s.get_mpz_t(), s.get_mpz_t(), mod.get_mpz_t());
  if (s == 0) return indistinct(abs);
  const long v = static_cast<long>(mpz_remove(s.get_mpz_t(), s.get_mpz_t(), p_.get_mpz_t()));
  PAdicValue out;
  out.abs = abs;
  out.val = m + v;
  out.indistinct = false;
  out.unit = s;
  return out;
}

PAdicValue CappedPAdicRing::mul(const PAdicValue& a, const PAdicValue& b) const {
  if (a.indistinct || b.indistinct) return indistinct(a.min_valuation() + b.min_valuation());
  const long rel = std::min(a.abs - a.val, b.abs - b.val);
  PAdicValue out;
  out.val = a.val + b.val;
  out.abs = out.val + rel;
  out.indistinct = false;
  out.unit = a.unit * b.unit;
  const Integer mod = power(rel);
  mpz_mod(out.unit.get_mpz_t(), out.unit.get_mpz_t(), mod.get_mpz_t());
  return out;
}

PAdicValue CappedPAdicRing::evaluate(const std::vector<PAdicValue>& coeffs, const PAdicValue& x) const {
  if (coeffs.empty()) throw std::invalid_argument("empty polynomial");
  PAdicValue acc = coeffs.back();
  for (std::size_t j = coeffs.size() - 1; j-- > 0;) acc = add(mul(acc, x), coeffs[j]);
  return acc;
}

}  // namespace arithdyn
