#include "arithdyn/polynomial.hpp"

#include <algorithm>

namespace arithdyn {

Polynomial::Polynomial(std::uint64_t conductor, std::vector<CycloNumber> coeffs)
    : conductor_(conductor), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) {
    if (c.conductor() != conductor_) throw ConductorMismatch(conductor_, c.conductor());
  }
  trim();
}

Polynomial Polynomial::from_rationals(const std::vector<Rational>& coeffs, std::uint64_t conductor) {
  std::vector<CycloNumber> cs;
  cs.reserve(coeffs.size());
  for (const auto& c : coeffs) cs.emplace_back(conductor, c);
  return Polynomial(conductor, std::move(cs));
}

Polynomial Polynomial::constant(const CycloNumber& c) { return Polynomial(c.conductor(), {c}); }

Polynomial Polynomial::monomial(const CycloNumber& c, unsigned k) {
  std::vector<CycloNumber> cs(k + 1, CycloNumber(c.conductor(), 0L));
  cs[k] = c;
  return Polynomial(c.conductor(), std::move(cs));
}

Polynomial Polynomial::identity(std::uint64_t conductor) {
  return monomial(CycloNumber(conductor, 1L), 1);
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

void Polynomial::check_same_field(const Polynomial& o) const {
  if (conductor_ != o.conductor_) throw ConductorMismatch(conductor_, o.conductor_);
}

CycloNumber Polynomial::coeff(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : CycloNumber(conductor_, 0L);
}

const CycloNumber& Polynomial::leading() const {
  if (coeffs_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

std::optional<std::vector<Rational>> Polynomial::rational_coeffs() const {
  std::vector<Rational> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) {
    auto q = c.as_rational();
    if (!q) return std::nullopt;
    out.push_back(*q);
  }
  return out;
}

bool Polynomial::is_monomial() const {
  return !coeffs_.empty() &&
         std::all_of(coeffs_.begin(), coeffs_.end() - 1, [](const CycloNumber& c) { return c.is_zero(); });
}

CycloNumber Polynomial::operator()(const CycloNumber& x) const {
  if (x.conductor() != conductor_) throw ConductorMismatch(conductor_, x.conductor());
  CycloNumber acc(conductor_, 0L);
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    acc *= x;
    acc += coeffs_[i];
  }
  return acc;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_same_field(o);
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), CycloNumber(conductor_, 0L));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  check_same_field(o);
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<CycloNumber> out(coeffs_.size() + o.coeffs_.size() - 1, CycloNumber(conductor_, 0L));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const CycloNumber& c) {
  if (c.conductor() != conductor_) throw ConductorMismatch(conductor_, c.conductor());
  for (auto& x : coeffs_) x *= c;
  trim();
  return *this;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(CycloNumber(conductor_, 1L));
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

Polynomial Polynomial::lift(std::uint64_t target) const {
  std::vector<CycloNumber> cs;
  cs.reserve(coeffs_.size());
  for (const auto& c : coeffs_) cs.push_back(c.lift(target));
  return Polynomial(target, std::move(cs));
}

Polynomial compose(const Polynomial& f, const Polynomial& g) {
  if (f.conductor() != g.conductor()) throw ConductorMismatch(f.conductor(), g.conductor());
  // Horner in the polynomial ring.
  Polynomial acc(f.conductor());
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    acc *= g;
    acc += Polynomial::constant(f.coeffs()[i]);
  }
  return acc;
}

Polynomial iterate(const Polynomial& f, unsigned n) {
  Polynomial acc = Polynomial::identity(f.conductor());
  for (unsigned i = 0; i < n; ++i) acc = compose(f, acc);
  return acc;
}

Polynomial cyclotomic_polynomial(std::uint64_t n) { return Polynomial::from_rationals(qpoly::cyclotomic(n)); }

std::string to_string(const Polynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (std::size_t k = f.coeffs().size(); k-- > 0;) {
    CycloNumber c = f.coeffs()[k];
    if (c.is_zero()) continue;
    bool negative = false;
    if (auto q = c.as_rational(); q && *q < 0) {
      negative = true;
      c = -c;
    }
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    const std::string power = k == 0 ? "" : (k == 1 ? "z" : "z^" + std::to_string(k));
    std::string coeff = to_string(c);
    if (!c.is_rational()) coeff = "(" + coeff + ")";
    if (power.empty()) {
      out += coeff;
    } else if (c.is_one()) {
      out += power;
    } else {
      out += coeff + "*" + power;
    }
  }
  return out;
}

}  // namespace arithdyn
